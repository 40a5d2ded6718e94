"""Golden-fixture generators for cyclic-algebra arithmetic.

Every generator works by exhaustive enumeration or literal symbol pushing,
never by the algorithms under test, so fixture agreement is independent
evidence of correctness.  All output is deterministic: fixed iteration
order, no randomness, canonical JSON encoding.
"""

from .emit import canonical_json, write_fixture
from .gaussian_integers import gen_quaternion_example
from .skew_symbols import gen_skew_mult_vectors
from .small_tables import (
    gen_eval_tables,
    gen_gaussian_moments,
    gen_gl_counts,
    gen_qr_table,
)

__all__ = [
    "canonical_json",
    "write_fixture",
    "gen_quaternion_example",
    "gen_skew_mult_vectors",
    "gen_gl_counts",
    "gen_qr_table",
    "gen_eval_tables",
    "gen_gaussian_moments",
]
