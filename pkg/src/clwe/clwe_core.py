"""LWE samples over the algebra, normal form, invertibility statistics, difference sets.

A sample is (a, b = a s + e) with a uniform and e Gaussian.  The normal-form
transform picks the first sample whose a is invertible as pivot (a_1, b_1) and
replaces every sample by

    a-bar_i = a_i a_1^(-1),    b-bar_i = a_i a_1^(-1) b_1 - b_i,

which satisfies b-bar_i = a-bar_i e_1 - e_i: the pivot's error becomes the new
secret and the new error is the negated old one.  The sign convention is kept
as-is; errors are symmetric so the distribution is unchanged.

The exact unit density of Lambda_q is ((q^d - 1)(q^d - q) ... (q^d - q^(d-1)) /
q^(d^2))^n, i.e. the density of GL_d(F_q) in all d x d matrices, once per
residue block; it is bounded below by (1 - 1/q)^(nd).

Difference sets: embedding the field F_(q^d) into d x d matrices over F_q by
evaluating polynomials at the companion matrix of a monic irreducible of degree
d gives q^d matrices any two of which differ by an invertible matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cyclic_algebra import AElem, CyclicAlgebra, batch_nonsingular
from .sampler import GaussianParams, sample_a, uniform_a


@dataclass(frozen=True)
class ClweSample:
    a: AElem
    b: AElem


def clwe_sample(
    algebra: CyclicAlgebra,
    secret: AElem,
    params: GaussianParams,
    rng: np.random.Generator,
    return_error: bool = False,
):
    """One sample (a, a s + e); optionally also expose e for transform replay tests."""
    a = uniform_a(algebra, rng)
    e = sample_a(algebra, params, rng)
    b = algebra.a_mul_blocks(a, secret) + e
    s = ClweSample(a, b)
    return (s, e) if return_error else s


def normal_form(algebra: CyclicAlgebra, samples: list[ClweSample]) -> tuple[list[ClweSample], int]:
    """Rewrite samples so the pivot's error acts as the secret.

    Scans for the first sample with invertible a; raises ValueError when none
    qualifies (caller controls the sample budget).  Returns the transformed
    list (pivot included; it becomes (1, 0)-shaped trivially) and the pivot
    index.
    """
    pivot = next((i for i, s in enumerate(samples) if algebra.is_invertible(s.a)), None)
    if pivot is None:
        raise ValueError("no invertible a among the provided samples")
    a1, b1 = samples[pivot].a, samples[pivot].b
    a1_inv = algebra.invert(a1)
    out = []
    for s in samples:
        abar = algebra.a_mul_blocks(s.a, a1_inv)
        bbar = algebra.a_mul_blocks(abar, b1) - s.b
        out.append(ClweSample(abar, bbar))
    return out, pivot


def invertible_fraction_exact(q: int, d: int, n: int) -> Fraction:
    """Exact unit density of Lambda_q in the completely split case."""
    numer = 1
    for i in range(d):
        numer *= q**d - q**i
    return Fraction(numer, q ** (d * d)) ** n


def invertible_lower_bound(q: int, d: int, n: int) -> Fraction:
    return Fraction(q - 1, q) ** (n * d)


def invertible_fraction_mc(
    algebra: CyclicAlgebra, draws: int, rng: np.random.Generator, chunk: int = 512
) -> float:
    """Monte Carlo unit density over uniform draws; batched across draws and blocks."""
    hits = 0
    done = 0
    while done < draws:
        take = min(chunk, draws - done)
        mats = np.concatenate(
            [algebra.regular_block_matrices(uniform_a(algebra, rng)) for _ in range(take)]
        )
        ok = batch_nonsingular(mats, algebra.q).reshape(take, algebra.n).all(axis=1)
        hits += int(ok.sum())
        done += take
    return hits / draws


# ---- difference sets ------------------------------------------------------------


def _poly_has_root(coeffs: np.ndarray, q: int) -> bool:
    xs = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + int(c)) % q
    return bool((acc == 0).any())


def _poly_mod(num: list[int], den: list[int], q: int) -> list[int]:
    """Remainder of num by monic den over F_q (coefficients ascending)."""
    num = [c % q for c in num]
    ddeg = len(den) - 1
    while len(num) - 1 >= ddeg and any(num):
        shift = len(num) - 1 - ddeg
        lead = num[-1]
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] - lead * c) % q
        while num and num[-1] == 0:
            num.pop()
    return num


def is_irreducible(coeffs: np.ndarray, q: int) -> bool:
    """Monic polynomial of degree <= 4 over F_q: no roots, and for degree 4 no
    irreducible quadratic factors (trial division)."""
    deg = len(coeffs) - 1
    if coeffs[-1] != 1:
        raise ValueError("polynomial must be monic")
    if deg <= 1:
        return deg == 1
    if _poly_has_root(coeffs, q):
        return False
    if deg <= 3:
        # a cubic or quadratic with no roots has no linear factor, hence irreducible
        return True
    if deg == 4:
        for b in range(q):
            for c in range(q):
                quad = [c, b, 1]
                if _poly_has_root(np.array(quad, dtype=np.int64), q):
                    continue
                if not _poly_mod(list(coeffs), quad, q):
                    return False
        return True
    raise ValueError("degrees above 4 are not supported")


def companion_matrix(coeffs: np.ndarray, q: int) -> np.ndarray:
    """Companion matrix of a monic polynomial, ascending coefficients."""
    d = len(coeffs) - 1
    m = np.zeros((d, d), dtype=np.int64)
    m[1:, :-1] = np.eye(d - 1, dtype=np.int64)
    m[:, -1] = (-np.asarray(coeffs[:-1], dtype=np.int64)) % q
    return m


@dataclass
class DifferenceSet:
    """q^d pairwise-difference-invertible d x d matrices over F_q."""

    q: int
    d: int
    poly: np.ndarray  # monic irreducible, ascending coefficients, length d + 1
    _powers: list[np.ndarray] = field(default_factory=list, repr=False)

    def __post_init__(self):
        c = companion_matrix(self.poly, self.q)
        p = np.eye(self.d, dtype=np.int64)
        self._powers = []
        for _ in range(self.d):
            self._powers.append(p)
            p = p @ c % self.q

    @property
    def size(self) -> int:
        return self.q**self.d

    def member(self, coords) -> np.ndarray:
        """Image of the field element sum coords[k] x^k under the embedding."""
        out = np.zeros((self.d, self.d), dtype=np.int64)
        for c, p in zip(coords, self._powers):
            out += int(c) % self.q * p
        return out % self.q

    def sample_member(self, rng: np.random.Generator) -> np.ndarray:
        return self.member(rng.integers(0, self.q, self.d))

    def all_members(self):
        coords = np.zeros(self.d, dtype=np.int64)
        for idx in range(self.size):
            v, rem = [], idx
            for _ in range(self.d):
                v.append(rem % self.q)
                rem //= self.q
            yield self.member(v)


def build_difference_set(q: int, d: int, rng: np.random.Generator, max_tries: int = 10000) -> DifferenceSet:
    """Random monic irreducible of degree d, then the companion-matrix embedding."""
    for _ in range(max_tries):
        coeffs = np.concatenate([rng.integers(0, q, d), [1]]).astype(np.int64)
        if is_irreducible(coeffs, q):
            return DifferenceSet(q, d, coeffs)
    raise RuntimeError("no irreducible polynomial found (should not happen)")


def verify_difference_set(ds: DifferenceSet, max_size: int = 10000) -> bool:
    """Exhaustive pairwise check that all differences are invertible mod q."""
    if ds.size > max_size:
        raise ValueError(f"set of size {ds.size} exceeds exhaustive verification gate {max_size}")
    members = list(ds.all_members())
    diffs = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            diffs.append((members[i] - members[j]) % ds.q)
    return bool(batch_nonsingular(np.stack(diffs), ds.q).all())
