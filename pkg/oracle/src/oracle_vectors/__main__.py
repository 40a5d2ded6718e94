"""Generate every fixture into a target directory.

Usage: python -m oracle_vectors --out ../fixtures
"""

import argparse

from . import (
    gen_eval_tables,
    gen_gaussian_moments,
    gen_gl_counts,
    gen_qr_table,
    gen_quaternion_example,
    gen_skew_mult_vectors,
    write_fixture,
)

MANIFEST = (
    ("skew_mult_toy_q2.json", lambda: gen_skew_mult_vectors(2, 2, -1)),
    ("skew_mult_toy_q3.json", lambda: gen_skew_mult_vectors(3, 2, -1)),
    ("gaussian_integers_mod5.json", gen_quaternion_example),
    ("gl_counts.json", gen_gl_counts),
    ("qr_table_12289.json", lambda: gen_qr_table(12289)),
    ("eval_tables.json", gen_eval_tables),
    ("gaussian_moments.json", gen_gaussian_moments),
)


def generate_all(out_dir):
    paths = []
    for name, gen in MANIFEST:
        paths.append(write_fixture(out_dir, name, gen()))
    return paths


def main(argv=None):
    parser = argparse.ArgumentParser(description="Write all golden fixtures.")
    parser.add_argument("--out", required=True, help="target directory for the JSON files")
    args = parser.parse_args(argv)
    for path in generate_all(args.out):
        print(f"{path}  {path.stat().st_size} bytes")


if __name__ == "__main__":
    main()
