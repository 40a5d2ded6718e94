"""Small exhaustive tables: invertible-matrix counts, quadratic residues,
evaluation matrices for power-of-two conductors, discrete Gaussian moments.
"""

import itertools
import math

ENUM_GATE = 100_000


def _det(rows, d):
    if d == 1:
        return rows[0][0]
    if d == 2:
        (a, b), (c, e) = rows
        return a * e - b * c
    if d == 3:
        (a, b, c), (e, f, g), (h, i, j) = rows
        return a * (f * j - g * i) - b * (e * j - g * h) + c * (e * i - f * h)
    raise ValueError("determinant by expansion only up to 3x3")


def gen_gl_counts(pairs=((2, 2), (3, 2), (5, 2), (7, 2), (2, 3), (3, 3))) -> dict:
    """Count invertible d x d matrices over F_q by enumerating all of them."""
    entries = []
    for q, d in pairs:
        total = q ** (d * d)
        if total > ENUM_GATE:
            raise ValueError(f"{total} matrices is past the enumeration gate")
        invertible = 0
        for flat in itertools.product(range(q), repeat=d * d):
            rows = [flat[r * d : (r + 1) * d] for r in range(d)]
            if _det(rows, d) % q != 0:
                invertible += 1
        entries.append({"q": q, "d": d, "matrices": total, "invertible": invertible})
    return {"kind": "gl_counts", "entries": entries}


def gen_qr_table(q: int) -> dict:
    """Nonzero squares mod q with least witnesses, by squaring everything."""
    witnesses = {}
    for x in range(1, q // 2 + 1):  # x and q-x square to the same thing
        sq = x * x % q
        if sq not in witnesses:
            witnesses[sq] = x
    squares = sorted(witnesses)
    return {
        "kind": "qr_table",
        "q": q,
        "squares": squares,
        "witnesses": {str(sq): witnesses[sq] for sq in squares},
    }


def _phi(m):
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def gen_eval_tables(pairs=((4, 5), (16, 97))) -> dict:
    """Root and evaluation tables for x^(m/2) + 1 over F_q, m a power of two.

    Roots come from scanning every residue; the evaluation matrix row i is
    the geometric progression of root i, so slots = matrix . coeffs.
    """
    entries = []
    for m, q in pairs:
        if m < 2 or m & (m - 1):
            raise ValueError(f"conductor {m} is not a power of two")
        n = _phi(m)
        roots = [r for r in range(q) if pow(r, m // 2, q) == (q - 1) % q]
        if len(roots) != n:
            raise ArithmeticError(f"found {len(roots)} roots of x^{m//2}+1 mod {q}")
        matrix = [[pow(r, j, q) for j in range(n)] for r in roots]
        entries.append({"m": m, "q": q, "n": n, "roots": roots, "eval_matrix": matrix})
    return {"kind": "eval_tables", "entries": entries}


def gen_gaussian_moments(sigmas=(0.75, 2.0, 3.0, 10.5), tailcut=12.0) -> dict:
    """Exact moments of the truncated discrete Gaussian by direct summation.

    Weight of x is exp(-pi x^2 / sigma^2) on |x| <= ceil(tailcut * sigma).
    Symmetric terms are paired so the mean comes out exactly zero.
    """
    entries = []
    for sigma in sigmas:
        bound = math.ceil(tailcut * sigma)
        normalizer = 1.0  # the x = 0 term
        second = 0.0
        for x in range(1, bound + 1):
            w = math.exp(-math.pi * x * x / (sigma * sigma))
            normalizer += 2.0 * w
            second += 2.0 * w * x * x
        entries.append(
            {
                "sigma": sigma,
                "tailcut": tailcut,
                "support_bound": bound,
                "normalizer": normalizer,
                "mean": 0.0,
                "variance": second / normalizer,
            }
        )
    return {"kind": "gaussian_moments", "entries": entries}
