"""Gaussian integers mod 5 from first principles.

Z[i]/<5> splits under the two degree-one primes <2+i> and <2-i>.  Residues
are found by trying every candidate and checking ideal membership by exact
division, not by any precomputed evaluation map.  The multiplication table
covers all 25 x 25 pairs.

Element encoding: a + b*i has index a + 5*b with a, b in [0, 5).
"""

Q = 5


def _mul(x, y):
    """(a+bi)(c+di) with coefficients reduced mod 5."""
    a, b = x
    c, d = y
    return ((a * c - b * d) % Q, (a * d + b * c) % Q)


def _in_ideal(z, gen):
    """Is z in the ideal of Z[i] generated by gen?  gen has norm 5, so
    membership means z * conj(gen) is divisible by 5 in both components."""
    a, b = z
    g, h = gen
    real = a * g + b * h
    imag = b * g - a * h
    return real % Q == 0 and imag % Q == 0


def _residue(z, gen):
    a, b = z
    hits = [r for r in range(Q) if _in_ideal((a - r, b), gen)]
    if len(hits) != 1:
        raise ArithmeticError(f"element {z} has {len(hits)} residues mod {gen}")
    return hits[0]


def _index(z):
    return z[0] + Q * z[1]


def gen_quaternion_example() -> dict:
    elements = [(a, b) for b in range(Q) for a in range(Q)]  # index order
    p1, p2 = (2, 1), (2, -1)  # generators 2+i and 2-i

    residues = [[_residue(z, p1), _residue(z, p2)] for z in elements]
    products = [
        _index(_mul(x, y)) for x in elements for y in elements
    ]  # row-major: products[ix*25 + iy]

    l1 = (-2 % Q, -1 % Q)  # -2 - i
    l2 = (-2 % Q, 1)  # -2 + i
    i1, i2 = _index(l1), _index(l2)
    if residues[i1] != [0, 1] or residues[i2] != [1, 0]:
        raise ArithmeticError("idempotent residues disagree with direct division")
    # orthogonal idempotents summing to 1: the three identities below pin them
    if _mul(l1, l2) != (0, 0):
        raise ArithmeticError("l1 * l2 is not 0 mod 5")
    if ((l1[0] + l2[0]) % Q, (l1[1] + l2[1]) % Q) != (1, 0):
        raise ArithmeticError("l1 + l2 is not 1 mod 5")
    if _mul(l1, l1) != l1 or _mul(l2, l2) != l2:
        raise ArithmeticError("l1, l2 are not idempotent")

    return {
        "kind": "gaussian_integer_crt",
        "q": Q,
        "modulus_poly": [1, 0, 1],
        "element_encoding": "index = a + 5*b for the class of a + b*i",
        "prime_generators": [[2, 1], [2, -1]],
        "residues": residues,
        "products": products,
        "idempotent_indexes": [i1, i2],
    }
