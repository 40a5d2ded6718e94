"""Exhaustive skew multiplication tables by literal relation chasing.

Scope is the completely split case with a one-dimensional base (n = 1):
an element is an integer combination of the d*d symbols u^j l_a, where the
l_a are the orthogonal idempotents.  The defining relations are

    l_a * l_b = (a == b) * l_a
    l_a * u   = u * l_(a+1 mod d)        (moving l past u applies the shift)
    u^d       = gamma

so a basis product collapses to at most one symbol:

    (u^j l_a)(u^k l_b) = (a + k == b mod d) * gamma^[j+k >= d] * u^(j+k mod d) l_b

A full product expands the double sum over basis symbols and accumulates
coefficients mod q.  Nothing here knows about evaluation maps, matrices or
transforms.

Element encoding: coefficient of u^j l_a sits at position j*d + a, and the
element index is sum(coeff[pos] * q**pos), so index 0 is zero and the
table is products[ix * q**(d*d) + iy] = index of x*y.
"""

TABLE_GATE = 100_000  # refuse tables bigger than this many element pairs


def _basis_product(j, a, k, b, d, gamma, q):
    """Coefficient and position of (u^j l_a)(u^k l_b), or None when it dies."""
    if (a + k) % d != b:
        return None
    power = j + k
    coeff = gamma if power >= d else 1
    return coeff % q, (power % d) * d + b


def _mul(x, y, d, gamma, q):
    out = [0] * (d * d)
    for jx, cx in enumerate(x):
        if cx == 0:
            continue
        j, a = divmod(jx, d)
        for ky, cy in enumerate(y):
            if cy == 0:
                continue
            k, b = divmod(ky, d)
            hit = _basis_product(j, a, k, b, d, gamma, q)
            if hit is None:
                continue
            coeff, pos = hit
            out[pos] = (out[pos] + cx * cy * coeff) % q
    return out


def _index(coeffs, q):
    idx = 0
    for pos, c in enumerate(coeffs):
        idx += c * q**pos
    return idx


def _coeffs(idx, size, q):
    out = []
    for _ in range(size):
        idx, c = divmod(idx, q)
        out.append(c)
    return out


def gen_skew_mult_vectors(q: int, d: int, gamma: int) -> dict:
    """Every product in the q^(d*d)-element algebra, by symbol pushing."""
    gamma %= q
    if gamma == 0:
        raise ValueError("gamma must be a unit")
    size = d * d
    count = q**size
    if count * count > TABLE_GATE * 10:
        raise ValueError(f"table of {count}^2 products is past the exhaustive gate")

    all_coeffs = [_coeffs(i, size, q) for i in range(count)]
    products = [
        _index(_mul(x, y, d, gamma, q), q) for x in all_coeffs for y in all_coeffs
    ]

    one = _index([1 if pos < d else 0 for pos in range(size)], q)  # sum of l_a
    u = _index([1 if d <= pos < 2 * d else 0 for pos in range(size)], q)
    gamma_elem = _index([gamma if pos < d else 0 for pos in range(size)], q)
    for x in range(count):
        if products[one * count + x] != x or products[x * count + one] != x:
            raise ArithmeticError("identity row is wrong")
    u_power = u
    for _ in range(d - 1):
        u_power = products[u_power * count + u]
    if u_power != gamma_elem:
        raise ArithmeticError("u^d is not gamma")

    return {
        "kind": "skew_mult_table",
        "q": q,
        "d": d,
        "n": 1,
        "gamma": gamma,
        "element_encoding": "index = sum coeff[j*d+a] * q**(j*d+a) for u^j l_a",
        "identity_index": one,
        "u_index": u,
        "products": products,
    }
