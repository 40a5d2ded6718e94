"""The natural order Lambda_q = O_L + u O_L + ... + u^(d-1) O_L mod q.

Defining relations: x u = u theta(x) for x in L, and u^d = gamma with gamma a
root of unity in O_K.  Elements are stored by their d u-coordinates, each an
L element, i.e. a (d, d, n) tensor indexed (u-power, ell-coordinate, base slot
or coefficient).

gamma is described by an exponent t: gamma = zeta_m^t for m > 1, and
gamma = (-1)^t for m = 1 (the only roots of unity of Q), which hosts the
rational quaternion toys.

Two multiplication routes are provided and must agree exactly:

  * a_mul_naive: the left-regular matrix-vector product phi(x) Vec(y), built
    from l_mul and theta; costs d^2 L-multiplications = d^3 base-ring
    multiplications per product.
  * a_mul_blocks: the residue-factor route.  In slot form the algebra splits
    into n blocks of shape (d, d) over F_q with blockwise law
    (u^j v)(u^k w) = u^((j+k) mod d) * gamma_i^[j+k >= d] * theta^k(v) . w,
    where theta^k shifts the ell-axis and . is the pointwise product; all n
    blocks are processed simultaneously on the slot tensor.

Inversion solves, per block, the d^2 x d^2 left-regular linear system
M vec(z) = vec(1) over F_q; an element is a unit exactly when every block
matrix is nonsingular.
"""

from __future__ import annotations

import numpy as np

from .base_ring import K_MUL_COUNTER, KElem, modinv
from .field_tower import FieldTower, LElem, l_mul, theta


def _gamma_slots(tower: FieldTower, exponent: int) -> np.ndarray:
    ring = tower.ring
    if ring.m == 1:
        val = 1 if exponent % 2 == 0 else ring.q - 1
        return np.full(ring.n, val, dtype=np.int64)
    t = exponent % ring.m
    return np.array([pow(ring.zeta, j * t % ring.m, ring.q) for j in ring.exponents], dtype=np.int64)


class CyclicAlgebra:
    """Context for Lambda_q over a tower, with gamma fixed by its exponent."""

    def __init__(self, tower: FieldTower, gamma_exponent: int):
        self.tower = tower
        self.gamma_exponent = gamma_exponent % (2 if tower.ring.m == 1 else tower.ring.m)
        self.gamma_slots = _gamma_slots(tower, gamma_exponent)
        self.gamma_inv_slots = np.array(
            [modinv(int(g), tower.q) for g in self.gamma_slots], dtype=np.int64
        )
        d = tower.d
        self._ell_twist = [(np.arange(d) - k) % d for k in range(d)]
        self._u_rotate = [(np.arange(d) + k) % d for k in range(d)]
        self._dual: "CyclicAlgebra | None" = None

    def __repr__(self) -> str:
        return f"CyclicAlgebra({self.tower}, gamma_exponent={self.gamma_exponent})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicAlgebra) and (
            (self.tower, self.gamma_exponent) == (other.tower, other.gamma_exponent)
        )

    def __hash__(self) -> int:
        return hash((self.tower, self.gamma_exponent))

    @property
    def ring(self):
        return self.tower.ring

    @property
    def d(self) -> int:
        return self.tower.d

    @property
    def n(self) -> int:
        return self.tower.n

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def total_dimension(self) -> int:
        return self.n * self.d * self.d

    @property
    def dual(self) -> "CyclicAlgebra":
        """The companion algebra with gamma replaced by gamma^(-1)."""
        if self._dual is None:
            m = self.ring.m
            inv_exp = self.gamma_exponent if m == 1 else (-self.gamma_exponent) % m
            self._dual = CyclicAlgebra(self.tower, inv_exp)
            self._dual._dual = self
        return self._dual

    # ---- element constructors -------------------------------------------------

    def zero(self) -> "AElem":
        d, n = self.d, self.n
        return AElem(self, coeffs=np.zeros((d, d, n), dtype=np.int64))

    def one(self) -> "AElem":
        d, n = self.d, self.n
        c = np.zeros((d, d, n), dtype=np.int64)
        c[0, :, 0] = 1
        s = np.zeros((d, d, n), dtype=np.int64)
        s[0] = 1
        return AElem(self, coeffs=c, slots=s)

    def from_coeffs(self, coeffs) -> "AElem":
        return AElem(self, coeffs=coeffs)

    def from_slots(self, slots) -> "AElem":
        return AElem(self, slots=slots)

    def from_u_coords(self, xs: list[LElem]) -> "AElem":
        if len(xs) != self.d:
            raise ValueError(f"need {self.d} u-coordinates")
        return AElem(self, coeffs=np.stack([x.coeffs for x in xs]))

    def embed_l(self, x: LElem) -> "AElem":
        coords = [x] + [self.tower.zero()] * (self.d - 1)
        return self.from_u_coords(coords)

    def transplant(self, x: "AElem") -> "AElem":
        """The same coordinate tensor viewed in this algebra (same tower required)."""
        if x.algebra.tower != self.tower:
            raise ValueError("transplant requires the same tower")
        if x._slots is not None:
            return AElem(self, coeffs=x._coeffs, slots=x._slots)
        return AElem(self, coeffs=x._coeffs)

    # ---- gamma scaling ----------------------------------------------------------

    def _scale_gamma(self, x: LElem) -> LElem:
        # constant scaling, not counted as a base-ring multiplication
        return LElem(self.tower, slots=x.slots * self.gamma_slots % self.q)

    # ---- left-regular representation ---------------------------------------------

    def phi(self, x: "AElem") -> list[list[LElem]]:
        """The d x d matrix over L with phi(x) Vec(y) = Vec(x y).

        Column c applies theta^c to the u-coordinates, rotated down by c rows;
        entries above the diagonal pick up one factor of gamma.
        """
        x._check_algebra(self)
        coords = x.u_coords()
        mat: list[list[LElem]] = []
        for r in range(self.d):
            row = []
            for c in range(self.d):
                entry = theta(coords[(r - c) % self.d], c)
                if r < c:
                    entry = self._scale_gamma(entry)
                row.append(entry)
            mat.append(row)
        return mat

    def phi_apply(self, mat: list[list[LElem]], y: "AElem") -> "AElem":
        """Matrix-vector product over L against the u-coordinates of y."""
        ycoords = y.u_coords()
        out = []
        for r in range(self.d):
            acc = l_mul(mat[r][0], ycoords[0])
            for c in range(1, self.d):
                acc = acc + l_mul(mat[r][c], ycoords[c])
            out.append(acc)
        return self.from_u_coords_slots(out)

    def from_u_coords_slots(self, xs: list[LElem]) -> "AElem":
        return AElem(self, slots=np.stack([x.slots for x in xs]))

    def phi_matmul(self, a: list[list[LElem]], b: list[list[LElem]]) -> list[list[LElem]]:
        d = self.d
        out = []
        for r in range(d):
            row = []
            for c in range(d):
                acc = l_mul(a[r][0], b[0][c])
                for k in range(1, d):
                    acc = acc + l_mul(a[r][k], b[k][c])
                row.append(acc)
            out.append(row)
        return out

    @staticmethod
    def phi_transpose(mat: list[list[LElem]]) -> list[list[LElem]]:
        d = len(mat)
        return [[mat[c][r] for c in range(d)] for r in range(d)]

    def phi_eq(self, a: list[list[LElem]], b: list[list[LElem]]) -> bool:
        return all(a[r][c] == b[r][c] for r in range(self.d) for c in range(self.d))

    # ---- multiplication ----------------------------------------------------------

    def a_mul_naive(self, x: "AElem", y: "AElem") -> "AElem":
        """phi(x) Vec(y): d^2 L-multiplications, d^3 base-ring multiplications."""
        x._check_algebra(self)
        y._check_algebra(self)
        return self.phi_apply(self.phi(x), y)

    def a_mul_blocks(self, x: "AElem", y: "AElem") -> "AElem":
        """Blockwise skew product on the slot tensors, all n residue blocks at once.

        Grouped by the u-power k of the right factor: theta^k twists every
        u-coordinate of x in one roll of the ell axis, the u-powers add mod d,
        and the wrapped rows (j + k >= d) pick up gamma.  d^2 pointwise
        K-products total.
        """
        x._check_algebra(self)
        y._check_algebra(self)
        d, q = self.d, self.q
        K_MUL_COUNTER.k_mul += d * d
        xs, ys = x.slots, y.slots
        # products stay below q^2 and at most d of them accumulate per entry,
        # so with q < 2^26 a single final reduction is exact in int64
        out = xs * ys[0]
        for k in range(1, d):
            term = xs[:, self._ell_twist[k], :] * ys[k]
            term[d - k :] = term[d - k :] % q * self.gamma_slots
            out[self._u_rotate[k]] += term
        return AElem(self, slots=out % q)

    def a_mul(self, x: "AElem", y: "AElem") -> "AElem":
        return self.a_mul_blocks(x, y)

    # ---- transpose dual ------------------------------------------------------------

    def transpose_dual(self, x: "AElem") -> "AElem":
        """The element x' of the gamma^(-1) algebra with phi(x)^T = phi'(x').

        u-coordinates: x'_0 = x_0 and x'_i = gamma theta^i(x_{d-i}) for i >= 1.
        """
        x._check_algebra(self)
        coords = x.u_coords()
        out = [coords[0]]
        for i in range(1, self.d):
            out.append(self._scale_gamma(theta(coords[self.d - i], i)))
        return self.dual.from_u_coords_slots(out)

    # ---- inversion -------------------------------------------------------------------

    def regular_block_matrices(self, x: "AElem") -> np.ndarray:
        """Per-block left-multiplication matrices, shape (n, d^2, d^2).

        Basis of each block: u^k e_w, flattened index k*d + w.  Left
        multiplication by the block of x sends u^k e_w to
        sum_j u^((j+k) mod d) gamma_i^[j+k >= d] B[j, (w-k) mod d] e_w.
        """
        d, n, q = self.d, self.n, self.q
        b = np.transpose(x.slots, (2, 0, 1))  # (n, u-power, ell)
        mats = np.zeros((n, d * d, d * d), dtype=np.int64)
        for k in range(d):
            for z in range(d):
                j = (z - k) % d
                wrap = j + k >= d
                for w in range(d):
                    col = b[:, j, (w - k) % d]
                    if wrap:
                        col = col * self.gamma_slots % q
                    mats[:, z * d + w, k * d + w] = col
        return mats

    def is_invertible(self, x: "AElem") -> bool:
        mats = self.regular_block_matrices(x)
        return bool(batch_nonsingular(mats, self.q).all())

    def invert(self, x: "AElem") -> "AElem":
        """Two-sided inverse, or ValueError if some block is singular."""
        d, n, q = self.d, self.n, self.q
        mats = self.regular_block_matrices(x)
        rhs = np.zeros(d * d, dtype=np.int64)
        rhs[:d] = 1  # vec of the identity u^0 (1, ..., 1)
        out = np.empty((d, d, n), dtype=np.int64)
        for i in range(n):
            sol = _solve_mod(mats[i], rhs, q)
            if sol is None:
                raise ValueError("element is not invertible (singular block)")
            out[:, :, i] = sol.reshape(d, d)
        return AElem(self, slots=out)

    # ---- elementwise ----------------------------------------------------------------

    def a_add(self, x: "AElem", y: "AElem") -> "AElem":
        return x + y

    def a_sub(self, x: "AElem", y: "AElem") -> "AElem":
        return x - y

    def a_neg(self, x: "AElem") -> "AElem":
        return -x

    def scale_message(self, x: "AElem", factor: int) -> "AElem":
        """Multiply every coefficient by a fixed integer (used for message scaling)."""
        return AElem(self, coeffs=x.coeffs * (factor % self.q) % self.q)


def _solve_mod(mat: np.ndarray, rhs: np.ndarray, q: int) -> np.ndarray | None:
    """Solve mat x = rhs over F_q by Gauss-Jordan; None if singular."""
    k = mat.shape[0]
    a = np.concatenate([mat % q, rhs[:, None] % q], axis=1)
    for col in range(k):
        piv = col + int(np.argmax(a[col:, col] != 0))
        if a[piv, col] == 0:
            return None
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
        a[col] = a[col] * modinv(int(a[col, col]), q) % q
        f = a[:, col].copy()
        f[col] = 0
        a = (a - np.outer(f, a[col])) % q
    return a[:, -1]


def _pow_mod_vec(base: np.ndarray, exp: int, q: int) -> np.ndarray:
    out = np.ones_like(base)
    b = base % q
    e = exp
    while e:
        if e & 1:
            out = out * b % q
        b = b * b % q
        e >>= 1
    return out


def batch_nonsingular(mats: np.ndarray, q: int) -> np.ndarray:
    """Boolean array: which of the stacked square matrices are invertible mod q.

    Forward elimination with per-matrix pivot selection; exact arithmetic.
    """
    a = np.asarray(mats, dtype=np.int64) % q
    batch, k, _ = a.shape
    ok = np.ones(batch, dtype=bool)
    bidx = np.arange(batch)
    for col in range(k):
        sub = a[:, col:, col]
        nz = sub != 0
        has = nz.any(axis=1)
        ok &= has
        piv = col + nz.argmax(axis=1)  # first nonzero row; garbage where ~ok, masked later
        tmp = a[bidx, piv].copy()
        a[bidx, piv] = a[:, col]
        a[:, col] = tmp
        pivval = a[:, col, col].copy()
        pivval[~ok] = 1
        inv = _pow_mod_vec(pivval, q - 2, q)
        a[:, col, :] = a[:, col, :] * inv[:, None] % q
        if col + 1 < k:
            f = a[:, col + 1 :, col].copy()
            a[:, col + 1 :, :] = (a[:, col + 1 :, :] - f[:, :, None] * a[:, col : col + 1, :]) % q
    return ok


class AElem:
    """One element of Lambda_q as a (d, d, n) tensor (u-power, ell-coordinate, base index)."""

    __slots__ = ("algebra", "_coeffs", "_slots")

    def __init__(self, algebra: CyclicAlgebra, coeffs: np.ndarray | None = None, slots: np.ndarray | None = None):
        if coeffs is None and slots is None:
            raise ValueError("need at least one representation")
        self.algebra = algebra
        self._coeffs = self._clean(coeffs)
        self._slots = self._clean(slots)

    def _clean(self, arr):
        if arr is None:
            return None
        alg = self.algebra
        a = np.asarray(arr, dtype=np.int64) % alg.q
        if a.shape != (alg.d, alg.d, alg.n):
            raise ValueError(f"expected shape ({alg.d}, {alg.d}, {alg.n}), got {a.shape}")
        return a

    def _check_algebra(self, algebra: CyclicAlgebra) -> None:
        if self.algebra is not algebra and self.algebra != algebra:
            raise ValueError("element belongs to a different algebra")

    @property
    def coeffs(self) -> np.ndarray:
        if self._coeffs is None:
            self._coeffs = self.algebra.ring.to_coeffs(self._slots)
        return self._coeffs

    @property
    def slots(self) -> np.ndarray:
        if self._slots is None:
            self._slots = self.algebra.ring.to_slots(self._coeffs)
        return self._slots

    def u_coord(self, j: int) -> LElem:
        if self._slots is not None:
            return LElem.from_slots(self.algebra.tower, self._slots[j])
        return LElem.from_coeffs(self.algebra.tower, self._coeffs[j])

    def u_coords(self) -> list[LElem]:
        return [self.u_coord(j) for j in range(self.algebra.d)]

    def _check(self, other: "AElem") -> None:
        if self.algebra != other.algebra:
            raise ValueError("elements from different algebras")

    def __add__(self, other: "AElem") -> "AElem":
        self._check(other)
        if self._slots is not None and other._slots is not None:
            return AElem(self.algebra, slots=(self._slots + other._slots) % self.algebra.q)
        return AElem(self.algebra, coeffs=(self.coeffs + other.coeffs) % self.algebra.q)

    def __sub__(self, other: "AElem") -> "AElem":
        self._check(other)
        if self._slots is not None and other._slots is not None:
            return AElem(self.algebra, slots=(self._slots - other._slots) % self.algebra.q)
        return AElem(self.algebra, coeffs=(self.coeffs - other.coeffs) % self.algebra.q)

    def __neg__(self) -> "AElem":
        if self._slots is not None:
            return AElem(self.algebra, slots=(-self._slots) % self.algebra.q)
        return AElem(self.algebra, coeffs=(-self._coeffs) % self.algebra.q)

    def __mul__(self, other: "AElem") -> "AElem":
        return self.algebra.a_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AElem):
            return NotImplemented
        self._check(other)
        if self._slots is not None and other._slots is not None:
            return bool(np.array_equal(self._slots, other._slots))
        return bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.algebra, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"AElem({self.algebra}, coeffs={self.coeffs.tolist()})"
