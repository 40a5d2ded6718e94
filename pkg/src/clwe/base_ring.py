"""Arithmetic in the base coefficient ring O_K/qO_K, K = Q(zeta_m), q prime, q = 1 mod m.

Elements are length-n integer vectors mod q (n = phi(m)) in one of two
representations:

  coefficient: (a_0, ..., a_{n-1}) encoding the polynomial sum a_k zeta_m^k
  slot:        evaluations at zeta^j, j running over (Z/mZ)^* in ascending order,
               where zeta is the canonical primitive m-th root of unity mod q

Because q = 1 mod m, x^m - 1 splits completely mod q, evaluation at the n
primitive m-th roots is a linear bijection, and ring multiplication becomes the
slotwise product.  Both directions are available as an O(n^2) direct matrix
product for any m, and as an O(n log n) negacyclic transform when m is a power
of two; the two paths return bit-identical arrays.

m = 1 (K = Q, n = 1) is supported; the single slot equals the single
coefficient.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
import sympy

# The O(n^2) transform accumulates n products of residues in int64:
# we need n * (q-1)^2 < 2^63, which holds comfortably for q < 2^26, n <= 512.
MAX_Q = 1 << 26


class OpCounter:
    """Running counts of base-ring operations.

    k_mul: full K x K products (a slotwise length-n multiply counts as one).
    Scalings by fixed constants and additions are not counted.
    fwd_transforms / inv_transforms: coefficient-to-slot and slot-to-coefficient
    applications, one unit per length-n row converted.
    """

    __slots__ = ("k_mul", "fwd_transforms", "inv_transforms")

    def __init__(self) -> None:
        self.reset()

    def reset(self) -> None:
        self.k_mul = 0
        self.fwd_transforms = 0
        self.inv_transforms = 0

    def snapshot(self) -> tuple[int, int, int]:
        return (self.k_mul, self.fwd_transforms, self.inv_transforms)


K_MUL_COUNTER = OpCounter()


def units_mod(m: int) -> list[int]:
    """Representatives of (Z/mZ)^* in ascending order; [0] when m = 1."""
    if m == 1:
        return [0]
    return [j for j in range(m) if math.gcd(j, m) == 1]


def euler_phi(m: int) -> int:
    return len(units_mod(m))


def smallest_generator(q: int) -> int:
    """Smallest generator of the multiplicative group F_q^*."""
    if q == 2:
        return 1
    prime_factors = list(sympy.factorint(q - 1))
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in prime_factors):
            return g
    raise ValueError(f"no generator mod {q}; is q prime?")


def primitive_root_of_unity(q: int, m: int) -> int:
    """Canonical primitive m-th root of unity mod q: g^((q-1)/m), g the smallest generator."""
    if m == 1:
        return 1
    if (q - 1) % m:
        raise ValueError(f"F_{q} has no primitive {m}-th roots of unity")
    return pow(smallest_generator(q), (q - 1) // m, q)


def is_quadratic_residue(a: int, q: int) -> bool:
    """Euler criterion. 0 does not count as a residue."""
    a %= q
    return a != 0 and pow(a, (q - 1) // 2, q) == 1


def modinv(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ZeroDivisionError("0 is not invertible")
    return pow(a, q - 2, q)


def mod_matrix_inverse(mat: np.ndarray, q: int) -> np.ndarray:
    """Inverse of a square matrix over F_q via Gauss-Jordan elimination."""
    k = mat.shape[0]
    a = np.concatenate([np.asarray(mat, dtype=np.int64) % q, np.eye(k, dtype=np.int64)], axis=1)
    for col in range(k):
        piv = col + int(np.argmax(a[col:, col] != 0))
        if a[piv, col] == 0:
            raise ValueError("matrix is singular mod q")
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
        a[col] = a[col] * modinv(int(a[col, col]), q) % q
        f = a[:, col].copy()
        f[col] = 0
        a = (a - np.outer(f, a[col])) % q
    return a[:, k:]


def _bitrev_indices(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


def _pow_table(base: int, n: int, q: int) -> np.ndarray:
    out = np.empty(n, dtype=np.int64)
    acc = 1
    for i in range(n):
        out[i] = acc
        acc = acc * base % q
    return out


class KRing:
    """Transform tables and arithmetic context for one (m, q) pair.

    All array methods accept stacks shaped (..., n) and broadcast over the
    leading axes.
    """

    def __init__(self, m: int, q: int):
        if m < 1:
            raise ValueError("m must be >= 1")
        if q >= MAX_Q:
            raise ValueError(f"q = {q} too large for int64 transform accumulation")
        if not sympy.isprime(q):
            raise ValueError(f"q = {q} is not prime")
        if m > 1 and (q - 1) % m:
            raise ValueError(f"q = {q} is not 1 mod m = {m}")
        self.m = m
        self.q = q
        self.exponents = units_mod(m)
        self.n = len(self.exponents)
        self.zeta = primitive_root_of_unity(q, m)
        self.slot_points = np.array([pow(self.zeta, j, q) for j in self.exponents], dtype=np.int64)
        self.has_fast_transform = m > 1 and (m & (m - 1)) == 0
        self._vand: np.ndarray | None = None
        self._vand_inv: np.ndarray | None = None
        if self.has_fast_transform:
            n, psi = self.n, self.zeta
            omega = pow(psi, 2, q)
            self._psi_pow = _pow_table(psi, n, q)
            self._psi_inv_pow = _pow_table(modinv(psi, q), n, q)
            self._omega_pow = _pow_table(omega, n, q)
            self._omega_inv_pow = _pow_table(modinv(omega, q), n, q)
            self._n_inv = modinv(n, q)
            self._rev = _bitrev_indices(n)

    def __repr__(self) -> str:
        return f"KRing(m={self.m}, q={self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, KRing) and (self.m, self.q) == (other.m, other.q)

    def __hash__(self) -> int:
        return hash((self.m, self.q))

    # ---- representation maps -------------------------------------------------

    def _vandermonde(self) -> np.ndarray:
        if self._vand is None:
            # rows indexed by slot, columns by power: V[t, k] = point_t^k
            v = np.empty((self.n, self.n), dtype=np.int64)
            for t, p in enumerate(self.slot_points):
                v[t] = _pow_table(int(p), self.n, self.q)
            self._vand = v
        return self._vand

    def to_slots_direct(self, coeffs: np.ndarray) -> np.ndarray:
        """Evaluate at every slot point: O(n^2) matrix product."""
        c = np.asarray(coeffs, dtype=np.int64) % self.q
        return c @ self._vandermonde().T % self.q

    def to_coeffs_direct(self, slots: np.ndarray) -> np.ndarray:
        if self._vand_inv is None:
            self._vand_inv = mod_matrix_inverse(self._vandermonde(), self.q)
        s = np.asarray(slots, dtype=np.int64) % self.q
        return s @ self._vand_inv.T % self.q

    def _ntt(self, vec: np.ndarray, pow_table: np.ndarray) -> np.ndarray:
        """Size-n transform X_t = sum_k x_k w^(tk), natural order in and out."""
        q, n = self.q, self.n
        x = vec[..., self._rev].copy()
        half = 1
        while half < n:
            step = half * 2
            tw = pow_table[(n // step) * np.arange(half)]
            shaped = x.reshape(x.shape[:-1] + (n // step, step))
            lo = shaped[..., :half]
            hi = shaped[..., half:] * tw % q
            shaped[..., half:] = (lo - hi) % q
            shaped[..., :half] = (lo + hi) % q
            half = step
        return x

    def to_slots_fast(self, coeffs: np.ndarray) -> np.ndarray:
        """Negacyclic evaluation for power-of-two m: twist by psi^k, then size-n transform.

        f(zeta^(2t+1)) = sum_k (a_k psi^k) omega^(tk), so the natural-order output
        lands exactly on the ascending odd exponents.
        """
        if not self.has_fast_transform:
            raise ValueError("fast transform requires power-of-two m >= 2")
        c = np.asarray(coeffs, dtype=np.int64) % self.q
        return self._ntt(c * self._psi_pow % self.q, self._omega_pow)

    def to_coeffs_fast(self, slots: np.ndarray) -> np.ndarray:
        if not self.has_fast_transform:
            raise ValueError("fast transform requires power-of-two m >= 2")
        s = np.asarray(slots, dtype=np.int64) % self.q
        c = self._ntt(s, self._omega_inv_pow) * self._n_inv % self.q
        return c * self._psi_inv_pow % self.q

    def to_slots(self, coeffs: np.ndarray) -> np.ndarray:
        coeffs = np.asarray(coeffs)
        K_MUL_COUNTER.fwd_transforms += coeffs.size // self.n
        if self.m == 1:
            return np.asarray(coeffs, dtype=np.int64) % self.q
        if self.has_fast_transform:
            return self.to_slots_fast(coeffs)
        return self.to_slots_direct(coeffs)

    def to_coeffs(self, slots: np.ndarray) -> np.ndarray:
        slots = np.asarray(slots)
        K_MUL_COUNTER.inv_transforms += slots.size // self.n
        if self.m == 1:
            return np.asarray(slots, dtype=np.int64) % self.q
        if self.has_fast_transform:
            return self.to_coeffs_fast(slots)
        return self.to_coeffs_direct(slots)


@lru_cache(maxsize=None)
def get_ring(m: int, q: int) -> KRing:
    return KRing(m, q)


class KElem:
    """One element of O_K/q, carrying whichever representations have been computed."""

    __slots__ = ("ring", "_coeffs", "_slots")

    def __init__(self, ring: KRing, coeffs: np.ndarray | None = None, slots: np.ndarray | None = None):
        if coeffs is None and slots is None:
            raise ValueError("need at least one representation")
        self.ring = ring
        self._coeffs = self._clean(coeffs)
        self._slots = self._clean(slots)

    def _clean(self, arr):
        if arr is None:
            return None
        a = np.asarray(arr, dtype=np.int64) % self.ring.q
        if a.shape != (self.ring.n,):
            raise ValueError(f"expected shape ({self.ring.n},), got {a.shape}")
        return a

    @classmethod
    def from_coeffs(cls, ring: KRing, coeffs) -> "KElem":
        return cls(ring, coeffs=coeffs)

    @classmethod
    def from_slots(cls, ring: KRing, slots) -> "KElem":
        return cls(ring, slots=slots)

    @property
    def rep(self) -> str:
        if self._coeffs is not None and self._slots is not None:
            return "both"
        return "coeff" if self._coeffs is not None else "slot"

    @property
    def coeffs(self) -> np.ndarray:
        if self._coeffs is None:
            self._coeffs = self.ring.to_coeffs(self._slots)
        return self._coeffs

    @property
    def slots(self) -> np.ndarray:
        if self._slots is None:
            self._slots = self.ring.to_slots(self._coeffs)
        return self._slots

    def _check(self, other: "KElem") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("elements from different rings")

    def __add__(self, other: "KElem") -> "KElem":
        self._check(other)
        if self._slots is not None and other._slots is not None:
            return KElem(self.ring, slots=(self._slots + other._slots) % self.ring.q)
        return KElem(self.ring, coeffs=(self.coeffs + other.coeffs) % self.ring.q)

    def __sub__(self, other: "KElem") -> "KElem":
        self._check(other)
        if self._slots is not None and other._slots is not None:
            return KElem(self.ring, slots=(self._slots - other._slots) % self.ring.q)
        return KElem(self.ring, coeffs=(self.coeffs - other.coeffs) % self.ring.q)

    def __neg__(self) -> "KElem":
        if self._slots is not None:
            return KElem(self.ring, slots=(-self._slots) % self.ring.q)
        return KElem(self.ring, coeffs=(-self._coeffs) % self.ring.q)

    def __mul__(self, other: "KElem") -> "KElem":
        self._check(other)
        K_MUL_COUNTER.k_mul += 1
        return KElem(self.ring, slots=self.slots * other.slots % self.ring.q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KElem):
            return NotImplemented
        self._check(other)
        if self._slots is not None and other._slots is not None:
            return bool(np.array_equal(self._slots, other._slots))
        return bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.ring, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"KElem({self.ring}, coeffs={self.coeffs.tolist()})"


def k_add(a: KElem, b: KElem) -> KElem:
    return a + b


def k_sub(a: KElem, b: KElem) -> KElem:
    return a - b


def k_mul(a: KElem, b: KElem) -> KElem:
    return a * b


def k_zero(ring: KRing) -> KElem:
    return KElem(ring, coeffs=np.zeros(ring.n, dtype=np.int64))


def k_one(ring: KRing) -> KElem:
    c = np.zeros(ring.n, dtype=np.int64)
    c[0] = 1
    # the constant polynomial 1 evaluates to 1 in every slot
    return KElem(ring, coeffs=c, slots=np.ones(ring.n, dtype=np.int64))
