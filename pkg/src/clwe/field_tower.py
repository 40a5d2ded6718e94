"""Degree-d cyclic extension tower L/K in the split slot model.

O_L/qO_L is modeled through the orthonormal cyclic idempotent basis
ell_1, ..., ell_d:

    ell_i * ell_j = delta_ij ell_i,   ell_1 + ... + ell_d = 1,
    theta(ell_i) = ell_{i+1}  (indices cyclic)

An element is stored as its d ell-coordinates, each a full base-ring element:
x = sum_j ell_j k_j with k_j in O_K/q.  Consequences used throughout:

  * multiplication is coordinatewise: (sum ell_j k_j)(sum ell_j g_j) = sum ell_j (k_j g_j),
    d base-ring multiplications per product;
  * theta cyclically shifts the coordinate vector and fixes K:
    theta(sum ell_j k_j) = sum ell_j k_{j-1};
  * K embeds diagonally: k maps to coordinates (k, k, ..., k).

Within slot i of the base ring, the d coordinates form the block vector of the
element in the i-th residue factor, so the (d, n) slot array of an element is
exactly its block decomposition.

Arrays are (d, n) int64 mod q; coefficient and slot representations are held
lazily, converting through the base ring rowwise.
"""

from __future__ import annotations

import numpy as np

from .base_ring import K_MUL_COUNTER, KElem, KRing


class FieldTower:
    """Context for L/K of degree d over a base ring."""

    def __init__(self, ring: KRing, d: int):
        if d < 1:
            raise ValueError("d must be >= 1")
        self.ring = ring
        self.d = d

    def __repr__(self) -> str:
        return f"FieldTower({self.ring}, d={self.d})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTower) and (self.ring, self.d) == (other.ring, other.d)

    def __hash__(self) -> int:
        return hash((self.ring, self.d))

    @property
    def q(self) -> int:
        return self.ring.q

    @property
    def n(self) -> int:
        return self.ring.n

    def zero(self) -> "LElem":
        return LElem(self, coeffs=np.zeros((self.d, self.n), dtype=np.int64))

    def one(self) -> "LElem":
        # 1 = ell_1 + ... + ell_d: every ell-coordinate is the base-ring 1
        c = np.zeros((self.d, self.n), dtype=np.int64)
        c[:, 0] = 1
        return LElem(self, coeffs=c, slots=np.ones((self.d, self.n), dtype=np.int64))

    def embed_k(self, k: KElem) -> "LElem":
        if k.ring != self.ring:
            raise ValueError("element from a different base ring")
        if k._slots is not None:
            return LElem(self, slots=np.broadcast_to(k.slots, (self.d, self.n)).copy())
        return LElem(self, coeffs=np.broadcast_to(k.coeffs, (self.d, self.n)).copy())


class LElem:
    """One element of O_L/q as d ell-coordinates over the base ring."""

    __slots__ = ("tower", "_coeffs", "_slots")

    def __init__(self, tower: FieldTower, coeffs: np.ndarray | None = None, slots: np.ndarray | None = None):
        if coeffs is None and slots is None:
            raise ValueError("need at least one representation")
        self.tower = tower
        self._coeffs = self._clean(coeffs)
        self._slots = self._clean(slots)

    def _clean(self, arr):
        if arr is None:
            return None
        a = np.asarray(arr, dtype=np.int64) % self.tower.q
        if a.shape != (self.tower.d, self.tower.n):
            raise ValueError(f"expected shape ({self.tower.d}, {self.tower.n}), got {a.shape}")
        return a

    @classmethod
    def from_coeffs(cls, tower: FieldTower, coeffs) -> "LElem":
        return cls(tower, coeffs=coeffs)

    @classmethod
    def from_slots(cls, tower: FieldTower, slots) -> "LElem":
        return cls(tower, slots=slots)

    @classmethod
    def from_ell_coords(cls, tower: FieldTower, ks: list[KElem]) -> "LElem":
        if len(ks) != tower.d:
            raise ValueError(f"need {tower.d} coordinates")
        return cls(tower, coeffs=np.stack([k.coeffs for k in ks]))

    @property
    def coeffs(self) -> np.ndarray:
        if self._coeffs is None:
            self._coeffs = self.tower.ring.to_coeffs(self._slots)
        return self._coeffs

    @property
    def slots(self) -> np.ndarray:
        if self._slots is None:
            self._slots = self.tower.ring.to_slots(self._coeffs)
        return self._slots

    def ell_coord(self, j: int) -> KElem:
        if self._slots is not None:
            return KElem.from_slots(self.tower.ring, self._slots[j])
        return KElem.from_coeffs(self.tower.ring, self._coeffs[j])

    def ell_coords(self) -> list[KElem]:
        return [self.ell_coord(j) for j in range(self.tower.d)]

    def _check(self, other: "LElem") -> None:
        if self.tower != other.tower:
            raise ValueError("elements from different towers")

    def __add__(self, other: "LElem") -> "LElem":
        self._check(other)
        if self._slots is not None and other._slots is not None:
            return LElem(self.tower, slots=(self._slots + other._slots) % self.tower.q)
        return LElem(self.tower, coeffs=(self.coeffs + other.coeffs) % self.tower.q)

    def __sub__(self, other: "LElem") -> "LElem":
        self._check(other)
        if self._slots is not None and other._slots is not None:
            return LElem(self.tower, slots=(self._slots - other._slots) % self.tower.q)
        return LElem(self.tower, coeffs=(self.coeffs - other.coeffs) % self.tower.q)

    def __neg__(self) -> "LElem":
        if self._slots is not None:
            return LElem(self.tower, slots=(-self._slots) % self.tower.q)
        return LElem(self.tower, coeffs=(-self._coeffs) % self.tower.q)

    def __mul__(self, other: "LElem") -> "LElem":
        return l_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LElem):
            return NotImplemented
        self._check(other)
        if self._slots is not None and other._slots is not None:
            return bool(np.array_equal(self._slots, other._slots))
        return bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.tower, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"LElem({self.tower}, coeffs={self.coeffs.tolist()})"


def l_add(a: LElem, b: LElem) -> LElem:
    return a + b


def l_sub(a: LElem, b: LElem) -> LElem:
    return a - b


def l_mul(a: LElem, b: LElem) -> LElem:
    """Coordinatewise product in the ell basis: d base-ring multiplications."""
    a._check(b)
    K_MUL_COUNTER.k_mul += a.tower.d
    return LElem(a.tower, slots=a.slots * b.slots % a.tower.q)


def theta(x: LElem, power: int = 1) -> LElem:
    """The tower automorphism: cyclic shift of ell-coordinates, K fixed pointwise."""
    k = power % x.tower.d
    coeffs = None if x._coeffs is None else np.roll(x._coeffs, k, axis=0)
    slots = None if x._slots is None else np.roll(x._slots, k, axis=0)
    return LElem(x.tower, coeffs=coeffs, slots=slots)
