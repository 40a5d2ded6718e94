"""Parameter packs: the registry, validation, and modulus-splitting searches.

A pack fixes one algebra: conductor m of the base field (m = 1 hosts the
rational quaternion toys), n = phi(m), extension degree d, modulus q = 1 mod m,
and the exponent t describing gamma.  Provenance records how the pack was
constructed and whether q is declared to split completely in the extension
field (the precondition for the slot fast path):

  * subfield: extension inside a larger cyclotomic, q found by the naive
    (q = 1 mod m*q') or quadratic (discriminant a square mod q) search, or by
    a direct quartic splitting check where no general method exists;
  * compositum: base field composed with an auxiliary cyclotomic; these packs
    record their construction data in provenance details, carry a placeholder
    functional gamma exponent, and do not declare splitting in the extension;
  * toy: small self-contained models for exhaustive testing.

Non-norm status of gamma for the large packs is provenance, not computation;
only the rational quaternion case is verified from first principles (a sum of
two rational squares is nonnegative, hence never -1).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import sympy

from .base_ring import euler_phi, get_ring, is_quadratic_residue
from .cyclic_algebra import CyclicAlgebra
from .field_tower import FieldTower


@dataclass(frozen=True)
class Provenance:
    construction: str  # subfield | compositum | toy
    q_prime: int | None
    split_in_L: bool | None  # None when the pack file fails to declare it
    details: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class ParamPack:
    m: int
    n: int
    d: int
    q: int
    gamma_exponent: int
    provenance: Provenance

    @property
    def label(self) -> str:
        return f"m{self.m}-d{self.d}-q{self.q}"

    @property
    def total_dimension(self) -> int:
        return self.n * self.d * self.d


def to_json_dict(pack: ParamPack) -> dict:
    prov: dict = {
        "construction": pack.provenance.construction,
        "q_prime": pack.provenance.q_prime,
        "split_in_L": pack.provenance.split_in_L,
    }
    if pack.provenance.details:
        prov["details"] = dict(pack.provenance.details)
    return {
        "m": pack.m,
        "n": pack.n,
        "d": pack.d,
        "q": pack.q,
        "gamma_exponent": pack.gamma_exponent,
        "provenance": prov,
    }


def to_json_text(pack: ParamPack) -> str:
    return json.dumps(to_json_dict(pack), indent=2) + "\n"


def from_json_dict(data: dict) -> ParamPack:
    try:
        prov_data = data["provenance"]
        details = prov_data.get("details", {})
        prov = Provenance(
            construction=prov_data["construction"],
            q_prime=prov_data.get("q_prime"),
            split_in_L=prov_data.get("split_in_L"),
            details=tuple(sorted((str(k), str(v)) for k, v in details.items())),
        )
        return ParamPack(
            m=int(data["m"]),
            n=int(data["n"]),
            d=int(data["d"]),
            q=int(data["q"]),
            gamma_exponent=int(data["gamma_exponent"]),
            provenance=prov,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed pack document: {exc}") from exc


def from_json_text(text: str) -> ParamPack:
    return from_json_dict(json.loads(text))


def validate(pack: ParamPack) -> list[str]:
    """Semantic checks; returns human-readable violations, throws nothing."""
    out = []
    if pack.m < 1:
        out.append(f"m={pack.m} is not positive")
        return out
    if not sympy.isprime(pack.q):
        out.append(f"q={pack.q} is not prime")
    if pack.m > 1 and pack.q % pack.m != 1:
        out.append(f"q={pack.q} is not 1 mod m={pack.m}")
    if pack.n != euler_phi(pack.m):
        out.append(f"n={pack.n} does not equal phi({pack.m})={euler_phi(pack.m)}")
    if pack.d < 1:
        out.append(f"d={pack.d} is not positive")
    if pack.provenance.construction not in ("subfield", "compositum", "toy"):
        out.append(f"unknown construction {pack.provenance.construction!r}")
    if pack.provenance.construction == "subfield" and pack.d >= 1 and pack.m % pack.d != 0:
        out.append(f"d={pack.d} does not divide m={pack.m}")
    if pack.m == 1:
        if pack.gamma_exponent % 2 == 0:
            out.append("gamma=+1 is a norm (of 1), so the quaternion toy degenerates")
    elif math.gcd(pack.gamma_exponent, pack.m) != 1:
        out.append(
            f"gcd(gamma_exponent={pack.gamma_exponent}, m={pack.m}) != 1, gamma is not primitive"
        )
    if pack.provenance.split_in_L is None:
        out.append("provenance does not declare split_in_L")
    return out


# ---- the registry ---------------------------------------------------------------


def _subfield(m, d, q, q_prime, **details):
    det = tuple(sorted((k, str(v)) for k, v in details.items()))
    return ParamPack(m, euler_phi(m), d, q, 1, Provenance("subfield", q_prime, True, det))


def _compositum(m, d, q, **details):
    det = tuple(sorted((k, str(v)) for k, v in details.items()))
    return ParamPack(m, euler_phi(m), d, q, 1, Provenance("compositum", None, False, det))


def _toy(m, d, q):
    return ParamPack(m, euler_phi(m), d, q, 1, Provenance("toy", None, True))


@lru_cache(maxsize=1)
def registry() -> tuple[ParamPack, ...]:
    """Reference packs: nine construction-table rows, one quartic reference,
    then the exhaustively testable toys.

    Compositum rows get the smallest prime q = 1 mod m as a working modulus
    (no splitting in the extension is claimed for them) and record the
    construction fields; their true gamma is a root of unity of small order,
    so the functional exponent here is a placeholder for arithmetic only.
    """
    return (
        _subfield(81, 3, 26407, 163, search="naive"),
        _subfield(256, 2, 15361, 257, search="quadratic"),
        _subfield(64, 4, 37057, 193, search="naive"),
        _subfield(512, 2, 12289, 7681, search="quadratic"),
        _subfield(128, 4, 3329, None, search="direct quartic check"),
        _subfield(243, 3, 1183411, 487, search="naive"),
        _compositum(192, 3, 193, base_center_conductor=3, auxiliary_conductor=64,
                    gamma_true_order=3),
        _compositum(576, 2, 577, base_center_conductor=64, auxiliary_conductor=9,
                    gamma_true_order=64),
        _compositum(384, 3, 769, base_center_conductor=3, auxiliary_conductor=128,
                    gamma_true_order=3),
        _subfield(256, 4, 10753, None, search="direct quartic check"),
        _toy(1, 2, 5),
        _toy(1, 2, 3),
        _toy(16, 2, 97),
    )


def registry_by_label() -> dict[str, ParamPack]:
    return {p.label: p for p in registry()}


# ---- modulus searches -----------------------------------------------------------


def find_q_naive(m: int, q_prime: int, limit: int) -> list[int]:
    """Primes q = 1 mod m*q' up to limit: q splits completely in the degree-d
    subfield because it splits in the enclosing cyclotomic of conductor m*q'."""
    step = m * q_prime
    return [q for q in range(step + 1, limit + 1, step) if sympy.isprime(q)]


def find_q_quadratic(m: int, q_prime: int, limit: int) -> list[int]:
    """Primes q = 1 mod m (q != q') whose residue field sees the quadratic
    subfield of the conductor-q' cyclotomic split: the field discriminant
    (q' when q' = 1 mod 4, else -q') must be a square mod q."""
    disc = q_prime if q_prime % 4 == 1 else -q_prime
    out = []
    for q in range(m + 1, limit + 1, m):
        if q == q_prime or not sympy.isprime(q):
            continue
        if is_quadratic_residue(disc % q, q):
            out.append(q)
    return out


# ---- quaternion non-norm check -----------------------------------------------------


def gauss_norm(a, b):
    """Norm of a + bi down to the rationals."""
    return a * a + b * b


def verify_quaternion_nonnorm() -> bool:
    """-1 is not a rational norm from the Gaussian numbers.

    The norm of a + bi is a^2 + b^2; symbolically solving a^2 + b^2 = -1 over
    the reals (a fortiori the rationals) yields nothing, while +1 and 5 are
    hit by explicit witnesses, so the norm group misses -1 but not +-units.
    """
    a, b = sympy.symbols("a b", real=True)
    solutions = sympy.solve(sympy.Eq(gauss_norm(a, b), -1), [a, b])
    if solutions:
        return False
    if gauss_norm(2, 1) != 5 or gauss_norm(1, 0) != 1:
        return False
    return True


# ---- pack -> algebra ---------------------------------------------------------------


@lru_cache(maxsize=32)
def _algebra(m: int, d: int, q: int, gamma_exponent: int) -> CyclicAlgebra:
    return CyclicAlgebra(FieldTower(get_ring(m, q), d), gamma_exponent)


def build_algebra(pack: ParamPack) -> CyclicAlgebra:
    return _algebra(pack.m, pack.d, pack.q, pack.gamma_exponent)
