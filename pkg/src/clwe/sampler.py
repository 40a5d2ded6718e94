"""Seeded sampling: discrete Gaussian integers and uniform algebra elements.

sample_z draws integers with weight proportional to exp(-pi x^2 / sigma^2),
truncated to [-T, T] with T = ceil(tailcut * sigma), by rejection against the
uniform proposal on the support: draw x uniform, accept with probability
exp(-pi x^2 / sigma^2).  The acceptance weights are precomputed once per call
over the (small) support, which changes nothing statistically.

With this normalization the variance is close to sigma^2 / (2 pi) once sigma
is above ~1.5; tests compare against the exact truncated-sum value.

Structured samplers build coefficient-representation tensors of independent
draws: a base-ring element is n draws, an L element d of those (one per
ell-coordinate), an algebra element d of those (one per u-power).  All
randomness flows through an explicit numpy Generator handle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .base_ring import KElem, KRing
from .cyclic_algebra import AElem, CyclicAlgebra
from .field_tower import FieldTower, LElem

# below this the distribution is a point mass at 0
SIGMA_DEGENERATE = 0.01


@dataclass(frozen=True)
class GaussianParams:
    sigma: float
    tailcut: float = 12.0

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        if self.tailcut < 6:
            raise ValueError("tailcut below 6 discards non-negligible mass")

    @property
    def support_bound(self) -> int:
        return math.ceil(self.tailcut * self.sigma)


def sample_z(params: GaussianParams, rng: np.random.Generator, size=None):
    """Rejection-sample the truncated discrete Gaussian; scalar or array output."""
    scalar = size is None
    shape = (1,) if scalar else tuple(np.atleast_1d(size))
    count = int(np.prod(shape))
    if params.sigma < SIGMA_DEGENERATE:
        out = np.zeros(count, dtype=np.int64)
    else:
        T = params.support_bound
        width = 2 * T + 1
        support = np.arange(-T, T + 1)
        accept = np.exp(-math.pi * support.astype(np.float64) ** 2 / (params.sigma * params.sigma))
        # mean acceptance is roughly sigma / width; oversample deterministically
        rate = max(params.sigma / width, 1.0 / width)
        pieces = []
        got = 0
        while got < count:
            batch = max(64, math.ceil((count - got) / rate) + 64)
            idx = rng.integers(0, width, batch)
            u = rng.random(batch)
            kept = support[idx[u < accept[idx]]]
            pieces.append(kept[: count - got])
            got += len(pieces[-1])
        out = np.concatenate(pieces)
    return int(out[0]) if scalar else out.reshape(shape)


def sample_k(ring: KRing, params: GaussianParams, rng: np.random.Generator) -> KElem:
    """n independent Gaussian coefficients, reduced mod q."""
    return KElem.from_coeffs(ring, sample_z(params, rng, size=ring.n))


def sample_l(tower: FieldTower, params: GaussianParams, rng: np.random.Generator) -> LElem:
    """d independent base-ring draws, one per ell-coordinate."""
    return LElem.from_coeffs(tower, sample_z(params, rng, size=(tower.d, tower.n)))


def sample_a(algebra: CyclicAlgebra, params: GaussianParams, rng: np.random.Generator) -> AElem:
    """d independent L draws, one per u-power."""
    return algebra.from_coeffs(sample_z(params, rng, size=(algebra.d, algebra.d, algebra.n)))


def uniform_a(algebra: CyclicAlgebra, rng: np.random.Generator) -> AElem:
    """Uniform over Lambda_q: every coefficient uniform in [0, q)."""
    return algebra.from_coeffs(rng.integers(0, algebra.q, (algebra.d, algebra.d, algebra.n)))


def trial_rng(seed: int, offset: int) -> np.random.Generator:
    """Independent per-trial generator derived from a master seed by a counter offset."""
    return np.random.default_rng([np.uint64(seed), np.uint64(offset)])
