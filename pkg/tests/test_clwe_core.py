"""Samples, normal form, invertibility statistics, difference sets."""

from fractions import Fraction

import numpy as np
import pytest

from clwe.base_ring import get_ring
from clwe.clwe_core import (
    ClweSample,
    build_difference_set,
    clwe_sample,
    companion_matrix,
    invertible_fraction_exact,
    invertible_fraction_mc,
    invertible_lower_bound,
    is_irreducible,
    normal_form,
    verify_difference_set,
)
from clwe.cyclic_algebra import CyclicAlgebra
from clwe.field_tower import FieldTower
from clwe.sampler import GaussianParams, sample_a


def alg_16_97():
    return CyclicAlgebra(FieldTower(get_ring(16, 97), 2), 1)


def test_sample_is_a_s_plus_e():
    alg = alg_16_97()
    rng = np.random.default_rng(7)
    params = GaussianParams(2.0)
    s = sample_a(alg, params, rng)
    smp, e = clwe_sample(alg, s, params, rng, return_error=True)
    assert smp.b == alg.a_mul_blocks(smp.a, s) + e
    # error coefficients stay inside the tailcut window (centered lift)
    half = (alg.q + 1) // 2
    centered = (e.coeffs + half) % alg.q - half
    assert np.abs(centered).max() <= params.support_bound


def test_sample_reproducible():
    alg = alg_16_97()
    params = GaussianParams(2.0)
    s = sample_a(alg, params, np.random.default_rng(1))
    one = clwe_sample(alg, s, params, np.random.default_rng(5))
    two = clwe_sample(alg, s, params, np.random.default_rng(5))
    assert one.a == two.a and one.b == two.b


def test_normal_form_replay_identity():
    # b-bar_i = a-bar_i e_1 - e_i must hold exactly after the transform
    alg = alg_16_97()
    rng = np.random.default_rng(11)
    params = GaussianParams(2.0)
    s = sample_a(alg, params, rng)
    samples, errors = [], []
    for _ in range(30):
        smp, e = clwe_sample(alg, s, params, rng, return_error=True)
        samples.append(smp)
        errors.append(e)
    transformed, pivot = normal_form(alg, samples)
    e1 = errors[pivot]
    for t, e in zip(transformed, errors):
        assert t.b == alg.a_mul_blocks(t.a, e1) - e


def test_normal_form_pivot_becomes_trivial():
    alg = alg_16_97()
    rng = np.random.default_rng(3)
    params = GaussianParams(2.0)
    s = sample_a(alg, params, rng)
    samples = [clwe_sample(alg, s, params, rng) for _ in range(5)]
    transformed, pivot = normal_form(alg, samples)
    assert transformed[pivot].a == alg.one()
    assert transformed[pivot].b == alg.zero()


def test_normal_form_skips_singular_pivot():
    alg = alg_16_97()
    rng = np.random.default_rng(9)
    params = GaussianParams(2.0)
    s = sample_a(alg, params, rng)
    good = clwe_sample(alg, s, params, rng)
    assert alg.is_invertible(good.a)
    bad = ClweSample(alg.zero(), alg.one())
    transformed, pivot = normal_form(alg, [bad, good])
    assert pivot == 1
    assert transformed[pivot].a == alg.one()


def test_normal_form_raises_without_invertible():
    alg = alg_16_97()
    bad = ClweSample(alg.zero(), alg.one())
    with pytest.raises(ValueError):
        normal_form(alg, [bad, bad, bad])


@pytest.mark.parametrize(
    "q,d,n,expected",
    [
        (2, 2, 1, Fraction(6, 16)),
        (3, 2, 1, Fraction(48, 81)),
    ],
)
def test_invertible_fraction_exact_small(q, d, n, expected):
    assert invertible_fraction_exact(q, d, n) == expected


def test_invertible_fraction_exact_golden():
    frac = invertible_fraction_exact(97, 2, 8)
    assert float(frac) == pytest.approx(0.919658759592181, abs=1e-12)


def test_lower_bound_holds():
    for q, d, n in [(2, 2, 1), (3, 2, 4), (97, 2, 8), (5, 3, 2)]:
        assert invertible_fraction_exact(q, d, n) >= invertible_lower_bound(q, d, n)
    assert float(invertible_lower_bound(97, 2, 8)) == pytest.approx(
        0.8472117694910638, abs=1e-12
    )


def test_invertible_fraction_mc_matches_exact():
    alg = alg_16_97()
    est = invertible_fraction_mc(alg, 2000, np.random.default_rng(42))
    assert abs(est - 0.919658759592181) < 0.025


@pytest.mark.parametrize(
    "coeffs,q,expected",
    [
        ([1, 0, 1], 3, True),  # x^2 + 1
        ([1, 2, 1], 3, False),  # (x + 1)^2
        ([1, 1, 0, 0, 1], 2, True),  # x^4 + x + 1
        ([1, 0, 1, 0, 1], 2, False),  # (x^2 + x + 1)^2, no roots
        ([4, 0, 1], 5, False),  # x^2 - 1 = (x - 1)(x + 1)
    ],
)
def test_is_irreducible(coeffs, q, expected):
    got = is_irreducible(np.array(coeffs, dtype=np.int64), q)
    assert got == expected


def test_is_irreducible_rejects_non_monic():
    with pytest.raises(ValueError):
        is_irreducible(np.array([1, 0, 2], dtype=np.int64), 3)


def test_companion_matrix_golden():
    # x^2 + 1 over F_3
    c = companion_matrix(np.array([1, 0, 1], dtype=np.int64), 3)
    assert c.tolist() == [[0, 2], [1, 0]]
    # the companion matrix is a root of its own polynomial
    assert ((c @ c + np.eye(2, dtype=np.int64)) % 3 == 0).all()


def test_difference_set_q3_d2():
    ds = build_difference_set(3, 2, np.random.default_rng(0))
    assert ds.size == 9
    members = list(ds.all_members())
    assert len(members) == 9
    assert verify_difference_set(ds)


def test_difference_set_members_additive():
    ds = build_difference_set(3, 2, np.random.default_rng(1))
    v1, v2 = [1, 2], [2, 2]
    lhs = (ds.member(v1) + ds.member(v2)) % 3
    rhs = ds.member([(a + b) % 3 for a, b in zip(v1, v2)])
    assert (lhs == rhs).all()


def test_difference_set_closed_under_product():
    # field image, so products of members land back in the set
    ds = build_difference_set(3, 2, np.random.default_rng(2))
    members = [m.tolist() for m in ds.all_members()]
    a = ds.member([1, 1])
    b = ds.member([2, 1])
    assert (a @ b % 3).tolist() in members


def test_difference_set_sample_member():
    ds = build_difference_set(5, 2, np.random.default_rng(3))
    members = [m.tolist() for m in ds.all_members()]
    got = ds.sample_member(np.random.default_rng(4))
    assert got.tolist() in members


def test_verify_gate_rejects_large_sets():
    ds = build_difference_set(5, 4, np.random.default_rng(5))
    with pytest.raises(ValueError):
        verify_difference_set(ds, max_size=100)
