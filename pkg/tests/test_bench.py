"""Benchmark harness: exact operation counts, baseline plumbing, reports."""

import json

import numpy as np
import pytest

from clwe.bench import (
    baseline_modulus,
    bench_baselines,
    bench_mul,
    full_bench,
    report_json,
    report_table,
)
from clwe.params_registry import ParamPack, Provenance, registry_by_label

TOY = registry_by_label()["m16-d2-q97"]


def test_bench_mul_counts_toy():
    report = bench_mul(TOY, 10, np.random.default_rng(0))
    assert report.naive_phi.k_muls == 8  # d^3
    assert report.crt_block.k_muls == 4  # d^2
    assert report.naive_phi.fwd_transforms == 0
    assert report.crt_block.inv_transforms == 0
    assert report.naive_phi.median_ns > 0 and report.crt_block.median_ns > 0


def test_bench_mul_counts_deterministic():
    one = bench_mul(TOY, 10, np.random.default_rng(1))
    two = bench_mul(TOY, 12, np.random.default_rng(2))
    assert one.naive_phi.k_muls == two.naive_phi.k_muls
    assert one.crt_block.k_muls == two.crt_block.k_muls


def test_bench_mul_rejects_bad_input():
    with pytest.raises(ValueError):
        bench_mul(TOY, 9, np.random.default_rng(0))
    compositum = registry_by_label()["m192-d3-q193"]
    with pytest.raises(ValueError):
        bench_mul(compositum, 10, np.random.default_rng(0))


def test_bench_mul_d1_paths_coincide():
    pack = ParamPack(16, 8, 1, 97, 1, Provenance("toy", None, True))
    report = bench_mul(pack, 10, np.random.default_rng(3))
    assert report.naive_phi.k_muls == 1
    assert report.crt_block.k_muls == 1


def test_baseline_modulus():
    assert baseline_modulus(1024, 15361) == 15361
    assert baseline_modulus(2048, 12289) == 12289
    got = baseline_modulus(2048, 3329)
    assert got == 12289  # smallest prime 1 mod 2048 that is >= 3329
    got = baseline_modulus(512, 3329)
    assert got >= 3329 and got % 512 == 1


def test_bench_baselines_counts():
    rlwe, mlwe, rlwe_q, mlwe_q = bench_baselines(512, 2, 15361, 10, np.random.default_rng(4))
    assert (rlwe.fwd_transforms, rlwe.inv_transforms, rlwe.k_muls) == (2, 1, 1)
    assert (mlwe.fwd_transforms, mlwe.inv_transforms, mlwe.k_muls) == (6, 2, 4)
    assert rlwe_q == 15361 and mlwe_q == 15361  # pack modulus works for both


def test_bench_baselines_rank4():
    rlwe, mlwe, _, _ = bench_baselines(1024, 4, 3329, 10, np.random.default_rng(5))
    assert mlwe.fwd_transforms == 20  # d^2 + d
    assert mlwe.inv_transforms == 4
    assert rlwe.fwd_transforms == 2


def test_bench_baselines_rejects_bad_dimensions():
    rng = np.random.default_rng(6)
    with pytest.raises(ValueError):
        bench_baselines(500, 2, 15361, 10, rng)
    with pytest.raises(ValueError):
        bench_baselines(512, 3, 15361, 10, rng)


def test_full_bench_report():
    report = full_bench(TOY, 10, np.random.default_rng(7))
    assert report.total_dimension == 32
    assert report.rlwe_q == 193  # 97 is not 1 mod 64, substituted upward
    assert report.mlwe_q == 97  # 97 = 1 mod 32 works directly
    assert report.clwe_public_elements == 4
    assert report.mlwe_public_elements == 6
    doc = json.loads(report_json(report))
    assert set(doc["paths"]) == {"naive_phi", "crt_block", "rlwe_baseline", "mlwe_baseline"}
    assert doc["storage"]["clwe_public_elements"] == 4
    table = report_table(report)
    assert "naive_phi" in table and "crt_block" in table
