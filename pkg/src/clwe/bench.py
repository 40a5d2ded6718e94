"""Multiplication benchmark: structured algebra paths vs ring/module baselines.

Four paths at matched total dimension N = n d^2:

  naive_phi     left-regular matrix route, d^3 counted base-ring products
  crt_block     residue-block route on slot tensors, d^2 counted products
  rlwe_baseline one ring product in a degree-N power-of-two cyclotomic:
                2 forward transforms, 1 pointwise product, 1 inverse
  mlwe_baseline d x d matrix times d-vector over a degree-N/d ring:
                d^2 + d forward transforms, d^2 pointwise products, d inverse

Counts come from the global operation counter and are exact; wall times are
medians over reps of single products and only comparable within one machine.
Baselines keep the pack modulus when it is 1 mod the baseline conductor and
otherwise substitute the smallest prime of at least the pack modulus in the
right class, so operand magnitudes stay comparable.

Algebra operands are generated once in slot representation and shared by both
algebra paths; every rep's block output is checked against the naive output.
Baseline operands are fresh coefficient vectors per rep so the timed region
includes the transforms.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from statistics import median

import numpy as np
import sympy

from .base_ring import K_MUL_COUNTER, KElem, get_ring
from .cyclic_algebra import AElem
from .params_registry import ParamPack, build_algebra


@dataclass(frozen=True)
class PathResult:
    median_ns: float
    k_muls: int  # per product
    fwd_transforms: int  # per product
    inv_transforms: int  # per product


@dataclass(frozen=True)
class BenchReport:
    pack_label: str
    total_dimension: int
    d: int
    reps: int
    naive_phi: PathResult
    crt_block: PathResult
    rlwe_baseline: PathResult | None = None
    mlwe_baseline: PathResult | None = None
    rlwe_q: int | None = None
    mlwe_q: int | None = None

    @property
    def clwe_public_elements(self) -> int:
        # (a, b): two algebra elements, d extension-field coordinates each
        return 2 * self.d

    @property
    def mlwe_public_elements(self) -> int:
        # (A, b): a d x d matrix plus a d-vector of ring elements
        return self.d * self.d + self.d


def _timed(fn, operands) -> tuple[float, list]:
    times, outputs = [], []
    for args in operands:
        t0 = time.perf_counter_ns()
        out = fn(*args)
        t1 = time.perf_counter_ns()
        times.append(t1 - t0)
        outputs.append(out)
    return median(times), outputs


def _per_product(before: tuple[int, int, int], reps: int) -> tuple[int, int, int]:
    after = K_MUL_COUNTER.snapshot()
    deltas = tuple(a - b for a, b in zip(after, before))
    if any(delta % reps for delta in deltas):
        raise RuntimeError("operation counts are not uniform across reps")
    return tuple(delta // reps for delta in deltas)


def bench_mul(pack: ParamPack, reps: int, rng: np.random.Generator) -> BenchReport:
    """Time and count both algebra multiplication paths on one operand stream."""
    if reps < 10:
        raise ValueError("need at least 10 reps")
    if pack.provenance.split_in_L is not True:
        raise ValueError(f"pack {pack.label} does not declare the split fast path")
    alg = build_algebra(pack)
    operands = []
    for _ in range(reps):
        x = alg.from_slots(rng.integers(0, alg.q, (alg.d, alg.d, alg.n)))
        y = alg.from_slots(rng.integers(0, alg.q, (alg.d, alg.d, alg.n)))
        operands.append((x, y))

    before = K_MUL_COUNTER.snapshot()
    naive_ns, naive_out = _timed(alg.a_mul_naive, operands)
    naive_counts = _per_product(before, reps)

    before = K_MUL_COUNTER.snapshot()
    block_ns, block_out = _timed(alg.a_mul_blocks, operands)
    block_counts = _per_product(before, reps)

    for a, b in zip(naive_out, block_out):
        if not np.array_equal(a.slots, b.slots):
            raise RuntimeError("block and naive products disagree on a benchmark operand")

    return BenchReport(
        pack_label=pack.label,
        total_dimension=pack.total_dimension,
        d=pack.d,
        reps=reps,
        naive_phi=PathResult(naive_ns, *naive_counts),
        crt_block=PathResult(block_ns, *block_counts),
    )


def baseline_modulus(conductor: int, preferred_q: int) -> int:
    """preferred_q when it is 1 mod conductor, else the smallest prime of
    comparable size (>= preferred_q) in that class."""
    if preferred_q % conductor == 1 and sympy.isprime(preferred_q):
        return preferred_q
    start = (preferred_q // conductor) * conductor + 1
    q = max(start, conductor + 1)
    while True:
        if q >= preferred_q and sympy.isprime(q):
            return q
        q += conductor


def rlwe_product(ring, a: KElem, b: KElem) -> np.ndarray:
    return (a * b).coeffs


def mlwe_product(ring, mat: list[list[KElem]], vec: list[KElem]) -> list[np.ndarray]:
    out = []
    for row in mat:
        acc = row[0] * vec[0]
        for entry, component in zip(row[1:], vec[1:]):
            acc = acc + entry * component
        out.append(acc.coeffs)
    return out


def bench_baselines(
    N: int, d: int, q: int, reps: int, rng: np.random.Generator
) -> tuple[PathResult, PathResult, int, int]:
    """Ring and module baseline products at total dimension N, module rank d."""
    if reps < 10:
        raise ValueError("need at least 10 reps")
    if N < 2 or N & (N - 1):
        raise ValueError(f"N={N} is not a power of two")
    if N % d or (N // d) & (N // d - 1):
        raise ValueError(f"module rank d={d} does not fit dimension N={N}")

    rlwe_q = baseline_modulus(2 * N, q)
    ring_r = get_ring(2 * N, rlwe_q)
    operands = [
        (
            ring_r,
            KElem.from_coeffs(ring_r, rng.integers(0, rlwe_q, N)),
            KElem.from_coeffs(ring_r, rng.integers(0, rlwe_q, N)),
        )
        for _ in range(reps)
    ]
    before = K_MUL_COUNTER.snapshot()
    rlwe_ns, _ = _timed(rlwe_product, operands)
    rlwe = PathResult(rlwe_ns, *_per_product(before, reps))

    mlwe_q = baseline_modulus(2 * N // d, q)
    ring_m = get_ring(2 * N // d, mlwe_q)
    deg = N // d
    operands = [
        (
            ring_m,
            [
                [KElem.from_coeffs(ring_m, rng.integers(0, mlwe_q, deg)) for _ in range(d)]
                for _ in range(d)
            ],
            [KElem.from_coeffs(ring_m, rng.integers(0, mlwe_q, deg)) for _ in range(d)],
        )
        for _ in range(reps)
    ]
    before = K_MUL_COUNTER.snapshot()
    mlwe_ns, _ = _timed(mlwe_product, operands)
    mlwe = PathResult(mlwe_ns, *_per_product(before, reps))

    return rlwe, mlwe, rlwe_q, mlwe_q


def full_bench(pack: ParamPack, reps: int, rng: np.random.Generator) -> BenchReport:
    report = bench_mul(pack, reps, rng)
    rlwe, mlwe, rlwe_q, mlwe_q = bench_baselines(
        pack.total_dimension, pack.d, pack.q, reps, rng
    )
    return BenchReport(
        pack_label=report.pack_label,
        total_dimension=report.total_dimension,
        d=report.d,
        reps=report.reps,
        naive_phi=report.naive_phi,
        crt_block=report.crt_block,
        rlwe_baseline=rlwe,
        mlwe_baseline=mlwe,
        rlwe_q=rlwe_q,
        mlwe_q=mlwe_q,
    )


def report_json(report: BenchReport) -> str:
    doc = {
        "pack": report.pack_label,
        "total_dimension": report.total_dimension,
        "reps": report.reps,
        "storage": {
            "clwe_public_elements": report.clwe_public_elements,
            "mlwe_public_elements": report.mlwe_public_elements,
        },
        "paths": {},
    }
    for name in ("naive_phi", "crt_block", "rlwe_baseline", "mlwe_baseline"):
        path = getattr(report, name)
        if path is None:
            continue
        doc["paths"][name] = {
            "median_ns": path.median_ns,
            "k_muls": path.k_muls,
            "fwd_transforms": path.fwd_transforms,
            "inv_transforms": path.inv_transforms,
        }
    if report.rlwe_q is not None:
        doc["baseline_moduli"] = {"rlwe": report.rlwe_q, "mlwe": report.mlwe_q}
    return json.dumps(doc, indent=2) + "\n"


def report_table(report: BenchReport) -> str:
    rows = [("path", "median_us", "k_muls", "fwd", "inv")]
    for name in ("naive_phi", "crt_block", "rlwe_baseline", "mlwe_baseline"):
        path = getattr(report, name)
        if path is None:
            continue
        rows.append(
            (
                name,
                f"{path.median_ns / 1000:.1f}",
                str(path.k_muls),
                str(path.fwd_transforms),
                str(path.inv_transforms),
            )
        )
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.append(
        f"public data: {report.clwe_public_elements} vs {report.mlwe_public_elements} "
        "ring elements (structured vs module)"
    )
    return "\n".join(lines) + "\n"
