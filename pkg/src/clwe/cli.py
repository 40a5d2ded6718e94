"""Command line tools: parameter inspection and modulus search, key and
ciphertext files, failure-rate estimation, multiplication benchmarks.

Key and ciphertext files share one binary layout: the magic bytes b"CLWE",
one format version byte, then m, d, q as unsigned 32-bit little-endian
integers, then every coefficient as an unsigned 32-bit little-endian integer
with the u-index outermost, the ell-index in the middle and the base-field
coefficient index innermost.  A public key stores a then b, a secret key
stores s, a ciphertext stores u then v.  Message files are raw bits packed
little-endian within each byte, n*d^2 bits, zero-padded to a byte boundary.

The header has no field for the skew constant, so files always use the
canonical choice (gamma_exponent = 1); keygen refuses packs with any other
exponent.
"""

from __future__ import annotations

import json
import math
import struct
import sys
from pathlib import Path

import click
import numpy as np

from . import pke
from .bench import full_bench, report_json, report_table
from .cyclic_algebra import AElem, CyclicAlgebra
from .params_registry import (
    ParamPack,
    _algebra,
    build_algebra,
    find_q_naive,
    find_q_quadratic,
    from_json_text,
    registry,
    to_json_dict,
    validate,
)
from .sampler import GaussianParams, sample_z, uniform_a

MAGIC = b"CLWE"
WIRE_VERSION = 1
_HEADER = struct.Struct("<4sBIII")


class WireError(ValueError):
    pass


def pack_elements(elems: list[AElem]) -> bytes:
    """Serialize algebra elements that share one algebra, header included."""
    alg = elems[0].algebra
    head = _HEADER.pack(MAGIC, WIRE_VERSION, alg.tower.ring.m, alg.d, alg.q)
    body = np.concatenate([e.coeffs.reshape(-1) for e in elems])
    return head + body.astype("<u4").tobytes()


def unpack_elements(data: bytes, count: int, what: str) -> tuple[CyclicAlgebra, list[AElem]]:
    if len(data) < _HEADER.size or data[:4] != MAGIC:
        raise WireError(f"{what}: not a CLWE element file")
    _, version, m, d, q = _HEADER.unpack_from(data)
    if version != WIRE_VERSION:
        raise WireError(f"{what}: unsupported format version {version}")
    if d < 1:
        raise WireError(f"{what}: header degree d={d} is not positive")
    try:
        algebra = _algebra(m, d, q, 1)
    except ValueError as exc:
        raise WireError(f"{what}: bad header (m={m}, d={d}, q={q}): {exc}") from exc
    want = count * d * d * algebra.n
    if (len(data) - _HEADER.size) % 4:
        raise WireError(f"{what}: truncated coefficient data")
    flat = np.frombuffer(data, dtype="<u4", offset=_HEADER.size)
    if flat.size != want:
        raise WireError(f"{what}: expected {want} coefficients, found {flat.size}")
    if flat.size and int(flat.max()) >= q:
        raise WireError(f"{what}: coefficient out of range mod {q}")
    coeffs = flat.astype(np.int64).reshape(count, d, d, algebra.n)
    return algebra, [AElem(algebra, coeffs=c) for c in coeffs]


def pack_message(bits: np.ndarray) -> bytes:
    return np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little").tobytes()


def unpack_message(data: bytes, nbits: int, what: str) -> np.ndarray:
    want = (nbits + 7) // 8
    if len(data) != want:
        raise WireError(f"{what}: expected {want} bytes for {nbits} message bits, found {len(data)}")
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    if bits[nbits:].any():
        raise WireError(f"{what}: nonzero padding bits past bit {nbits}")
    return bits[:nbits].astype(np.int64)


def load_pack(source: str) -> ParamPack:
    """Resolve a registry label or a pack JSON file path."""
    for pack in registry():
        if pack.label == source:
            return pack
    path = Path(source)
    if not path.is_file():
        raise ValueError(f"{source!r} is neither a registry label nor a pack file")
    pack = from_json_text(path.read_text())
    problems = validate(pack)
    if problems:
        raise ValueError(f"{source}: " + "; ".join(problems))
    return pack


def _die(exc: Exception):
    click.echo(f"error: {exc}", err=True)
    sys.exit(1)


@click.group()
def main():
    """Learning with errors over cyclic division algebras."""


@main.group("params")
def params_group():
    """Parameter pack inspection, validation and modulus search."""


@params_group.command("list")
@click.option("--json", "as_json", is_flag=True, help="Dump full pack records as JSON.")
def params_list(as_json):
    """Print the built-in parameter registry."""
    packs = registry()
    if as_json:
        click.echo(json.dumps([to_json_dict(p) for p in packs], indent=2))
        return
    for p in packs:
        click.echo(
            f"{p.label:16s} N={p.total_dimension:<6d} m={p.m:<4d} n={p.n:<4d} "
            f"d={p.d} q={p.q:<8d} {p.provenance.construction}"
        )


@params_group.command("validate")
@click.argument("pack_file", type=click.Path(exists=True, dir_okay=False))
def params_validate(pack_file):
    """Check a pack JSON file; exit 1 with the violations if any."""
    try:
        pack = from_json_text(Path(pack_file).read_text())
    except ValueError as exc:
        _die(exc)
    problems = validate(pack)
    if problems:
        click.echo(f"error: {pack_file}: " + "; ".join(problems), err=True)
        sys.exit(1)
    click.echo(f"{pack.label} ok")


@params_group.command("find-q")
@click.option("--m", type=int, required=True, help="Cyclotomic conductor of the center.")
@click.option("--qprime", type=int, required=True, help="Auxiliary prime q' attached to L.")
@click.option(
    "--mode",
    type=click.Choice(["naive", "quadratic"]),
    required=True,
    help="naive: q = 1 mod m*q'.  quadratic: q = 1 mod m with q' square mod q.",
)
@click.option("--max", "bound", type=int, required=True, help="Inclusive search bound.")
def params_find_q(m, qprime, mode, bound):
    """Search working moduli for a given conductor and auxiliary prime."""
    try:
        search = find_q_naive if mode == "naive" else find_q_quadratic
        found = search(m, qprime, bound)
    except ValueError as exc:
        _die(exc)
    for q in found:
        click.echo(q)
    if not found:
        click.echo(f"no candidates up to {bound}", err=True)
        sys.exit(1)


def _load_algebra_for_keys(pack_source: str) -> tuple[ParamPack, CyclicAlgebra]:
    pack = load_pack(pack_source)
    if pack.gamma_exponent != 1:
        raise ValueError(
            f"{pack.label}: key files fix the canonical gamma exponent 1, "
            f"pack declares {pack.gamma_exponent}"
        )
    return pack, build_algebra(pack)


@main.command()
@click.option("--pack", "pack_source", required=True, help="Registry label or pack JSON file.")
@click.option("--sigma", type=float, required=True, help="Error width.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), required=True, help="Deterministic RNG seed.")
@click.option("--out-pk", type=click.Path(dir_okay=False), required=True)
@click.option("--out-sk", type=click.Path(dir_okay=False), required=True)
def keygen(pack_source, sigma, seed, out_pk, out_sk):
    """Generate a key pair and write public/secret key files."""
    try:
        _, algebra = _load_algebra_for_keys(pack_source)
        gp = GaussianParams(sigma)
    except ValueError as exc:
        _die(exc)
    rng = np.random.default_rng(np.uint64(seed))
    pk, sk = pke.keygen(algebra, gp, rng)
    Path(out_pk).write_bytes(pack_elements([pk.a, pk.b]))
    Path(out_sk).write_bytes(pack_elements([sk.s]))
    click.echo(f"wrote {out_pk} and {out_sk} ({pke.message_bits(algebra)}-bit messages)")


@main.command()
@click.option("--pk", "pk_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--msg", "msg_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--sigma", type=float, required=True, help="Error width.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), required=True, help="Deterministic RNG seed.")
@click.option("--out", "out_file", type=click.Path(dir_okay=False), required=True)
def encrypt(pk_file, msg_file, sigma, seed, out_file):
    """Encrypt a packed-bit message file under a public key."""
    try:
        algebra, (a, b) = unpack_elements(Path(pk_file).read_bytes(), 2, pk_file)
        bits = unpack_message(
            Path(msg_file).read_bytes(), pke.message_bits(algebra), msg_file
        )
        gp = GaussianParams(sigma)
    except ValueError as exc:
        _die(exc)
    rng = np.random.default_rng(np.uint64(seed))
    ct = pke.encrypt(algebra, pke.PublicKey(a, b), bits, gp, rng)
    Path(out_file).write_bytes(pack_elements([ct.u, ct.v]))
    click.echo(f"wrote {out_file}")


@main.command()
@click.option("--sk", "sk_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--ct", "ct_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out", "out_file", type=click.Path(dir_okay=False), required=True)
def decrypt(sk_file, ct_file, out_file):
    """Decrypt a ciphertext file and write the packed-bit message."""
    try:
        algebra, (s,) = unpack_elements(Path(sk_file).read_bytes(), 1, sk_file)
        ct_algebra, (u, v) = unpack_elements(Path(ct_file).read_bytes(), 2, ct_file)
        if ct_algebra is not algebra:
            raise WireError(f"{ct_file}: parameters disagree with {sk_file}")
    except ValueError as exc:
        _die(exc)
    bits = pke.decrypt(algebra, pke.SecretKey(s), pke.Ciphertext(u, v))
    Path(out_file).write_bytes(pack_message(bits))
    click.echo(f"wrote {out_file}")


@main.command("failure-rate")
@click.option("--pack", "pack_source", required=True, help="Registry label or pack JSON file.")
@click.option("--sigma", type=float, required=True, help="Error width.")
@click.option("--trials", type=int, required=True, help="Monte Carlo trials, at least 100.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), required=True, help="Deterministic RNG seed.")
def failure_rate_cmd(pack_source, sigma, trials, seed):
    """Estimate the decryption failure rate over full round-trips."""
    try:
        _, algebra = _load_algebra_for_keys(pack_source)
        rate = pke.failure_rate(algebra, GaussianParams(sigma), trials, seed)
    except ValueError as exc:
        _die(exc)
    click.echo(f"failure rate {rate:.6f} ({round(rate * trials)}/{trials} trials)")


@main.command()
@click.option("--pack", "pack_source", required=True, help="Registry label or pack JSON file.")
@click.option("--reps", type=int, required=True, help="Products per timed path, at least 10.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True, help="Operand stream seed.")
def bench(pack_source, reps, seed):
    """Benchmark multiplication paths against ring/module baselines."""
    try:
        pack = load_pack(pack_source)
        report = full_bench(pack, reps, np.random.default_rng(np.uint64(seed)))
    except ValueError as exc:
        _die(exc)
    click.echo(report_table(report))
    click.echo(report_json(report))


def _selftest_checks():
    toy = _algebra(16, 2, 97, 1)
    quat = _algebra(1, 2, 5, 1)
    rng = np.random.default_rng(7)

    def mul_paths_agree():
        for alg in (toy, quat):
            for _ in range(50):
                x, y = uniform_a(alg, rng), uniform_a(alg, rng)
                assert alg.a_mul_blocks(x, y) == alg.a_mul_naive(x, y)

    def transpose_dual_route():
        for _ in range(10):
            x = uniform_a(toy, rng)
            lhs = CyclicAlgebra.phi_transpose(toy.phi(x))
            rhs = toy.dual.phi(toy.transpose_dual(x))
            assert toy.phi_eq(lhs, rhs)

    def inversion_round_trip():
        hits = 0
        while hits < 10:
            x = uniform_a(toy, rng)
            if not toy.is_invertible(x):
                continue
            hits += 1
            assert toy.a_mul_blocks(x, toy.invert(x)) == toy.one()

    def pke_round_trip():
        gp = GaussianParams(0.75)
        for trial in range(5):
            local = np.random.default_rng(trial)
            pk, sk = pke.keygen(toy, gp, local)
            bits = pke.random_message(toy, local)
            ct = pke.encrypt(toy, pk, bits, gp, local, check_transpose=True)
            assert (pke.decrypt(toy, sk, ct) == bits).all()

    def wire_round_trip():
        elems = [uniform_a(toy, rng) for _ in range(3)]
        alg2, back = unpack_elements(pack_elements(elems), 3, "selftest")
        assert alg2 is toy and all(p == q for p, q in zip(elems, back))
        bits = pke.random_message(toy, rng)
        assert (unpack_message(pack_message(bits), bits.size, "selftest") == bits).all()

    def registry_is_clean():
        for pack in registry():
            problems = validate(pack)
            assert not problems, f"{pack.label}: {problems}"

    def modulus_search_known_answer():
        assert 12289 in find_q_quadratic(512, 7681, 16384)
        assert find_q_naive(81, 163, 30000) == [26407]

    def sampler_tail_respected():
        gp = GaussianParams(3.0)
        draws = sample_z(gp, np.random.default_rng(3), 4000)
        assert int(np.abs(draws).max()) <= gp.support_bound
        assert abs(float(draws.mean())) < 0.5
        # width parameter convention: density exp(-pi x^2 / sigma^2), std sigma/sqrt(2 pi)
        assert abs(float(draws.std()) - 3.0 / math.sqrt(2 * math.pi)) < 0.2

    return [
        ("multiplication paths agree", mul_paths_agree),
        ("transpose dual route", transpose_dual_route),
        ("inversion round trip", inversion_round_trip),
        ("encrypt/decrypt round trip", pke_round_trip),
        ("wire round trip", wire_round_trip),
        ("registry validates", registry_is_clean),
        ("modulus search known answers", modulus_search_known_answer),
        ("gaussian tail respected", sampler_tail_respected),
    ]


@main.command()
def selftest():
    """Run the invariant suite on built-in toy parameters."""
    failed = 0
    for name, check in _selftest_checks():
        try:
            check()
        except Exception as exc:  # noqa: BLE001 - report and keep going
            failed += 1
            click.echo(f"FAIL {name}: {exc}", err=True)
            continue
        click.echo(f"ok   {name}")
    if failed:
        click.echo(f"error: {failed} selftest check(s) failed", err=True)
        sys.exit(1)
    click.echo("selftest passed")


if __name__ == "__main__":
    main()
