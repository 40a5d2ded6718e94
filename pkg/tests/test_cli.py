"""Command line behavior: output conventions, wire format, determinism."""

import json

import numpy as np
import pytest
from click.testing import CliRunner

from clwe import pke
from clwe.cli import (
    WIRE_VERSION,
    load_pack,
    main,
    pack_elements,
    pack_message,
    unpack_elements,
    unpack_message,
)
from clwe.params_registry import build_algebra, registry, to_json_text
from clwe.sampler import uniform_a


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, args):
    return runner.invoke(main, args, catch_exceptions=False)


# wire format, below the command layer


def test_element_file_layout():
    algebra = build_algebra(load_pack("m1-d2-q5"))
    x = algebra.from_coeffs(np.arange(4).reshape(2, 2, 1))
    data = pack_elements([x])
    assert data[:4] == b"CLWE"
    assert data[4] == WIRE_VERSION
    # m=1, d=2, q=5 little-endian u32s, then coefficients 0,1,2,3
    assert data[5:17] == bytes.fromhex("01000000 02000000 05000000".replace(" ", ""))
    assert data[17:] == bytes.fromhex("00000000 01000000 02000000 03000000".replace(" ", ""))


def test_element_round_trip_preserves_coeff_order():
    algebra = build_algebra(load_pack("m16-d2-q97"))
    rng = np.random.default_rng(0)
    elems = [uniform_a(algebra, rng) for _ in range(2)]
    back_alg, back = unpack_elements(pack_elements(elems), 2, "buf")
    assert back_alg is algebra
    assert all(p == q for p, q in zip(elems, back))


@pytest.mark.parametrize(
    "mangle,msg",
    [
        (lambda b: b"XLWE" + b[4:], "not a CLWE element file"),
        (lambda b: b[:4] + bytes([9]) + b[5:], "unsupported format version"),
        (lambda b: b[:-4], "expected"),
        (lambda b: b[:-3], "truncated"),
        (lambda b: b[:-4] + (97).to_bytes(4, "little"), "out of range"),
    ],
)
def test_element_file_rejects_corruption(mangle, msg):
    algebra = build_algebra(load_pack("m16-d2-q97"))
    data = pack_elements([uniform_a(algebra, np.random.default_rng(1))])
    with pytest.raises(ValueError, match=msg):
        unpack_elements(mangle(data), 1, "buf")


def test_message_bits_pack_little_endian():
    bits = np.array([1, 0, 1, 1, 0, 0, 0, 0, 1], dtype=np.int64)
    data = pack_message(bits)
    # first byte 0b00001101 = 13, second byte bit0 set
    assert data == bytes([13, 1])
    assert (unpack_message(data, 9, "buf") == bits).all()


def test_message_rejects_bad_length_and_padding():
    with pytest.raises(ValueError, match="expected 2 bytes"):
        unpack_message(b"\x00", 9, "buf")
    with pytest.raises(ValueError, match="padding"):
        unpack_message(bytes([13, 2]), 9, "buf")  # bit 9 set


def test_load_pack_rejects_unknown_source():
    with pytest.raises(ValueError, match="neither a registry label nor a pack file"):
        load_pack("m999-d9-q17")


# params subcommands


def test_params_list_covers_registry(runner):
    result = run(runner, ["params", "list"])
    assert result.exit_code == 0
    for pack in registry():
        assert pack.label in result.output


def test_params_list_json_round_trips(runner):
    result = run(runner, ["params", "list", "--json"])
    packs = json.loads(result.output)
    assert len(packs) == len(registry())
    assert {p["m"] for p in packs} == {p.m for p in registry()}


def test_params_validate_accepts_registry_pack(runner, tmp_path):
    path = tmp_path / "pack.json"
    path.write_text(to_json_text(load_pack("m512-d2-q12289")))
    result = run(runner, ["params", "validate", str(path)])
    assert result.exit_code == 0
    assert "ok" in result.output


def test_params_validate_rejects_bad_modulus(runner, tmp_path):
    pack = json.loads(to_json_text(load_pack("m16-d2-q97")))
    pack["q"] = 91  # 7 * 13
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(pack))
    result = run(runner, ["params", "validate", str(path)])
    assert result.exit_code == 1
    assert "91" in result.stderr


def test_params_validate_rejects_malformed_json(runner, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text('{"m": 16}')
    result = run(runner, ["params", "validate", str(path)])
    assert result.exit_code == 1
    assert "error:" in result.stderr


def test_find_q_quadratic_prints_working_modulus(runner):
    result = run(
        runner,
        ["params", "find-q", "--m", "512", "--qprime", "7681", "--mode", "quadratic", "--max", "16384"],
    )
    assert result.exit_code == 0
    printed = [int(line) for line in result.output.split()]
    assert 12289 in printed
    assert printed == [10753, 11777, 12289, 13313, 15361]


def test_find_q_naive_golden(runner):
    result = run(
        runner,
        ["params", "find-q", "--m", "81", "--qprime", "163", "--mode", "naive", "--max", "60000"],
    )
    assert [int(line) for line in result.output.split()] == [26407, 52813]


def test_find_q_empty_result_is_an_error(runner):
    result = run(
        runner,
        ["params", "find-q", "--m", "512", "--qprime", "7681", "--mode", "naive", "--max", "100000"],
    )
    assert result.exit_code == 1
    assert "no candidates" in result.stderr


# keygen / encrypt / decrypt plumbing


def _write_message(path, algebra, rng):
    bits = pke.random_message(algebra, rng)
    path.write_bytes(pack_message(bits))
    return bits


def test_keygen_is_deterministic_under_seed(runner, tmp_path):
    files = {}
    for tag, seed in (("a", 7), ("b", 7), ("c", 8)):
        pk, sk = tmp_path / f"pk{tag}", tmp_path / f"sk{tag}"
        result = run(
            runner,
            ["keygen", "--pack", "m16-d2-q97", "--sigma", "0.75", "--seed", str(seed),
             "--out-pk", str(pk), "--out-sk", str(sk)],
        )
        assert result.exit_code == 0
        files[tag] = (pk.read_bytes(), sk.read_bytes())
    assert files["a"] == files["b"]
    assert files["a"] != files["c"]


def test_cli_round_trip_and_ciphertext_determinism(runner, tmp_path):
    algebra = build_algebra(load_pack("m16-d2-q97"))
    pk, sk = tmp_path / "pk", tmp_path / "sk"
    run(runner, ["keygen", "--pack", "m16-d2-q97", "--sigma", "0.75", "--seed", "3",
                 "--out-pk", str(pk), "--out-sk", str(sk)])
    msg = tmp_path / "msg"
    bits = _write_message(msg, algebra, np.random.default_rng(41))

    cts = []
    for tag in ("one", "two"):
        ct = tmp_path / f"ct-{tag}"
        result = run(runner, ["encrypt", "--pk", str(pk), "--msg", str(msg),
                              "--sigma", "0.75", "--seed", "9", "--out", str(ct)])
        assert result.exit_code == 0
        cts.append(ct.read_bytes())
    assert cts[0] == cts[1]

    out = tmp_path / "out"
    result = run(runner, ["decrypt", "--sk", str(sk), "--ct", str(tmp_path / "ct-one"),
                          "--out", str(out)])
    assert result.exit_code == 0
    assert out.read_bytes() == pack_message(bits)


def test_decrypt_rejects_mismatched_key_and_ciphertext(runner, tmp_path):
    for label, tag in (("m16-d2-q97", "big"), ("m1-d2-q5", "small")):
        run(runner, ["keygen", "--pack", label, "--sigma", "0.5", "--seed", "1",
                     "--out-pk", str(tmp_path / f"pk-{tag}"), "--out-sk", str(tmp_path / f"sk-{tag}")])
    algebra = build_algebra(load_pack("m16-d2-q97"))
    msg = tmp_path / "msg"
    _write_message(msg, algebra, np.random.default_rng(2))
    ct = tmp_path / "ct"
    run(runner, ["encrypt", "--pk", str(tmp_path / "pk-big"), "--msg", str(msg),
                 "--sigma", "0.5", "--seed", "2", "--out", str(ct)])
    result = run(runner, ["decrypt", "--sk", str(tmp_path / "sk-small"), "--ct", str(ct),
                          "--out", str(tmp_path / "out")])
    assert result.exit_code == 1
    assert "disagree" in result.stderr


def test_encrypt_rejects_wrong_message_length(runner, tmp_path):
    pk, sk = tmp_path / "pk", tmp_path / "sk"
    run(runner, ["keygen", "--pack", "m16-d2-q97", "--sigma", "0.5", "--seed", "1",
                 "--out-pk", str(pk), "--out-sk", str(sk)])
    short = tmp_path / "short"
    short.write_bytes(b"\x00\x01")  # 32-bit messages need 4 bytes
    result = run(runner, ["encrypt", "--pk", str(pk), "--msg", str(short),
                          "--sigma", "0.5", "--seed", "1", "--out", str(tmp_path / "ct")])
    assert result.exit_code == 1
    assert "expected 4 bytes" in result.stderr


def test_keygen_rejects_negative_sigma_and_odd_gamma(runner, tmp_path):
    result = run(runner, ["keygen", "--pack", "m16-d2-q97", "--sigma", "-1", "--seed", "0",
                          "--out-pk", str(tmp_path / "pk"), "--out-sk", str(tmp_path / "sk")])
    assert result.exit_code == 1
    assert "sigma" in result.stderr

    pack = json.loads(to_json_text(load_pack("m16-d2-q97")))
    pack["gamma_exponent"] = 3  # valid pack, but outside what key files can carry
    path = tmp_path / "g3.json"
    path.write_text(json.dumps(pack))
    result = run(runner, ["keygen", "--pack", str(path), "--sigma", "0.5", "--seed", "0",
                          "--out-pk", str(tmp_path / "pk"), "--out-sk", str(tmp_path / "sk")])
    assert result.exit_code == 1
    assert "gamma" in result.stderr


# measurement commands


def test_failure_rate_command(runner):
    result = run(runner, ["failure-rate", "--pack", "m16-d2-q97", "--sigma", "0.75",
                          "--trials", "100", "--seed", "5"])
    assert result.exit_code == 0
    assert "failure rate 0.000000 (0/100 trials)" in result.output


def test_failure_rate_rejects_small_trial_count(runner):
    result = run(runner, ["failure-rate", "--pack", "m16-d2-q97", "--sigma", "0.75",
                          "--trials", "50", "--seed", "5"])
    assert result.exit_code == 1
    assert "100" in result.stderr


def test_bench_command_emits_table_and_json(runner):
    result = run(runner, ["bench", "--pack", "m16-d2-q97", "--reps", "10"])
    assert result.exit_code == 0
    assert "crt_block" in result.output
    doc = json.loads(result.output[result.output.index("{"):])
    assert doc["paths"]["naive_phi"]["k_muls"] == 8
    assert doc["paths"]["crt_block"]["k_muls"] == 4


def test_bench_rejects_compositum_pack(runner):
    result = run(runner, ["bench", "--pack", "m192-d3-q193", "--reps", "10"])
    assert result.exit_code == 1
    assert "error:" in result.stderr


def test_selftest_passes(runner):
    result = run(runner, ["selftest"])
    assert result.exit_code == 0
    assert "selftest passed" in result.output
