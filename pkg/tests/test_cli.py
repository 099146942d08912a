import json

import pytest

from kleenelab import data_path
from kleenelab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_decide_valid(capsys):
    code, out = run(capsys, "decide", "p & ~p |- q | ~q")
    assert code == 0 and out.startswith("VALID")


def test_decide_invalid_with_witness(capsys):
    code, out = run(capsys, "decide", "p |- q")
    assert code == 1
    assert "INVALID witness: p=t, q=f" in out


def test_decide_machine_output(capsys):
    code, out = run(capsys, "--machine", "decide", "p & ~p |- q")
    first = out.splitlines()[0]
    assert "kind=decide" in first and "valid=false" in first
    assert "kind=truth valid=true" in out


def test_flags_after_subcommand(capsys):
    _, a = run(capsys, "decide", "p |- p", "--machine")
    _, b = run(capsys, "--machine", "decide", "p |- p")
    assert a == b


def test_bad_formula_is_input_error(capsys):
    code = main(["decide", "p &"])
    assert code == 2
    assert "position" in capsys.readouterr().err


def test_check_proof(capsys, tmp_path):
    code, out = run(capsys, "check-proof", str(data_path("derivations", "contraposition.txt")))
    assert code == 0 and out.startswith("ACCEPTED")
    bad = tmp_path / "bad.txt"
    bad.write_text("1: q |- p ; ax1\n")
    code, out = run(capsys, "check-proof", str(bad))
    assert code == 1 and "REJECTED" in out


def test_algebra_verify(capsys):
    code, out = run(capsys, "algebra", "verify", str(data_path("algebras", "three.json")))
    assert code == 0 and "Kleene algebra" in out
    code, out = run(capsys, "algebra", "verify", str(data_path("algebras", "de_morgan_four.json")))
    assert code == 1 and "kleene: FAIL (n,b)" in out


def test_missing_file_is_input_error(capsys, tmp_path):
    assert main(["algebra", "verify", str(tmp_path / "nope.json")]) == 2


def test_represent_writes_tables(capsys, tmp_path):
    code, out = run(capsys, "represent", str(data_path("algebras", "three_squared.json")), "--out", str(tmp_path))
    assert code == 0
    assert "reload check: pass" in out
    assert {p.stem for p in tmp_path.glob("*.json")} == {"algebra", "boolean", "embedding", "base_space",
                                                         "space", "map"}
    assert len(json.loads((tmp_path / "map.json").read_text())) == 9


def test_represent_respects_size_bound(capsys):
    assert main(["--max-size", "2", "represent", str(data_path("algebras", "three_squared.json"))]) == 2


def test_rough_approx(capsys):
    code, out = run(capsys, "rough", "approx", str(data_path("spaces", "two_blocks.json")), "{1,3}")
    assert code == 0
    assert "lower: {3}" in out and "upper: {1,2,3}" in out


def test_frames_file(capsys):
    code, out = run(capsys, "frames", str(data_path("frames", "non_kleene.json")))
    assert code == 0
    assert "kleene: false (witness: x,y)" in out


def test_frames_enumerate(capsys):
    code, out = run(capsys, "frames", "--enumerate", "2")
    assert code == 0
    assert out.splitlines()[-1] == "18 frames, 3 Kleene frames, 0 condition/validity mismatches"


def test_fuzz_is_reproducible(capsys):
    code, a = run(capsys, "--seed", "5", "fuzz", "--formulas", "10", "--depth", "3")
    _, b = run(capsys, "fuzz", "--formulas", "10", "--depth", "3", "--seed", "5")
    assert code == 0 and a == b and "agreement: 10/10" in a


def test_fuzz_mutant_fails(capsys):
    code, out = run(capsys, "fuzz", "--formulas", "30", "--depth", "4", "--mutant")
    assert code == 1 and "DISAGREEMENT" in out
