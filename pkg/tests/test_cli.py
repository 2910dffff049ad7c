import json

import pytest

from revgcd.cli import main


def test_simulate(capsys):
    assert main(["simulate", "--n", "5", "--a", "12", "--b", "18"]) == 0
    out = capsys.readouterr().out
    assert "gcd_out=6" in out and "ancillae_clear=True" in out


def test_verify_exhaustive(capsys):
    assert main(["verify", "--n", "3", "--exhaustive"]) == 0
    assert "pairs=64 ok" in capsys.readouterr().out


def test_verify_random(capsys):
    assert main(["verify", "--n", "7", "--random", "50"]) == 0
    assert "pairs=50 ok" in capsys.readouterr().out


def test_verify_above_cap_is_usage_error(capsys):
    assert main(["verify", "--n", "6"]) == 2
    assert "capped" in capsys.readouterr().err


def test_analyze_match_and_mismatch(capsys):
    assert main(["analyze", "--block", "conditional-shift", "--n", "8"]) == 0
    assert "result: match" in capsys.readouterr().out
    assert main(["analyze", "--block", "conditional-subtraction", "--n", "8"]) == 1
    assert "MISMATCH" in capsys.readouterr().out


def test_analyze_block_without_formula(capsys):
    assert main(["analyze", "--block", "is-nonzero", "--n", "8"]) == 0
    assert "toffoli=" in capsys.readouterr().out


def test_synth_and_export(tmp_path, capsys):
    path = tmp_path / "g.json"
    assert main(["synth", "--n", "3", "--out", str(path), "--format", "json"]) == 0
    data = json.loads(path.read_text())
    assert set(data["registers"]) >= {"A", "B", "R", "OUT", "flags", "W"}
    capsys.readouterr()
    assert main(["export", "--in", str(path), "--format", "qasm2"]) == 0
    assert capsys.readouterr().out.startswith("OPENQASM 2.0;")
    qasm = tmp_path / "g.qasm"
    assert main(["synth", "--n", "3", "--steps", "2", "--no-zero-b-fix", "--out", str(qasm), "--format", "qasm2"]) == 0
    assert qasm.read_text().startswith("OPENQASM 2.0;")


def test_scaling(capsys):
    assert main(["scaling", "--max-n", "8"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("n,") and lines[1].startswith("8,")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["synth"])
    assert exc.value.code == 2
    assert main(["simulate", "--n", "1", "--a", "0", "--b", "0"]) == 2
    assert main(["export", "--in", "/nonexistent/x.json", "--format", "json"]) == 2
