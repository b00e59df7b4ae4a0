import json

import pytest

from quadcurves import formats
from quadcurves.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_canonical(tmp_path, capsys):
    out = tmp_path / "h.json"
    code, stdout, _ = run(["construct", "--family", "hermite", "--n", "1", "--beta", "0",
                           "--gamma", "0", "--out", str(out)], capsys)
    assert code == 0
    assert "y' = -x*y + y^2 + 2" in stdout
    kinds = [d.kind for d in formats.decode_any(out.read_text())]
    assert kinds == ["system", "curve", "certificate"]


def test_construct_literal_fails(capsys):
    code, _, err = run(["construct", "--family", "hermite", "--n", "1", "--literal"], capsys)
    assert code == 1
    assert "2*x" in err


def test_verify_perturbed_curve(tmp_path, capsys):
    out = tmp_path / "h.json"
    assert main(["construct", "--family", "hermite", "--n", "2", "--out", str(out)]) == 0
    capsys.readouterr()
    assert run(["verify", "--curve", str(out)], capsys)[0] == 0
    docs = json.loads(out.read_text())
    docs[1]["payload"]["g"]["0,0"] = "7/1"
    out.write_text(json.dumps(docs))
    code, _, err = run(["verify", "--curve", str(out)], capsys)
    assert code == 1
    assert "residual" in err


def test_usage_errors(tmp_path, capsys):
    assert run(["construct", "--bogus"], capsys)[0] == 2
    assert run(["nope"], capsys)[0] == 2
    assert run(["verify", "--curve", str(tmp_path / "missing.json")], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": 1, "kind": "curve", "payload": {"g": {"0,0": "3/0"}}}')
    assert run(["verify", "--curve", str(bad)], capsys)[0] == 2
    assert run(["darboux", "--a", "-4", "--b", "5/2", "--c", "1/3"], capsys)[0] == 2


def test_audit_exit_codes(capsys):
    assert run(["audit", "--family", "laguerre", "--A", "2", "--n-max", "3"], capsys)[0] == 0
    code, stdout, _ = run(["audit", "--family", "hermite", "--n-max", "2"], capsys)
    assert code == 1
    assert "q20" in stdout


def test_darboux_cll(capsys):
    code, stdout, err = run(["darboux", "--cll", "--a", "-4", "--b", "5/2", "--c", "1/3"], capsys)
    assert code == 0
    assert "-2/3, 0, 1, -1" in err
    assert formats.decode(stdout).kind == "darboux-set"


def test_drift_both_is_deterministic(capsys):
    argv = ["drift", "--cll", "--a", "-2", "--b=-5/3", "--c", "1/3", "--variant", "both", "--tol", "1e-5"]
    first = run(argv, capsys)
    second = run(argv, capsys)
    assert first == second
    assert "passing variant:" in first[2]


def test_levels_and_trajectory(tmp_path, capsys):
    out = tmp_path / "h.json"
    main(["construct", "--family", "hermite", "--n", "1", "--out", str(out)])
    capsys.readouterr()
    code, stdout, _ = run(["levels", "--curve", str(out), "--grid", "2", "2"], capsys)
    assert code == 0
    assert stdout.splitlines()[0] == "x,y,f"
    assert len(stdout.splitlines()) == 5
    code, stdout, err = run(["trajectory", "--system", str(out), "--x0", "0.5", "--y0", "0",
                             "--T", "0.01"], capsys)
    assert code == 0
    assert stdout.startswith("t,x,y")
    assert "terminated: completed" in err


def test_drift_writes_seed_csvs(tmp_path, capsys):
    prefix = tmp_path / "seed.csv"
    code, _, _ = run(["drift", "--cll", "--a", "-4", "--b", "5/2", "--c", "1/3", "--T", "0.05",
                      "--out", str(prefix)], capsys)
    assert code in (0, 1)
    assert (tmp_path / "seed-0.csv").exists()
    assert (tmp_path / "seed-11.csv").read_text().startswith("t,x,y,F")
