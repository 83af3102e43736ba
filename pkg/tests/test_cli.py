import json
import subprocess
import sys

import pytest

from sgon import cli, io


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_lattice_rect_lambda2(capsys):
    rep = run_json(capsys, "lattice-rect", "fixture:lambda2")
    res = rep["result"]
    assert res["index"] == "3"
    assert res["columns_in_lattice"] is True
    assert len(res["diagonal"]) == 2
    assert rep["command"] == "lattice-rect" and rep["provenance"]


def test_tau_vr_example(capsys, tmp_path):
    path = tmp_path / "tau.json"
    path.write_text(json.dumps({"D": 2, "a": ["0", "1/2"], "b": ["0", "1/2"]}))
    res = run_json(capsys, "tau-vr", str(path))["result"]
    assert res["kind"] == "IrrationalA"
    assert res["t"] == ["1", "1"]
    assert res["delta"] == "2"


def test_tau_jinv_at_i(capsys):
    res = run_json(capsys, "tau-jinv", "fixture:tau_i", "--terms", "10", "--precision", "20")["result"]
    assert abs(float(res["re"]) - 1728) < 1e-9
    assert abs(float(res["im"])) < 1e-9
    assert res["region"]["segment"] == "ImaginaryAxis"


def test_not_vr_is_success(capsys):
    res = run_json(capsys, "tau-vr", "fixture:tau_sqrt2_plus_i")["result"]
    assert res["kind"] == "NotVR" and res["discriminant"] == "12"
    res = run_json(capsys, "tau-isogeny", "fixture:tau_sqrt2_plus_i")["result"]
    assert res["isogeny"] is None


@pytest.mark.parametrize("command,extra", [
    ("lattice-analyze", []), ("lattice-sparse", ["--k", "2"]), ("lattice-slevels", ["--box", "3"]),
    ("lattice-minima", ["--k", "1", "--radius", "4"]),
])
def test_lattice_commands_on_example(capsys, command, extra):
    rep = run_json(capsys, command, "fixture:a_matrix", *extra)
    assert rep["input"] == "fixture:a_matrix"
    if command == "lattice-analyze":
        assert rep["result"]["decomposition"]["total"] == 7
        assert rep["result"]["F_bounded_by_mu_A"] is True
    if command == "lattice-sparse":
        assert all(rep["result"]["verified"]) and len(rep["result"]["reports"]) == 2
    if command == "lattice-slevels":
        assert rep["result"]["levels"] == [1, 3, 3]


@pytest.mark.parametrize("command", ["tau-reduce", "tau-geodesic", "tau-cm", "tau-isogeny"])
def test_tau_commands(capsys, command):
    rep = run_json(capsys, command, "fixture:tau_sqrt2_half")
    assert rep["result"]


def test_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "lattice-analyze", "fixture:a_matrix", "--format", "json")
    _, second, _ = run(capsys, "lattice-analyze", "fixture:a_matrix", "--format", "json")
    assert first == second
    assert io.dumps(json.loads(first)) == first


def test_text_and_json_agree(capsys):
    rep = run_json(capsys, "lattice-rect", "fixture:lambda2")
    code, text, _ = run(capsys, "lattice-rect", "fixture:lambda2")
    assert code == 0
    lines = dict(line.split(": ", 1) for line in text.splitlines())
    assert lines["result.index"] == rep["result"]["index"]
    assert lines["result.det_F"] == rep["result"]["det_F"]
    assert lines["result.diagonal"] == "[" + ", ".join(rep["result"]["diagonal"]) + "]"


def test_precision_env_override(capsys, monkeypatch):
    monkeypatch.setenv("SGON_PRECISION", "24")
    assert run_json(capsys, "tau-reduce", "fixture:tau_i")["precision"] == 24
    assert run_json(capsys, "tau-reduce", "fixture:tau_i", "--precision", "30")["precision"] == 30
    monkeypatch.setenv("SGON_PRECISION", "8")
    assert run(capsys, "tau-reduce", "fixture:tau_i")[0] == 1


def test_input_errors_exit_1(capsys, tmp_path):
    assert run(capsys, "lattice-analyze", str(tmp_path / "missing.json"))[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2,\n  "matrix": [}\n')
    code, _, err = run(capsys, "lattice-analyze", str(bad))
    assert code == 1 and "line 2" in err and "column" in err
    short = tmp_path / "short.json"
    obj = json.loads(io.fixture_path("lambda2").read_text())
    obj["matrix"][0] = obj["matrix"][0][:1]
    short.write_text(json.dumps(obj))
    code, _, err = run(capsys, "lattice-analyze", str(short))
    assert code == 1 and "SchemaError" in err
    assert run(capsys, "lattice-sparse", "fixture:lambda2", "--k", "2")[0] == 1
    assert run(capsys, "tau-jinv", "fixture:tau_i", "--terms", "21")[0] == 1
    assert run(capsys, "no-such-command")[0] == 1
    assert run(capsys, "lattice-rect")[0] == 1


def test_domain_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "lattice-rect", "fixture:lambda1")[0] == 2
    assert run(capsys, "tau-jinv", "fixture:tau_rho", "--terms", "5")[0] == 2
    sing = tmp_path / "sing.json"
    sing.write_text(json.dumps({"n": 2, "symbols": [{"name": "1", "approx": "1.0"}],
                                "matrix": [[["1"], ["2"]], [["2"], ["4"]]]}))
    code, _, err = run(capsys, "lattice-analyze", str(sing))
    assert code == 2 and "SingularBasis" in err
    lower = tmp_path / "lower.json"
    lower.write_text(json.dumps({"D": 1, "a": ["0", "0"], "b": ["-1", "0"]}))
    assert run(capsys, "tau-reduce", str(lower))[0] == 2


def test_invariant_violation_exit_3(capsys, monkeypatch):
    from sgon import planar

    def broken(tau):
        raise planar.CertificateInvalid("forced")

    monkeypatch.setattr(planar, "vr_decide", broken)
    assert run(capsys, "tau-vr", "fixture:tau_sqrt2_half")[0] == 3


def test_verify_suite_quick(capsys):
    rep = run_json(capsys, "verify-suite", "--quick", "--seed", "3")
    assert rep["result"]["ok"] is True
    assert {b["name"] for b in rep["result"]["batteries"]} >= {"elliptic_vs_geodesic", "cm_behaviour"}


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sgon.cli", "tau-vr", "fixture:tau_half_plus_i"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "result.kind: RationalA" in proc.stdout
