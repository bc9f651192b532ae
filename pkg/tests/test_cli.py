import json

import pytest

from kahlermaps.cli import main
from kahlermaps.config import ConfigError, load_config, parse_config_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    assert {r["name"] for r in data["results"]} >= {"flat", "lebrun", "eguchi_hanson"}


def test_verify_hyperbolic(capsys):
    code, out, _ = run(capsys, "verify", "--potential", "hyperbolic", "--target", "flat", "--points", "100")
    data = json.loads(out)
    assert code == 0
    assert data["results"][0]["max_residual"] <= 1e-8
    assert data["seed"] == 42 and data["config"]["seed"] == 42
    assert "cond0" in data["condition_refs"] and "tool_version" in data


def test_lebrun_zero(capsys):
    code, out, _ = run(capsys, "lebrun", "--m", "0", "--points", "20")
    data = json.loads(out)
    assert code == 0
    assert all(r.get("max_residual", 0.0) <= 1e-12 for r in data["results"])


def test_classify_eguchi_hanson(capsys):
    code, out, _ = run(capsys, "classify", "--potential", "eguchi_hanson", "--domain", "punctured", "--target", "fs")
    data = json.loads(out)
    verdict = [r for r in data["results"] if r["check"] == "verdict"][0]
    assert code == 1
    assert verdict["verdict"] == "no_special_immersion" and verdict["witness"]


def test_calabi_exit_codes(capsys):
    assert run(capsys, "calabi", "--potential", "hyperbolic", "--kind", "hyperbolic")[0] == 0
    assert run(capsys, "calabi", "--potential", "fubini_study", "--kind", "flat")[0] == 1


def test_probe_single_ray(capsys):
    code, out, _ = run(capsys, "probe", "--potential", "reinhardt_rational", "--ray", "3")
    data = json.loads(out)
    assert code == 0 and len(data["results"]) == 1 and data["results"][0]["flat"] == "bounded"
    assert run(capsys, "probe", "--potential", "flat", "--ray", "99")[0] == 2
    code, out, _ = run(capsys, "probe", "--potential", "reinhardt_rational", "--ray", "edge_eps=0.5")
    assert code == 0 and json.loads(out)["results"][0]["ray"] == "edge_eps=0.5"
    code, out, _ = run(capsys, "probe", "--potential", "lebrun", "--format", "text")
    assert code == 0 and "gencondb[diagonal_to_infinity]: pass flat=diverges" in out


def test_usage_and_numerical_codes(capsys):
    code, _, err = run(capsys, "verify", "--potential", "x1 + + x2", "--target", "flat")
    assert code == 2 and "offset 5" in err
    assert run(capsys, "verify", "--potential", "flat")[0] == 2
    assert run(capsys, "verify", "--potential", "flat", "--target", "fs")[0] == 3
    assert run(capsys, "nonsense")[0] == 2


def test_emit_samples_csv(capsys):
    code, out, _ = run(capsys, "emit-samples", "--potential", "hyperbolic", "--quantity", "moment_sum", "--grid", "0:0.4:3")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "x1,x2,moment_sum" and len(lines) == 10
    x1, x2, s = (float(v) for v in lines[-1].split(","))
    assert s == pytest.approx((x1 + x2) / (1 - x1 - x2), rel=1e-15)
    assert lines[-1].split(",")[-1] == "%.17g" % s


def test_text_and_csv_formats(capsys):
    code, out, _ = run(capsys, "verify", "--potential", "flat", "--target", "flat", "--format", "text", "--points", "5")
    assert code == 0 and "pullback[flat]: pass" in out
    code, out, _ = run(capsys, "verify", "--potential", "flat", "--target", "flat", "--format", "csv", "--points", "5")
    assert out.splitlines()[0] == "check,status,max_residual,tolerance,witness"


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nseed = 9\npoints = 4\npullback-tol = 1e-7\n")
    code, out, _ = run(capsys, "verify", "--potential", "flat", "--target", "flat", "--config", str(cfg), "--points", "3")
    data = json.loads(out)
    assert data["seed"] == 9 and data["results"][0]["n_points"] == 3 and data["config"]["pullback_tol"] == 1e-7


def test_config_validation(tmp_path):
    with pytest.raises(ConfigError):
        parse_config_text("bogus = 1")
    with pytest.raises(ConfigError):
        parse_config_text("seed 3")
    with pytest.raises(ConfigError):
        load_config(None, {"pullback_tol": -1.0})
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.cfg"))


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    assert run(capsys, "catalog", "--out", str(target))[1] == ""
    assert json.loads(target.read_text())["command"] == "catalog"
