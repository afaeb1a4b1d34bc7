import csv
import io
import json
import shutil
from importlib import resources

import pytest

from prismgroups import __version__
from prismgroups.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def fixture_copy(tmp_path):
    src = resources.files("prismgroups.fixtures")
    for name in ("blv", "generators", "monster"):
        with resources.as_file(src / f"{name}.poly") as f:
            shutil.copy(f, tmp_path / f"{name}.poly")
    return tmp_path


def corrupt_psi(dir):
    path = dir / "blv.poly"
    lines = path.read_text().splitlines()
    i = lines.index("vars a b c d") + 1
    coef, rest = lines[i].split(" ", 1)
    lines[i] = f"{int(coef) - 1} {rest}"
    path.write_text("\n".join(lines) + "\n")


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["prism"])
    assert exc.value.code == 2


def test_verify_fast(capsys):
    code, out, _ = run(capsys, "verify", "--fast", "--suite", "core")
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert rep["header"]["version"] == __version__
    assert rep["header"]["config"]["suite"] == "core"
    assert {c["status"] for c in rep["checks"]} == {"PASS"}


def test_verify_writes_file(capsys, tmp_path):
    out = tmp_path / "rep.json"
    code, _, err = run(capsys, "verify", "--fast", "--suite", "monster", "--out", str(out))
    assert code == 0
    assert "PASS  monster  A_B_positive" in err
    assert json.loads(out.read_text())["passed"]


def test_verify_negative_control(capsys, fixture_copy):
    corrupt_psi(fixture_copy)
    code, out, _ = run(capsys, "--fixtures", str(fixture_copy), "verify", "--fast", "--suite", "blv")
    rep = json.loads(out)
    assert code == 1 and not rep["passed"]
    status = {c["name"]: c["status"] for c in rep["checks"]}
    assert status["trace_identity"] == "FAIL"


def test_intact_fixture_copy_passes(capsys, fixture_copy):
    code, _, _ = run(capsys, "--fixtures", str(fixture_copy), "verify", "--fast", "--suite", "blv")
    assert code == 0


def test_missing_fixture(capsys, tmp_path):
    code, _, err = run(capsys, "--fixtures", str(tmp_path), "verify", "--fast", "--suite", "blv")
    assert code == 2
    assert "missing fixture" in err


def test_prism_report(capsys):
    code, out, _ = run(capsys, "prism", "--r", "1", "--s", "1", "--t", "1")
    rep = json.loads(out)
    assert code == 0
    assert rep["lambda"] == "-1/2"
    assert rep["classification"] == "repelling"
    assert rep["first_invariant"]["raw"] == "-1/8"
    assert rep["partner_invariant"]["raw"] == f"-{9825 ** 3}/{5602 ** 3}"
    assert rep["swap_verified"] is True


def test_prism_neutral(capsys):
    code, out, _ = run(capsys, "prism", "--r", "2", "--s", "1", "--t", "1/3")
    rep = json.loads(out)
    assert rep["classification"] == "neutral" and rep["partner_invariant"] is None


def test_prism_needs_t(capsys):
    code, _, err = run(capsys, "prism", "--r", "1", "--s", "1")
    assert code == 2 and "--t" in err


def test_dynamics_csv_and_trace(capsys, tmp_path):
    trace = tmp_path / "trace.jsonl"
    code, out, _ = run(capsys, "dynamics", "--steps", "2", "--trace", str(trace))
    assert code == 0
    head, body = out.split("\n", 1)
    assert head.startswith("# ") and json.loads(head[2:])["config"]["d"] == "1/2"
    rows = list(csv.reader(io.StringIO(body)))
    assert rows[0] == ["step", "r", "s", "t", "residual"]
    assert len(rows) == 4
    assert rows[2][1].startswith("0.1261985786")
    lines = trace.read_text().splitlines()
    assert json.loads(lines[0])["tool"] == "prismgroups"
    first = json.loads(lines[1])
    assert first["chi"] == "-0.015625"
    assert first["exact_values"]["chi"] == "-1/64" and first["exact_values"]["t_new"] == "-3074036596/2679685395"


def test_dynamics_rejects_bad_shear(capsys):
    code, _, err = run(capsys, "dynamics", "--d", "0")
    assert code == 2


def test_curve(capsys):
    code, out, _ = run(capsys, "curve", "--c", "1/3", "--d=-1/4", "--samples", "4", "--prec", "64")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("# ")
    assert lines[1] == "b,a" and len(lines) == 6


def test_orbit_json_and_svg(capsys):
    code, out, _ = run(capsys, "orbit", "--depth", "2")
    doc = json.loads(out)
    assert code == 0 and len(doc["boxes"]) == 1 + 3 + 8
    assert doc["boxes"][0]["word"] == ""
    code, out, _ = run(capsys, "orbit", "--depth", "1", "--format", "svg", "--c", "1/4")
    assert code == 0 and out.startswith("<!-- ") and "<svg" in out


def test_orbit_depth_limit(capsys):
    code, _, err = run(capsys, "orbit", "--depth", "9")
    assert code == 2 and "depth" in err
