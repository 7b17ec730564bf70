import json
import math

import pytest

from sectorexp.cli import main

Q = "0.7853982"
R2 = "0.7071068"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--alpha1", Q, "--alpha2", Q, "--theta1", "0", "--theta2", "0",
                       "--a1p", R2, "--a1m", R2, "--a2p", R2, "--a2m", R2)
    assert code == 0
    data = json.loads(out)
    assert data["C1"] == pytest.approx(1.0, abs=1e-6) and data["C2"] == pytest.approx(1.0, abs=1e-6)


def test_bound_theta_at_edge(capsys):
    code, out, _ = run(capsys, "bound", "--alpha1", Q, "--alpha2", Q, "--theta1", Q, "--theta2", "0",
                       "--a1p", "0.3", "--a1m", R2, "--a2p", R2, "--a2m", R2)
    assert json.loads(out)["C1"] == pytest.approx(0.3, rel=1e-12)


def test_bound_bad_angle(capsys):
    code, _, err = run(capsys, "bound", "--alpha1", "2.0", "--alpha2", Q, "--theta1", "0", "--theta2", "0",
                       "--a1p", R2, "--a1m", R2, "--a2p", R2, "--a2m", R2)
    assert code == 2 and "alpha" in err


def test_transform(capsys):
    code, out, _ = run(capsys, "transform", "--function", "exp:1,0,1,0", "--omega1", "-3,0", "--omega2", "-3,0")
    assert code == 0
    data = json.loads(out)
    assert data["value"]["re"] == pytest.approx(-1 / (16 * math.pi ** 2), rel=1e-9)
    assert data["branch"] == [1, 1]


def test_transform_domain_error(capsys):
    code, _, _ = run(capsys, "transform", "--omega1", "0,0", "--omega2", "-3,0")
    assert code == 2


def test_invert(capsys):
    code, out, _ = run(capsys, "invert", "--function", "exp:1,0,1,0", "--z1", "1,0", "--z2", "1,0")
    data = json.loads(out)
    assert code == 0
    assert data["value"]["re"] == pytest.approx(math.e ** 2, rel=1e-9)
    assert data["contours"]["kind"] == "gamma"


def test_member(capsys):
    code, out, _ = run(capsys, "member", "--function", "exp:1,0,1,0", "--theta1", "0", "--theta2", "0",
                       "--nu1", "1", "--nu2", "1")
    assert code == 0 and json.loads(out)["accepted"] is True


def test_indicator(capsys):
    code, out, _ = run(capsys, "indicator", "--function", "exp:1,0,1,0", "--theta", "0.5")
    assert json.loads(out)["indicator"] == pytest.approx(math.cos(0.5), abs=1e-9)


def test_polya(capsys):
    code, out, _ = run(capsys, "polya", "--a", "2,0", "--z", "1,0", "--omega", "5,0")
    data = json.loads(out)
    assert data["value"]["re"] == pytest.approx(math.e ** 2, rel=1e-9)
    assert data["borel"]["re"] == pytest.approx(1 / 3, rel=1e-12)


def test_unknown_flag_exit_2(capsys):
    code, _, _ = run(capsys, "member", "--bogus", "1")
    assert code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("function = exp:1,0,1,0\ntheta1 = 0\ntheta2 = 0\nnu1 = 0.95\nnu2 = 1\n")
    code, out, _ = run(capsys, "member", "--config", str(cfg))
    assert json.loads(out)["accepted"] is False
    # explicit flags override the file
    code, out, _ = run(capsys, "member", "--config", str(cfg), "--nu1", "1")
    assert json.loads(out)["accepted"] is True
    cfg.write_text("colour = blue\n")
    code, _, _ = run(capsys, "member", "--config", str(cfg))
    assert code == 2


def test_csv_output(tmp_path, capsys):
    path = tmp_path / "m.csv"
    code, _, _ = run(capsys, "member", "--theta1", "0", "--theta2", "0", "--nu1", "1", "--nu2", "1",
                     "--format", "csv", "--output", str(path))
    lines = path.read_text().splitlines()
    assert lines[0].startswith("function,theta,nu,accepted")
    assert len(lines) == 2


def test_verify_sharpness(tmp_path, capsys):
    path = tmp_path / "sharp.csv"
    code, out, _ = run(capsys, "verify", "sharpness", "--output", str(path))
    assert code == 0
    summary = json.loads(out)
    assert summary["pass"] and summary["failed"] == 0
    header = path.read_text().splitlines()[0].split(",")
    assert header[0] == "case_id" and header[-4:] == ["expected", "actual", "error", "pass"]


def test_verify_convexity_deflated_fails(capsys):
    code, out, err = run(capsys, "verify", "convexity", "--function", "exp:1,0,1,0", "--deflate", "0.1")
    assert code == 1
    assert json.loads(err)["pass"] is False


def test_verify_convexity_passes(capsys):
    code, _, _ = run(capsys, "verify", "convexity", "--function", "exp:1,1,1,0", "--theta1", "0.39")
    assert code == 0


def test_verify_branch_and_polya(capsys):
    assert run(capsys, "verify", "branch", "--function", "cossqrt")[0] == 0
    assert run(capsys, "verify", "polya")[0] == 0


def test_verify_roundtrip_small_grid(tmp_path, capsys):
    path = tmp_path / "rt.csv"
    code, out, _ = run(capsys, "verify", "roundtrip", "--function", "exp:1,0,1,0",
                       "--radii", "1,2", "--angles", "0,0.5", "--output", str(path))
    summary = json.loads(out)
    assert code == 0 and summary["cases"] == 16 and summary["max_error"] <= 1e-6


def test_outputs_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(capsys, "verify", "polya", "--output", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_bad_thread_env(monkeypatch, capsys):
    monkeypatch.setenv("SECTOR_INDICATOR_THREADS", "many")
    code, _, _ = run(capsys, "member", "--theta1", "0", "--theta2", "0", "--nu1", "1", "--nu2", "1")
    assert code == 2
