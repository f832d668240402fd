import json
import subprocess
import sys
from fractions import Fraction

import pytest

from moyaltwist.cli import Config, ConfigError, load_config, main, parse_theta, run_suite
from moyaltwist.cli.report import Report, timed_check


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "a, b, expected",
    [("x1", "x2", "x1*x2 + (1/2)*i"), ("1", "x1^3", "x1^3"), ("x1", "x1", "x1^2"), ("x2", "x1", "x1*x2 - (1/2)*i")],
)
def test_star_command(capsys, a, b, expected):
    code, out, _ = _run(["star", a, b, "--theta", "1"], capsys)
    assert code == 0 and out.strip() == expected


def test_star_command_with_particles_and_matrix(capsys):
    code, out, _ = _run(["star", "x1_1", "x2_2", "--theta", "1/2"], capsys)
    assert code == 0 and out.strip() == "x1*x4 + (1/4)*i"
    code, out, _ = _run(["star", "x1", "x3", "--theta", "0,0,2;0,0,0;-2,0,0"], capsys)
    assert code == 0 and out.strip() == "x1*x3 + i"


def test_parse_command(capsys):
    code, out, _ = _run(["parse", "(1/2)*i*x1^2 + x2*x1"], capsys)
    assert code == 0 and out.strip() == "(1/2)*i*x1^2 + x1*x2"
    code, _, err = _run(["parse", "x1 +"], capsys)
    assert code == 2 and "position 5" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    code, _, err = _run(["run", "--suite", "bogus"], capsys)
    assert code == 2 and "unknown suite" in err
    code, _, err = _run(["star", "x1", "x2", "--theta", "1/0"], capsys)
    assert code == 2
    code, _, err = _run(["run", "--suite", "fock", "--modes", "/nonexistent/modes.txt"], capsys)
    assert code == 2 and "modes" in err
    code, _, err = _run(["run", "--config", "/nonexistent.cfg"], capsys)
    assert code == 2


def test_commutative_limit_passes(capsys):
    code, out, _ = _run(["run", "--suite", "star-core", "--theta", "0"], capsys)
    assert code == 0 and "overall: PASS" in out


def test_landau_run_writes_reports(capsys, tmp_path):
    code, out, _ = _run(["run", "--suite", "landau", "--b", "1/2", "--theta", "1/3", "--out", str(tmp_path)], capsys)
    assert code == 0
    doc = json.loads((tmp_path / "report.json").read_text())
    assert doc["config"]["theta"] == "1/3"
    (rep,) = doc["reports"]
    assert rep["suite"] == "landau" and rep["passed"]
    check = rep["checks"][0]
    assert {"id", "description", "anchor", "passed", "residual", "tolerance", "duration", "status"} <= set(check)
    assert (tmp_path / "summary.txt").read_text().strip().endswith("overall: PASS")
    assert (tmp_path / "landau_spectrum.csv").exists()


def test_failing_suite_exits_one(capsys):
    code, out, _ = _run(["run", "--suite", "twoparticle"], capsys)
    assert code == 1 and "fail  stated_cross_term" in out


def test_parallel_jobs(capsys):
    code, out, _ = _run(["run", "--suite", "hopf,fock", "--jobs", "2"], capsys)
    assert code == 0
    assert out.index("hopf") < out.index("fock")


def test_config_file(tmp_path, capsys):
    (tmp_path / "modes.txt").write_text("1 0\n0 1\n1 1\n")
    cfg = tmp_path / "run.cfg"
    cfg.write_text("theta = 1/5\nsuites = hopf fock\nmodes = modes.txt\ntolerance.fock = 1e-10  # looser\nseed = 3\n")
    c = load_config(cfg)
    assert c.theta == Fraction(1, 5) and c.suite_list == ["hopf", "fock"] and c.seed == 3
    assert c.tolerances == {"fock": 1e-10}
    assert c.modes_file == str(tmp_path / "modes.txt")
    code, out, _ = _run(["run", "--config", str(cfg), "--theta", "1/7"], capsys)
    assert code == 0 and "seed 3" in out


@pytest.mark.parametrize(
    "text", ["colour = red\n", "theta = one\n", "grid_n = 48\n", "tolerance.hopf = -1\n", "tolerance.nope = 1\n", "jobs = 0\n"]
)
def test_bad_config(tmp_path, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    with pytest.raises(ConfigError):
        load_config(cfg)


def test_config_overrides():
    c = Config().with_overrides(theta=Fraction(2), seed=None)
    assert c.theta == 2 and c.seed == 0
    assert Config(suites=("all",)).suite_list[0] == "star-core"
    assert parse_theta("0,1;-1,0")[0, 1] == 1
    with pytest.raises(ConfigError):
        parse_theta("a,b;c,d")


def test_crashing_check_is_recorded():
    rep = Report("demo", 0)
    timed_check(rep, "boom", "raises", "none", lambda: 1 / 0)
    timed_check(rep, "ok", "fine", "none", lambda: (0.5, "detail"), 1.0)
    assert [c.passed for c in rep.checks] == [False, True]
    assert "ZeroDivisionError" in rep.checks[0].detail and not rep.passed


def test_run_suite_unknown():
    with pytest.raises(KeyError):
        run_suite("bogus", Config())


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "moyaltwist", "star", "x1", "x2", "--theta", "2"], capture_output=True, text=True
    )
    assert out.returncode == 0 and out.stdout.strip() == "x1*x2 + i"
