import json
import math
import subprocess
import sys

import mpmath
import pytest

from twistgm.cli import main
from twistgm.numerics import beta

ABC = ["--a", "1/3", "--b", "1/5", "--c", "5/7"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


class TestDerive:
    @pytest.mark.parametrize("pair", ["inf0", "0-1z", "1-1z", "t1-1z", "1inf", "1zinf"])
    def test_matches_catalog(self, capsys, pair):
        code, rep, _ = run_json(capsys, "derive", "--pair", pair, *ABC)
        assert code == 0
        assert [r["status"] for r in rep["results"]] == ["pass"] * 3
        assert rep["inputs"]["pair"] == pair and rep["outputs"]["basis"][0] == "01"

    def test_schema(self, capsys):
        _, rep, _ = run_json(capsys, "derive", "--pair", "inf0", *ABC)
        assert list(rep) == ["command", "inputs", "outputs", "results", "elapsed_ms"]
        for r in rep["results"]:
            assert {"name", "status", "expected", "actual"} <= set(r)
            assert r.get("exact") is True

    def test_unknown_pair(self, capsys):
        code, out, err = run(capsys, "derive", "--pair", "bogus", *ABC)
        assert code == 3 and out == "" and "bogus" in err

    def test_refuses_floats(self, capsys):
        code, _, err = run(capsys, "derive", "--pair", "inf0", "--a", "0.5", "--b", "1/5", "--c", "5/7")
        assert code == 3 and "p/q" in err

    def test_resonant(self, capsys):
        code, rep, _ = run_json(capsys, "derive", "--pair", "inf0", "--a", "1", "--b", "1/5", "--c", "5/7")
        assert code == 2 and rep["error"].startswith("ResonantExponent")

    def test_missing_flag(self, capsys):
        assert run(capsys, "derive", "--pair", "inf0")[0] == 3


class TestEval:
    def test_series_log(self, capsys):
        code, rep, _ = run_json(capsys, "eval", "--method", "series", "--a", "1", "--b", "1",
                                "--c", "2", "--z", "1/2")
        assert code == 0
        (res,) = rep["results"]
        assert abs(res["actual"] - 2 * math.log(2)) < 1e-15
        assert 0 < res["abs_err"] < 1e-13
        assert rep["outputs"]["method"] == "series"

    def test_euler_at_zero(self, capsys):
        code, rep, _ = run_json(capsys, "eval", "--method", "euler", "--cycle", "01", *ABC, "--z", "0")
        assert code == 0
        assert abs(rep["results"][0]["actual"] - beta(1 / 3, 5 / 7 - 1 / 3).real) < 1e-13

    def test_nonpositive_c(self, capsys):
        code, rep, err = run_json(capsys, "eval", "--method", "series", "--a", "1/3", "--b", "1/5",
                                  "--c", "-2", "--z", "1/2")
        assert code == 2 and "c = -2 is a non-positive integer" in rep["error"]
        assert rep["inputs"]["c"] == "-2" and "non-positive" in err

    def test_ode_outside_disk(self, capsys):
        code, rep, _ = run_json(capsys, "eval", "--method", "ode", *ABC, "--z", "-2")
        with mpmath.workdps(30):
            want = float(mpmath.hyp2f1(1 / 3, 1 / 5, 5 / 7, -2))
        got = rep["results"][0]["actual"]
        got = complex(*got) if isinstance(got, list) else got
        assert code == 0 and abs(got - want) < 1e-10

    def test_kummer(self, capsys):
        code, rep, _ = run_json(capsys, "eval", "--method", "kummer", "--kummer-index", "1", *ABC,
                                "--z", "0.3")
        assert code == 0 and rep["inputs"]["kummer_index"] == 1

    def test_kummer_needs_index(self, capsys):
        assert run(capsys, "eval", "--method", "kummer", *ABC, "--z", "0.3")[0] == 3

    def test_euler_domain(self, capsys):
        code, rep, _ = run_json(capsys, "eval", "--method", "euler", *ABC, "--z", "1.5")
        assert code == 2 and "z must be real" in rep["error"]


class TestVerify:
    def test_det(self, capsys):
        code, rep, _ = run_json(capsys, "verify", "--suite", "det")
        assert code == 0 and len(rep["results"]) == 6
        assert all(r["status"] == "pass" for r in rep["results"])

    def test_matrices_seed(self, capsys):
        code, rep, _ = run_json(capsys, "verify", "--suite", "matrices", "--samples", "20", "--seed", "7")
        assert code == 0 and len(rep["results"]) == 120

    def test_unknown_suite(self, capsys):
        assert run(capsys, "verify", "--suite", "nope")[0] == 3

    def test_deterministic(self, capsys):
        argv = ["--no-timing", "verify", "--suite", "relations"]
        first, second = run(capsys, *argv)[1], run(capsys, *argv)[1]
        assert first == second and json.loads(first)["elapsed_ms"] is None


class TestOutput:
    def test_text_format(self, capsys):
        code, out, _ = run(capsys, "--format", "text", "derive", "--pair", "inf0", *ABC)
        assert code == 0
        assert out.startswith("derive: pair=inf0")
        assert "PASS A0 matches catalog" in out and "A(z) = [" in out

    def test_flags_after_subcommand(self, capsys):
        code, out, _ = run(capsys, "derive", "--pair", "inf0", *ABC, "--format", "text", "--no-timing")
        assert code == 0 and "elapsed" not in out

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "tol.cfg"
        cfg.write_text("# tolerances\nrel_tol = 1e-10\nlevels=10\n")
        code, rep, _ = run_json(capsys, "--config", str(cfg), "eval", "--method", "euler", *ABC, "--z", "0.3")
        assert code == 0 and rep["results"][0]["tol"] == 1e-10

    def test_bad_config(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("speed = 3\n")
        assert run(capsys, "--config", str(cfg), "verify", "--suite", "weyl")[0] == 3
        assert run(capsys, "--config", str(tmp_path / "missing"), "verify")[0] == 3

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "twistgm", "--no-timing", "eval", "--method",
                               "series", "--a", "1", "--b", "1", "--c", "2", "--z", "1/2"],
                              capture_output=True, text=True, check=False)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["results"][0]["actual"] == pytest.approx(1.3862943611198906)
