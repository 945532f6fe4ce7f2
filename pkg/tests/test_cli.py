import json

import pytest
from click.testing import CliRunner

from gburgers.cli import cli

BOOST = '{"alpha":1,"beta":0,"gamma":0,"delta":1,"mu0":0,"mu1":3,"kappa":1}'
IDENTITY = '{"alpha":1,"beta":0,"gamma":0,"delta":1,"mu0":0,"mu1":0,"kappa":1}'
DEGENERATE = '{"alpha":1,"beta":2,"gamma":1,"delta":2,"mu0":0,"mu1":0,"kappa":1}'


@pytest.fixture()
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


class TestList:
    def test_text_has_17_rows(self, runner):
        res = run(runner, "list")
        assert res.exit_code == 0
        lines = res.output.strip().split("\n")
        assert len(lines) == 18  # header + 17

    def test_json(self, runner):
        res = run(runner, "list", "--format", "json")
        rows = json.loads(res.output)
        assert len(rows) == 17
        assert rows[6]["f_expr"] == "-x^2/(2t)"

    def test_single_case(self, runner):
        res = run(runner, "list", "--case", "7")
        assert res.exit_code == 0
        assert "-2t/x" in res.output
        assert res.output.count("\n") == 2

    def test_out_of_range(self, runner):
        res = runner.invoke(cli, ["list", "--case", "0"])
        assert res.exit_code != 0


class TestEval:
    def test_grid_shape_and_odd_symmetry(self, runner):
        res = run(runner, "eval", "--case", "2", "--nu", "-1", "--c1", "1",
                  "--c2", "1", "--region", "0,1,-2,2", "--res", "11x11")
        assert res.exit_code == 0
        lines = res.output.strip().split("\n")
        assert lines[0] == "t,x,u"
        assert len(lines) == 1 + 121
        # u(t, 0) = 0 by odd symmetry of the front
        zero_rows = [ln for ln in lines[1:] if ln.split(",")[1] == "0"]
        assert len(zero_rows) == 11
        assert all(float(ln.split(",")[2]) == 0.0 for ln in zero_rows)

    def test_zero_branch_grid(self, runner):
        res = run(runner, "eval", "--case", "4", "--nu", "0", "--c2", "0",
                  "--region", "0,1,-1,1", "--res", "5x5")
        vals = {float(ln.split(",")[2]) for ln in res.output.strip().split("\n")[1:]}
        assert vals == {0.0}

    def test_singular_region_exits_3(self, runner):
        res = runner.invoke(cli, ["eval", "--case", "7", "--solution", "xi",
                                  "--region", "1,2,-1,1", "--res", "5x5"])
        assert res.exit_code == 3

    def test_json_format(self, runner):
        res = run(runner, "eval", "--case", "2", "--solution", "xi",
                  "--region", "0,1,0,1", "--res", "3x3", "--format", "json")
        data = json.loads(res.output)
        assert len(data["rows"]) == 9
        assert data["provenance"] == "xi-as-solution(case 2)"

    def test_bad_region_is_usage_error(self, runner):
        res = runner.invoke(cli, ["eval", "--case", "2", "--region", "0,1", "--res", "3x3"])
        assert res.exit_code == 2


class TestVerify:
    def test_single_case_reduced(self, runner):
        res = run(runner, "verify", "--case", "7", "--which", "reduced",
                  "--res", "20x20")
        assert res.exit_code == 0
        rep = json.loads(res.output)
        assert rep["pass"] is True
        assert rep["max_abs_residual"] <= 1e-10

    def test_all_cases_pfde(self, runner):
        res = run(runner, "verify", "--all", "--which", "pfde", "--res", "15x15")
        assert res.exit_code == 0
        reps = json.loads(res.output)
        assert len(reps) == 17
        assert all(r["pass"] for r in reps)

    def test_failing_tolerance_exits_1(self, runner):
        res = runner.invoke(cli, ["verify", "--case", "7", "--which", "reduced",
                                  "--res", "10x10", "--tol", "1e-30"])
        assert res.exit_code == 1

    def test_empty_region_exits_3(self, runner):
        res = runner.invoke(cli, ["verify", "--case", "7", "--which", "pfde",
                                  "--region", "1,2,0,0", "--res", "5x5"])
        assert res.exit_code == 3

    def test_requires_exactly_one_target(self, runner):
        res = runner.invoke(cli, ["verify", "--which", "pfde"])
        assert res.exit_code == 2
        res = runner.invoke(cli, ["verify", "--all", "--case", "2", "--which", "pfde"])
        assert res.exit_code == 2

    def test_determining_sweep(self, runner):
        res = run(runner, "verify", "--case", "9", "--which", "determining",
                  "--res", "10x10")
        assert res.exit_code == 0

    def test_jobs_give_identical_output(self, runner):
        a = run(runner, "verify", "--case", "12", "--which", "gbe", "--res", "12x12")
        b = run(runner, "verify", "--case", "12", "--which", "gbe", "--res", "12x12",
                "--jobs", "4")
        assert a.output == b.output


class TestTransform:
    def test_identity_matches_eval(self, runner):
        ev = run(runner, "eval", "--case", "2", "--nu", "-1", "--region",
                 "0,1,-1,1", "--res", "5x5")
        tr = run(runner, "transform", "--element", IDENTITY, "--case", "2",
                 "--nu", "-1", "--region", "0,1,-1,1", "--res", "5x5")
        assert tr.output.endswith(ev.output) or tr.output == ev.output

    def test_boost_recheck_passes(self, runner):
        res = run(runner, "transform", "--element", BOOST, "--case", "2",
                  "--nu", "-1", "--region", "0,1,-1,1", "--res", "6x6",
                  "--recheck")
        assert res.exit_code == 0

    def test_degenerate_element_rejected_at_parse(self, runner):
        res = runner.invoke(cli, ["transform", "--element", DEGENERATE,
                                  "--case", "2", "--region", "0,1,-1,1"])
        assert res.exit_code == 2

    def test_malformed_json_rejected(self, runner):
        res = runner.invoke(cli, ["transform", "--element", "{not json",
                                  "--case", "2", "--region", "0,1,-1,1"])
        assert res.exit_code == 2


class TestSolveAndConvergence:
    def test_solve_reports_errors(self, runner):
        res = run(runner, "solve", "--case", "2", "--nu", "-1", "--region",
                  "0,0.2,-1,1", "--nx", "16")
        assert res.exit_code == 0
        rep = json.loads(res.output)
        assert rep["max_err"] < 1e-2
        assert rep["n_x"] == 16

    def test_solve_ill_posed_case1(self, runner):
        res = runner.invoke(cli, ["solve", "--case", "1", "--solution", "xi",
                                  "--region", "0,0.5,-1,1", "--nx", "16"])
        assert res.exit_code == 3
        assert "strictly negative" in res.output

    def test_convergence_table(self, runner):
        res = run(runner, "convergence", "--case", "2", "--nu", "-1", "--region",
                  "0,0.2,-1,1", "--resolutions", "16,32,64")
        rep = json.loads(res.output)
        assert 1.7 <= rep["observed_order"] <= 2.3
        assert len(rep["max_errors"]) == 3

    def test_bad_resolutions_usage_error(self, runner):
        res = runner.invoke(cli, ["convergence", "--case", "2", "--region",
                                  "0,0.2,-1,1", "--resolutions", "16,20"])
        assert res.exit_code == 2


class TestDeterminism:
    def test_byte_identical_reruns(self, runner):
        args = ["verify", "--case", "13", "--which", "potential", "--res", "9x9"]
        assert run(runner, *args).output == run(runner, *args).output

    def test_17_significant_digits(self, runner):
        res = run(runner, "eval", "--case", "7", "--solution", "xi",
                  "--region", "1,1,3,3", "--res", "2x2")
        # xi = x/t = 3 exactly; value printed exactly
        rows = res.output.strip().split("\n")[1:]
        assert all(r.split(",")[2] == "3" for r in rows)
        res2 = run(runner, "eval", "--case", "7", "--solution", "xi",
                   "--region", "1,1,1,2", "--res", "2x3")
        assert "1.5" in res2.output
