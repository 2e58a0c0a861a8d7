from pathlib import Path

import pytest
import simplejson as json
from click.testing import CliRunner

from instances import builtin
from instances import instance_to_dict
from laws import evaluate_law
from laws import LawReport
from laws import LawStatus
from laws import QpaError
from laws import SuiteReport
from laws import Witness
from toda import cli
from toda import format_law
from toda import plan_suites
from toda import run_suites
from toda import RunConfig

INSTANCES = Path(__file__).parent / "data" / "instances"


@pytest.fixture
def runner():
    return CliRunner()


def lines(result):
    return [line for line in result.output.splitlines() if line]


class TestRunConfig(object):
    def test_defaults(self):
        config = RunConfig()
        assert (config.bound, config.bracket_bound, config.einfty_bound, config.square_bound) == (50, 2, 2, 25)

    def test_small_bound(self):
        assert RunConfig(bound=1).bracket_bound == 1

    @pytest.mark.parametrize("field", ("bound", "jobs", "max_tuples"))
    def test_at_least_one(self, field):
        with pytest.raises(ValueError):
            RunConfig(**{field: 0})

    def test_format(self):
        with pytest.raises(ValueError):
            RunConfig(output_format="xml")


class TestPlan(object):
    def test_plain_instance(self):
        names = [name for name, _ in plan_suites(builtin("lambda-z"), RunConfig(), None, ("tauhat",))]
        assert names == ["qpm", "qpa", "homology", "k-invariant", "toda", "module"]

    def test_einfty_instance_with_both_lifts(self):
        names = [name for name, _ in plan_suites(builtin("zsigma"), RunConfig(), None, ("tauhat", "omega"))]
        assert names[6:] == ["einfty", "square", "comm-toda", "comm-toda.omega"]


class TestRunSuites(object):
    def plan(self, names):
        return [(name, lambda name=name: SuiteReport(suite=name, laws=[])) for name in names]

    @pytest.mark.parametrize("jobs", (1, 3))
    def test_plan_order(self, jobs):
        names = ["qpm", "qpa", "homology", "toda", "module"]
        assert [r.suite for r in run_suites(self.plan(names), jobs)] == names

    def test_empty_plan(self):
        assert run_suites([], 2) == []

    def test_errors_reach_the_caller(self):
        def broken():
            raise QpaError("table is not square")

        with pytest.raises(QpaError):
            run_suites(self.plan(["qpm"]) + [("broken", broken)], 2)


class TestFormatLaw(object):
    def test_human_failure(self):
        law = LawReport(
            law_id="M1",
            label="P H d P = P",
            status=LawStatus.FAIL,
            tuples_checked=2,
            witness=Witness(inputs={"a": "g1"}, lhs="g1", rhs="0"),
        )
        text = format_law("qpm", law, "human")
        assert text.startswith("(M1) fail")
        assert text.endswith("witness a=g1: g1 vs 0")

    def test_tsv(self):
        law = evaluate_law("X1", "x", [])
        assert format_law("demo", law, "tsv") == "demo\tX1\tvacuous\t0\t0\t"

    def test_json(self):
        law = evaluate_law("X1", "x", [])
        assert json.loads(format_law("demo", law, "json"))["suite"] == "demo"


class TestCheck(object):
    def test_zsigma_bracket_laws(self, runner):
        result = runner.invoke(cli, ["--bound", "3", "check", "--instance", "builtin:zsigma", "--laws", "T*"])
        assert result.exit_code == 0, result.output
        assert "(T11)" in result.output
        assert lines(result)[-1].startswith("zsigma: ")

    def test_omega_lift_fails_on_zsigma(self, runner):
        result = runner.invoke(
            cli, ["--bound", "3", "check", "--instance", "builtin:zsigma", "--laws", "MAS1*", "--lift", "both"]
        )
        assert result.exit_code == 1
        assert "(MAS1.omega) fail" in result.output

    def test_json_summary(self, runner):
        result = runner.invoke(
            cli, ["--bound", "2", "--format", "json", "check", "--instance", "builtin:lambda-z", "--laws", "T1,H*"]
        )
        assert result.exit_code == 0, result.output
        rows = [json.loads(line) for line in lines(result)]
        assert {row["law_id"] for row in rows[:-1]} == {"T1", "H0R", "H1B"}
        summary = rows[-1]["summary"]
        assert summary["instance"] == "lambda-z"
        assert summary["failed"] == 0
        assert summary["property_H"] == {"0": True, "1": True, "2": True, "3": True}

    def test_tsv(self, runner):
        result = runner.invoke(
            cli, ["--bound", "2", "--format", "tsv", "check", "--instance", "builtin:lambda-z", "--laws", "T1"]
        )
        assert lines(result)[0] == "suite\tlaw\tstatus\ttuples\tskipped\twitness"
        assert lines(result)[1].startswith("toda\tT1\tpass\t")
        assert lines(result)[-1].startswith("# lambda-z\t")

    def test_hexagon_failure(self, runner):
        result = runner.invoke(
            cli, ["--bound", "2", "check", "--instance", "builtin:lambda-z-einfty-negative", "--laws", "O6"]
        )
        assert result.exit_code == 1
        assert "(O6) fail" in result.output
        assert "witness" in result.output

    def test_broken_file(self, runner):
        result = runner.invoke(cli, ["check", "--instance", str(INSTANCES / "broken-h-z4.json")])
        assert result.exit_code == 2
        assert "order 4" in result.output

    def test_unknown_builtin(self, runner):
        result = runner.invoke(cli, ["check", "--instance", "builtin:nope"])
        assert result.exit_code == 2

    def test_jobs_do_not_change_output(self, runner):
        args = ["check", "--instance", "builtin:lambda-z", "--laws", "T*,H*,K*"]
        serial = runner.invoke(cli, ["--bound", "2", "--format", "json"] + args)
        parallel = runner.invoke(cli, ["--bound", "2", "--format", "json", "--jobs", "3"] + args)
        assert serial.exit_code == parallel.exit_code == 0
        assert serial.output == parallel.output

    def test_bound_from_environment(self, runner):
        result = runner.invoke(cli, ["check", "--instance", "builtin:trivial"], env={"QPA_BOUND": "0"})
        assert result.exit_code == 2
        assert "bound must be at least 1" in result.output


class TestBracket(object):
    def test_human(self, runner):
        result = runner.invoke(cli, ["bracket", "builtin:lambda-z", "x", "x", "x", "--oracle"])
        assert result.exit_code == 0, result.output
        assert lines(result) == ["<x, x, x> = {q}", "oracle: {q}"]

    def test_json(self, runner):
        result = runner.invoke(cli, ["--format", "json", "bracket", "builtin:lambda-z", "x", "x", "x"])
        record = json.loads(result.output)
        assert record["degree"] == 3
        assert record["representative"] == "q"
        assert record["indeterminacy"] == []
        assert record["coset"] == ["q"]

    def test_undefined(self, runner):
        result = runner.invoke(cli, ["bracket", "builtin:lambda-z", "x", "1", "x"])
        assert result.exit_code == 1
        assert "x·1 ≠ 0 (x is not a boundary)" in result.output

    def test_bad_class(self, runner):
        result = runner.invoke(cli, ["bracket", "builtin:lambda-z", "x", "w", "x"])
        assert result.exit_code == 2


class TestSq1(object):
    def test_human(self, runner):
        result = runner.invoke(cli, ["sq1", "builtin:zsigma", "2"])
        assert result.exit_code == 0, result.output
        assert result.output.strip() == "Sq_1(2) = eta  [degree 0, lift tauhat]"

    def test_json_omega(self, runner):
        result = runner.invoke(cli, ["--format", "json", "sq1", "builtin:zsigma", "1", "--lift", "omega"])
        assert json.loads(result.output) == {"class": "1", "degree": 0, "lift": "omega", "value": "eta"}

    def test_needs_einfty(self, runner):
        result = runner.invoke(cli, ["sq1", "builtin:lambda-z", "1"])
        assert result.exit_code == 2
        assert "no symmetric actions" in result.output

    def test_odd_degree(self, runner):
        result = runner.invoke(cli, ["sq1", "builtin:lambda-z3", "x"])
        assert result.exit_code == 2
        assert "even degree" in result.output


class TestTrack(object):
    def test_mul(self, runner):
        result = runner.invoke(cli, ["track", "mul", "-n", "4", "t1 t3", "t1 t3"])
        assert result.exit_code == 0, result.output
        assert result.output.strip() == "w"

    def test_mul_json(self, runner):
        result = runner.invoke(cli, ["--format", "json", "track", "mul", "-n", "2", "t1"])
        assert json.loads(result.output) == {"bit": 0, "degree": 2, "perm": "21", "word": "t1"}

    def test_mul_bad_index(self, runner):
        result = runner.invoke(cli, ["track", "mul", "-n", "2", "t2"])
        assert result.exit_code == 2

    def test_verify(self, runner):
        result = runner.invoke(cli, ["track", "verify", "--nmax", "3", "--clifford-nmax", "3"])
        assert result.exit_code == 0, result.output
        assert "(R1) pass" in result.output

    def test_verify_defaults(self, runner):
        result = runner.invoke(cli, ["track", "verify", "--help"])
        assert result.output.count("[default: 6]") == 2

    def test_verify_bad_degree(self, runner):
        result = runner.invoke(cli, ["track", "verify", "--nmax", "9"])
        assert result.exit_code == 2

    def test_table(self, runner):
        result = runner.invoke(cli, ["track", "table", "-n", "2"])
        assert result.output.splitlines() == ["\t12\t21", "12\t0\t0", "21\t0\t0"]


class TestEmit(object):
    def test_instances(self, runner):
        result = runner.invoke(cli, ["instances"])
        assert [line.split("\t")[0] for line in lines(result)] == sorted(
            ["zsigma", "lambda-z", "lambda-z3", "lambda-z-einfty-negative", "lambda-z-crossed", "truncated-poly", "trivial"]
        )

    def test_stdout(self, runner):
        result = runner.invoke(cli, ["emit", "zsigma"])
        assert result.exit_code == 0, result.output
        assert json.loads(result.output) == instance_to_dict(builtin("zsigma"))

    def test_output_dir(self, runner, tmp_path):
        result = runner.invoke(cli, ["emit", "lambda-z3", "--output-dir", str(tmp_path / "out")])
        assert result.exit_code == 0, result.output
        path = tmp_path / "out" / "lambda-z3.json"
        assert result.output.strip() == str(path)
        assert json.loads(path.read_text())["name"] == "lambda-z3"

    def test_random_is_seeded(self, runner):
        first = runner.invoke(cli, ["--seed", "4", "emit", "random"])
        second = runner.invoke(cli, ["--seed", "4", "emit", "random"])
        assert first.exit_code == 0, first.output
        assert first.output == second.output
        assert json.loads(first.output)["name"] == "random-4"

    def test_emitted_file_checks(self, runner, tmp_path):
        runner.invoke(cli, ["emit", "trivial", "--output-dir", str(tmp_path)])
        result = runner.invoke(cli, ["--bound", "2", "check", "--instance", str(tmp_path / "trivial.json")])
        assert result.exit_code == 0, result.output

    def test_unknown(self, runner):
        assert runner.invoke(cli, ["emit", "nope"]).exit_code == 2
