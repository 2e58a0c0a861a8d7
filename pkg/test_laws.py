import pytest
from pydantic import ValidationError

from laws import binom2
from laws import bounded_product
from laws import Case
from laws import evaluate_law
from laws import law_selector
from laws import LawReport
from laws import LawRunner
from laws import LawStatus
from laws import merge_reports
from laws import SKIP
from laws import small_first
from laws import SuiteReport


class TestLawSelector(object):
    @pytest.mark.parametrize(
        "pattern,law_id,expected",
        (
            (None, "A1", True),
            ("T*", "T12", True),
            ("T*", "MT1", False),
            ("T*", "T7.omega", True),
            ("A1,A2", "A2", True),
            ("A1,A2", "A3", False),
            ("O?", "O6", True),
        ),
    )
    def test_selector(self, pattern, law_id, expected):
        assert law_selector(pattern)(law_id) is expected


class TestEvaluateLaw(object):
    def test_pass(self):
        report = evaluate_law("X1", "equal", [Case({"a": 1}, 1, 1), Case({"a": 2}, 2, 2)])
        assert report.status == LawStatus.PASS
        assert report.tuples_checked == 2
        assert report.witness is None

    def test_first_failure_is_the_witness(self):
        cases = [Case({"a": 1}, 1, 1), Case({"a": 2}, 2, 3, "left"), Case({"a": 3}, 0, 1)]
        report = evaluate_law("X1", "equal", cases)
        assert report.status == LawStatus.FAIL
        assert report.tuples_checked == 2
        assert report.witness.inputs == {"a": "2"}
        assert (report.witness.lhs, report.witness.rhs, report.witness.clause) == ("2", "3", "left")

    def test_vacuous(self):
        report = evaluate_law("X1", "nothing", [SKIP, SKIP], note="needs torsion")
        assert report.status == LawStatus.VACUOUS
        assert report.skipped == 2
        assert report.passed

    def test_holds_overrides_equality(self):
        report = evaluate_law("X1", "membership", [Case({}, "a", "b", holds=True)])
        assert report.status == LawStatus.PASS

    def test_failure_needs_witness(self):
        with pytest.raises(ValidationError):
            LawReport(law_id="X1", label="x", status=LawStatus.FAIL)


class TestRunner(object):
    def test_selected_laws_only(self):
        runner = LawRunner("demo", laws="B*")
        runner.run("A1", "skipped", lambda: iter([Case({}, 1, 2)]))
        runner.run("B1", "kept", lambda: iter([Case({}, 1, 1)]))
        report = runner.report()
        assert report.law_ids() == ["B1"]
        assert report.passed

    def test_suite_report(self):
        failing = evaluate_law("X2", "bad", [Case({}, 0, 1)])
        report = SuiteReport(suite="demo", laws=[evaluate_law("X1", "ok", [Case({}, 0, 0)]), failing])
        assert not report.passed
        assert report.failures() == [failing]
        with pytest.raises(KeyError):
            report.law("X3")


class TestMerge(object):
    def test_merge_sums_and_keeps_failure(self):
        first = SuiteReport(suite="d0", laws=[evaluate_law("M1", "m", [Case({}, 0, 0)] * 3)])
        second = SuiteReport(suite="d1", laws=[evaluate_law("M1", "m", [Case({"x": 1}, 0, 1)])])
        merged = merge_reports("qpm", [first, second])
        law = merged.law("M1")
        assert law.status == LawStatus.FAIL
        assert law.tuples_checked == 4
        assert law.witness.inputs == {"x": "1"}

    def test_merge_vacuous_with_pass(self):
        first = SuiteReport(suite="d0", laws=[evaluate_law("M1", "m", [])])
        second = SuiteReport(suite="d1", laws=[evaluate_law("M1", "m", [Case({}, 1, 1)])])
        assert merge_reports("qpm", [first, second]).law("M1").status == LawStatus.PASS


class TestEnumeration(object):
    def test_small_first(self):
        assert small_first(2) == [0, 1, -1, 2, -2]

    def test_exhaustive_under_cap(self):
        assert len(list(bounded_product([[1, 2], [3, 4, 5]], 100))) == 6

    def test_capped_is_deterministic(self):
        pools = [list(range(30))] * 3
        first = list(bounded_product(pools, 500, seed=7))
        assert first == list(bounded_product(pools, 500, seed=7))
        assert len(first) == 500
        assert first[0] == (0, 0, 0)

    def test_empty_pool(self):
        assert list(bounded_product([[1], []], 10)) == []

    @pytest.mark.parametrize("n,expected", ((0, 0), (1, 0), (2, 1), (3, 3), (-1, 1), (-2, 3)))
    def test_binom2(self, n, expected):
        assert binom2(n) == expected
