"""
Law reports and the machinery that evaluates a law over bounded tuples.

Every checker in this repository produces a SuiteReport made of one
LawReport per law identifier. A law is evaluated lazily from a generator of
Case records; the first mismatch stops the law and is kept as its witness.
"""
import enum
import fnmatch
import itertools
import logging
import random
from typing import Any
from typing import Callable
from typing import Dict
from typing import Iterable
from typing import Iterator
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

from pydantic import BaseModel
from pydantic import root_validator

logger = logging.getLogger(__name__)

DEFAULT_BOUND = 50
DEFAULT_MAX_TUPLES = 20000
DEFAULT_POOL_LIMIT = 1000
DEFAULT_BRACKET_BOUND = 2


class QpaError(Exception):
    """Root of every error raised by the toolkit."""


class LawStatus(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"


class Witness(BaseModel):
    inputs: Dict[str, str]
    lhs: str
    rhs: str
    clause: Optional[str] = None


class LawReport(BaseModel):
    law_id: str
    label: str
    status: LawStatus
    tuples_checked: int = 0
    skipped: int = 0
    witness: Optional[Witness] = None
    note: Optional[str] = None

    class Config:
        use_enum_values = True

    @root_validator(skip_on_failure=True)
    def failures_carry_witness(cls, values):
        if values.get("status") == LawStatus.FAIL and values.get("witness") is None:
            raise ValueError("a failing law needs a witness")
        return values

    @property
    def passed(self) -> bool:
        return self.status != LawStatus.FAIL


class SuiteReport(BaseModel):
    suite: str
    laws: List[LawReport] = []

    @property
    def passed(self) -> bool:
        return all(law.passed for law in self.laws)

    def law(self, law_id: str) -> LawReport:
        for law in self.laws:
            if law.law_id == law_id:
                return law
        raise KeyError(law_id)

    def law_ids(self) -> List[str]:
        return [law.law_id for law in self.laws]

    def failures(self) -> List[LawReport]:
        return [law for law in self.laws if law.status == LawStatus.FAIL]


class Case(NamedTuple):
    inputs: Dict[str, Any]
    lhs: Any
    rhs: Any
    clause: Optional[str] = None
    holds: Optional[bool] = None


# yielded by a case generator for a tuple excluded by the law's hypothesis
SKIP = None


def law_selector(pattern: Optional[str]) -> Callable[[str], bool]:
    """Comma separated globs over law ids; None selects everything."""
    if not pattern:
        return lambda law_id: True
    globs = [p.strip() for p in pattern.split(",") if p.strip()]
    return lambda law_id: any(fnmatch.fnmatchcase(law_id, g) for g in globs)


class LawRunner(object):
    def __init__(
        self,
        suite: str,
        laws: Optional[str] = None,
        max_tuples: int = DEFAULT_MAX_TUPLES,
    ):
        self.suite = suite
        self.wants = law_selector(laws)
        self.max_tuples = max_tuples
        self.reports: List[LawReport] = []

    def run(
        self,
        law_id: str,
        label: str,
        cases: Callable[[], Iterable[Optional[Case]]],
        note: Optional[str] = None,
    ) -> Optional[LawReport]:
        if not self.wants(law_id):
            return None
        report = evaluate_law(law_id, label, cases(), note=note)
        logger.debug(
            "%s %s: %s after %d tuples",
            self.suite,
            law_id,
            report.status,
            report.tuples_checked,
        )
        self.reports.append(report)
        return report

    def report(self) -> SuiteReport:
        return SuiteReport(suite=self.suite, laws=self.reports)


def evaluate_law(
    law_id: str,
    label: str,
    cases: Iterable[Optional[Case]],
    note: Optional[str] = None,
) -> LawReport:
    checked = 0
    skipped = 0
    for case in cases:
        if case is SKIP:
            skipped += 1
            continue
        checked += 1
        holds = case.holds if case.holds is not None else case.lhs == case.rhs
        if not holds:
            witness = Witness(
                inputs={k: str(v) for k, v in case.inputs.items()},
                lhs=str(case.lhs),
                rhs=str(case.rhs),
                clause=case.clause,
            )
            return LawReport(
                law_id=law_id,
                label=label,
                status=LawStatus.FAIL,
                tuples_checked=checked,
                skipped=skipped,
                witness=witness,
                note=note,
            )
    status = LawStatus.PASS if checked else LawStatus.VACUOUS
    return LawReport(
        law_id=law_id,
        label=label,
        status=status,
        tuples_checked=checked,
        skipped=skipped,
        note=note,
    )


def merge_reports(suite: str, reports: Sequence[SuiteReport]) -> SuiteReport:
    """Fold reports for the same law ids (e.g. one per degree) into one."""
    merged: Dict[str, LawReport] = {}
    order: List[str] = []
    for report in reports:
        for law in report.laws:
            if law.law_id not in merged:
                merged[law.law_id] = law.copy()
                order.append(law.law_id)
                continue
            current = merged[law.law_id]
            tuples = current.tuples_checked + law.tuples_checked
            skipped = current.skipped + law.skipped
            if current.status == LawStatus.FAIL:
                status, witness = current.status, current.witness
            elif law.status == LawStatus.FAIL:
                status, witness = law.status, law.witness
            elif LawStatus.PASS in (current.status, law.status):
                status, witness = LawStatus.PASS, None
            else:
                status, witness = LawStatus.VACUOUS, None
            merged[law.law_id] = LawReport(
                law_id=law.law_id,
                label=law.label,
                status=status,
                tuples_checked=tuples,
                skipped=skipped,
                witness=witness,
                note=current.note or law.note,
            )
    return SuiteReport(suite=suite, laws=[merged[law_id] for law_id in order])


def bounded_product(
    pools: Sequence[Sequence[Any]], cap: int, seed: int = 0
) -> Iterator[Tuple[Any, ...]]:
    """
    All tuples from the pools when there are at most `cap` of them.

    Otherwise the pools are small-first, so every tuple over a common prefix
    is produced exhaustively and the rest of the budget is filled with a
    seeded sample.
    """
    if any(len(pool) == 0 for pool in pools):
        return
    total = 1
    for pool in pools:
        total *= len(pool)
    if total <= cap:
        yield from itertools.product(*pools)
        return
    k = max(len(pools), 1)
    width = 1
    while (width + 1) ** k <= cap // 2:
        width += 1
    prefixes = [pool[:width] for pool in pools]
    seen = set()
    for combo in itertools.product(*prefixes):
        seen.add(combo)
        yield combo
    rng = random.Random(seed)
    for _ in range(max(cap - len(seen), 0)):
        yield tuple(rng.choice(pool) for pool in pools)


def small_first(bound: int) -> List[int]:
    """0, 1, -1, 2, -2, ... up to the bound."""
    values = [0]
    for k in range(1, bound + 1):
        values.extend((k, -k))
    return values


def binom2(n: int) -> int:
    """n(n-1)/2 as a polynomial, so binom2(-1) == 1."""
    return n * (n - 1) // 2
