import logging
import sys
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Dict
from typing import Iterable
from typing import List
from typing import Optional
from typing import Tuple

import click
import simplejson as json
from prefect import Flow
from prefect import Parameter
from prefect import task
from prefect.executors import LocalDaskExecutor
from prefect.executors import LocalExecutor
from pydantic import BaseModel
from pydantic import ValidationError
from pydantic import validator
from slugify import slugify  # type: ignore

from einfty import check_comm_toda_laws
from einfty import check_einfty_axioms
from einfty import EINFTY_BOUND
from einfty import EinftyQPA
from einfty import LIFTS
from einfty import lor2_check
from einfty import OddDegree
from einfty import square_result
from instances import base_of
from instances import builtin
from instances import BUILTINS
from instances import GenerationBudgetExhausted
from instances import Instance
from instances import InstanceParseError
from instances import InstanceValidationError
from instances import parse_class
from instances import random_finite_crossed_module
from instances import resolve_instance
from instances import serialize_instance
from laws import DEFAULT_BOUND
from laws import DEFAULT_BRACKET_BOUND
from laws import DEFAULT_MAX_TUPLES
from laws import LawReport
from laws import LawStatus
from laws import SuiteReport
from qpa import BracketUndefined
from qpa import check_degreewise_qpm
from qpa import check_homology_laws
from qpa import check_module_laws
from qpa import check_qpa_axioms
from qpa import check_toda_laws
from qpa import k_invariant_bimodule_check
from qpa import massey_oracle
from qpa import massey_product
from qpa import property_H_check
from trackgroup import CLIFFORD_CHECK_DEGREE
from trackgroup import cocycle_table
from trackgroup import DegreeMismatch
from trackgroup import EXHAUSTIVE_TRACK_DEGREE
from trackgroup import from_word
from trackgroup import GeneratorIndexError
from trackgroup import parse_word
from trackgroup import verify_track_laws

logger = logging.getLogger(__name__)

FORMATS = ("json", "tsv", "human")
SQUARE_BOUND = 25
RANDOM_INSTANCE = "random"

Suite = Tuple[str, Callable[[], SuiteReport]]


class LoadFailed(click.ClickException):
    exit_code = 2


class SuiteFailed(click.ClickException):
    exit_code = 1


class RunConfig(BaseModel):
    bound: int = DEFAULT_BOUND
    output_format: str = "human"
    jobs: int = 1
    seed: int = 0
    max_tuples: int = DEFAULT_MAX_TUPLES
    verbose: bool = False

    @validator("bound", "jobs", "max_tuples")
    def at_least_one(cls, v, field):
        if v < 1:
            raise ValueError("%s must be at least 1" % field.name)
        return v

    @validator("output_format")
    def known_format(cls, v):
        if v not in FORMATS:
            raise ValueError("format must be one of %s" % ", ".join(FORMATS))
        return v

    @property
    def bracket_bound(self) -> int:
        return min(self.bound, DEFAULT_BRACKET_BOUND)

    @property
    def einfty_bound(self) -> int:
        return min(self.bound, EINFTY_BOUND)

    @property
    def square_bound(self) -> int:
        return min(self.bound, SQUARE_BOUND)


def dumps(value: Any) -> str:
    return json.dumps(value, sort_keys=True, bigint_as_string=True, ensure_ascii=False)


def load(ref: str) -> Instance:
    try:
        return resolve_instance(ref)
    except (InstanceParseError, InstanceValidationError) as e:
        raise LoadFailed(str(e))


def plan_suites(instance: Instance, config: RunConfig, laws: Optional[str], lifts: Iterable[str]) -> List[Suite]:
    """The suites `check` runs on an instance, in report order."""
    B = base_of(instance)
    suites: List[Suite] = [
        ("qpm", lambda: check_degreewise_qpm(B, config.bound, config.max_tuples, laws, config.seed)),
        ("qpa", lambda: check_qpa_axioms(B, config.bound, config.max_tuples, laws, config.seed)),
        ("homology", lambda: check_homology_laws(B, config.max_tuples, laws)),
        ("k-invariant", lambda: k_invariant_bimodule_check(B, config.bracket_bound, config.max_tuples, laws)),
        ("toda", lambda: check_toda_laws(B, config.bracket_bound, config.max_tuples, laws)),
        (
            "module",
            lambda: check_module_laws(
                B.as_module(), config.bound, config.max_tuples, laws, config.seed, config.bracket_bound
            ),
        ),
    ]
    if isinstance(instance, EinftyQPA):
        E = instance
        suites.append(("einfty", lambda: check_einfty_axioms(E, config.einfty_bound, config.max_tuples, laws, config.seed)))
        suites.append(("square", lambda: lor2_check(E, config.bracket_bound, config.max_tuples, laws)))
        for lift in lifts:
            suites.append(
                (
                    "comm-toda" if lift == "tauhat" else "comm-toda." + lift,
                    lambda lift=lift: check_comm_toda_laws(
                        E, lift, config.bracket_bound, config.max_tuples, laws, square_bound=config.square_bound
                    ),
                )
            )
    return suites


def warm_caches(instance: Instance) -> None:
    B = base_of(instance)
    for n in B.degrees():
        B.module(n).homology()


@task
def run_suite(suite: Suite) -> SuiteReport:
    name, fn = suite
    logger.debug("running suite %s", name)
    return fn()


def run_suites(suites: List[Suite], jobs: int) -> List[SuiteReport]:
    """Suite reports in plan order, whatever order the workers finish in."""
    if not suites:
        return []
    if not logger.isEnabledFor(logging.DEBUG):
        logging.getLogger("prefect").setLevel(logging.WARNING)

    with Flow("check") as flow:
        plan = Parameter("plan")
        reports = run_suite.map(plan)

    if jobs > 1:
        executor = LocalDaskExecutor(scheduler="threads", num_workers=jobs)
    else:
        executor = LocalExecutor()
    state = flow.run(plan=suites, executor=executor)
    mapped = state.result[reports]
    for (name, _), child in zip(suites, mapped.map_states):
        if child.is_failed():
            if isinstance(child.result, Exception):
                raise child.result
            raise RuntimeError("suite %s failed: %s" % (name, child.message))
    return mapped.result


def law_row(suite: str, law: LawReport) -> Dict[str, Any]:
    row = law.dict(exclude_none=True)
    row["suite"] = suite
    return row


def format_law(suite: str, law: LawReport, fmt: str) -> str:
    if fmt == "json":
        return dumps(law_row(suite, law))
    witness = law.witness.dict(exclude_none=True) if law.witness else None
    if fmt == "tsv":
        return "\t".join(
            [suite, law.law_id, law.status, str(law.tuples_checked), str(law.skipped), dumps(witness) if witness else ""]
        )
    line = "(%s) %-8s %6d  %s" % (law.law_id, law.status, law.tuples_checked, law.label)
    if law.status == LawStatus.VACUOUS and law.note:
        line += "  [%s]" % law.note
    if witness:
        inputs = ", ".join("%s=%s" % kv for kv in sorted(witness["inputs"].items()))
        line += "\n    witness %s: %s vs %s" % (inputs, witness["lhs"], witness["rhs"])
        if "clause" in witness:
            line += " (%s)" % witness["clause"]
    return line


def summarize(instance: Instance, reports: List[SuiteReport]) -> Dict[str, Any]:
    laws = [law for r in reports for law in r.laws]
    return {
        "instance": instance.name,
        "suites": [r.suite for r in reports],
        "laws": len(laws),
        "passed": sum(1 for law in laws if law.status == LawStatus.PASS),
        "failed": sum(1 for law in laws if law.status == LawStatus.FAIL),
        "vacuous": sum(1 for law in laws if law.status == LawStatus.VACUOUS),
        "property_H": {str(n): ok for n, ok in property_H_check(base_of(instance)).items()},
    }


def format_summary(summary: Dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return dumps({"summary": summary})
    if fmt == "tsv":
        return "# %s\t%d laws\t%d failed\t%d vacuous" % (
            summary["instance"],
            summary["laws"],
            summary["failed"],
            summary["vacuous"],
        )
    return "%s: %d laws, %d passed, %d failed, %d vacuous; property H by degree %s" % (
        summary["instance"],
        summary["laws"],
        summary["passed"],
        summary["failed"],
        summary["vacuous"],
        summary["property_H"],
    )


@click.group()
@click.option("--bound", type=int, default=DEFAULT_BOUND, envvar="QPA_BOUND", show_default=True, help="Enumeration window for infinite carriers.")
@click.option("--format", "output_format", type=click.Choice(FORMATS), default="human", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True, help="Parallel workers for independent suites.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for sampling and random instances.")
@click.option("--max-tuples", type=int, default=DEFAULT_MAX_TUPLES, show_default=True, help="Cap on tuples per law.")
@click.option("--verbose", is_flag=True, default=False, help="Debug logging on stderr.")
@click.pass_context
def cli(ctx, bound, output_format, jobs, seed, max_tuples, verbose):
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        ctx.obj = RunConfig(
            bound=bound,
            output_format=output_format,
            jobs=jobs,
            seed=seed,
            max_tuples=max_tuples,
            verbose=verbose,
        )
    except ValidationError as e:
        raise click.UsageError(str(e))


@cli.command()
@click.option("--instance", "instance_ref", required=True, help="builtin:NAME or an instance file.")
@click.option("--laws", default=None, help="Comma separated globs over law IDs, e.g. 'T*,A1'.")
@click.option("--lift", type=click.Choice(LIFTS + ("both",)), default="tauhat", show_default=True)
@click.pass_obj
def check(config: RunConfig, instance_ref, laws, lift):
    """Run the law suites on an instance."""
    instance = load(instance_ref)
    lifts = LIFTS if lift == "both" else (lift,)
    suites = plan_suites(instance, config, laws, lifts)
    warm_caches(instance)
    if config.output_format == "tsv":
        click.echo("suite\tlaw\tstatus\ttuples\tskipped\twitness")
    reports = []
    for report in run_suites(suites, config.jobs):
        reports.append(report)
        for law in report.laws:
            click.echo(format_law(report.suite, law, config.output_format))
    summary = summarize(instance, reports)
    click.echo(format_summary(summary, config.output_format))
    if summary["failed"]:
        raise SuiteFailed("%d law(s) failed" % summary["failed"])


@cli.command()
@click.argument("instance_ref")
@click.argument("a")
@click.argument("b")
@click.argument("c")
@click.option("--oracle", is_flag=True, default=False, help="Also enumerate every lift choice.")
@click.pass_obj
def bracket(config: RunConfig, instance_ref, a, b, c, oracle):
    """The Massey product <a, b, c> of three h0 classes."""
    B = base_of(load(instance_ref))
    try:
        classes = [parse_class(B, expr) for expr in (a, b, c)]
    except InstanceParseError as e:
        raise click.BadParameter(str(e))
    try:
        result = massey_product(B, *classes)
        oracle_values = massey_oracle(B, *classes, window=config.bracket_bound) if oracle else None
    except BracketUndefined as e:
        raise SuiteFailed(str(e))
    record = result.record().dict(exclude_none=True)
    if oracle_values is not None:
        record["oracle"] = [str(v) for v in oracle_values]
    if config.output_format == "human":
        click.echo("<%s, %s, %s> = %s" % (a, b, c, result))
        if oracle_values is not None:
            click.echo("oracle: {%s}" % ", ".join(record["oracle"]))
    else:
        click.echo(dumps(record))


@cli.command()
@click.argument("instance_ref")
@click.argument("a")
@click.option("--lift", type=click.Choice(LIFTS), default="tauhat", show_default=True)
@click.pass_obj
def sq1(config: RunConfig, instance_ref, a, lift):
    """The cup-one square of an even degree class."""
    instance = load(instance_ref)
    if not isinstance(instance, EinftyQPA):
        raise LoadFailed("%s has no symmetric actions or cup-one products" % instance.name)
    try:
        result = square_result(instance, parse_class(instance.base, a), lift)
    except (InstanceParseError, OddDegree) as e:
        raise click.BadParameter(str(e))
    if config.output_format == "human":
        click.echo("Sq_1(%s) = %s  [degree %d, lift %s]" % (result.class_, result.value, result.degree, result.lift))
    else:
        click.echo(dumps(result.dict(by_alias=True)))


@cli.group()
def track():
    """Arithmetic in the central extensions of the symmetric groups."""


@track.command("mul")
@click.option("-n", "degree", type=int, required=True)
@click.argument("words", nargs=-1, required=True)
@click.pass_obj
def track_mul(config: RunConfig, degree, words):
    """Multiply words such as 't1 t2' and 'w t3'."""
    try:
        elems = [from_word(degree, parse_word(w)) for w in words]
    except (ValueError, GeneratorIndexError, DegreeMismatch) as e:
        raise click.BadParameter(str(e))
    product = elems[0]
    for t in elems[1:]:
        product = product * t
    if config.output_format == "human":
        click.echo(str(product))
    else:
        click.echo(dumps({"degree": degree, "perm": str(product.perm), "bit": product.bit, "word": str(product)}))


@track.command("verify")
@click.option("--nmax", type=int, default=EXHAUSTIVE_TRACK_DEGREE, show_default=True)
@click.option("--clifford-nmax", type=int, default=CLIFFORD_CHECK_DEGREE, show_default=True)
@click.option("--laws", default=None)
@click.pass_obj
def track_verify(config: RunConfig, nmax, clifford_nmax, laws):
    """Check the presentation and the suspension laws exhaustively."""
    try:
        report = verify_track_laws(nmax, clifford_nmax, config.max_tuples, laws, config.seed)
    except ValueError as e:
        raise click.BadParameter(str(e))
    if config.output_format == "tsv":
        click.echo("suite\tlaw\tstatus\ttuples\tskipped\twitness")
    for law in report.laws:
        click.echo(format_law(report.suite, law, config.output_format))
    if not report.passed:
        raise SuiteFailed("%d law(s) failed" % len(report.failures()))


@track.command("table")
@click.option("-n", "degree", type=int, required=True)
def track_table(degree):
    """The cocycle of the extension in degree n as TSV."""
    perms, table = cocycle_table(degree)
    click.echo("\t".join([""] + [str(p) for p in perms]))
    for p, row in zip(perms, table):
        click.echo("\t".join([str(p)] + [str(c) for c in row]))


@cli.command()
@click.pass_obj
def instances(config: RunConfig):
    """List the built-in instances."""
    for name in sorted(BUILTINS):
        description = BUILTINS[name].description
        if config.output_format == "json":
            click.echo(dumps({"name": name, "description": description}))
        else:
            click.echo("%s\t%s" % (name, description))


@cli.command()
@click.argument("name")
@click.option("--output-dir", type=click.Path(file_okay=False), default=None, help="Write NAME.json here instead of stdout.")
@click.pass_obj
def emit(config: RunConfig, name, output_dir):
    """Serialize a built-in, or 'random' with --seed, as instance JSON."""
    try:
        instance = random_finite_crossed_module(config.seed) if name == RANDOM_INSTANCE else builtin(name)
    except (InstanceParseError, GenerationBudgetExhausted) as e:
        raise LoadFailed(str(e))
    text = serialize_instance(instance)
    if output_dir is None:
        click.echo(text)
        return
    target = Path(output_dir)
    target.mkdir(parents=True, exist_ok=True)
    path = target / ("%s.json" % slugify(instance.name))
    with open(path, "w", encoding="utf-8") as f:
        f.write(text + "\n")
    click.echo(str(path))


if __name__ == "__main__":
    cli()
