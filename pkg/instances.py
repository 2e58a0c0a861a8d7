"""
Built-in instances, the crossed-module construction, seeded random
generation and the JSON instance format.

Matrices in the file format have one row per target generator and one
column per source generator; H_gen has one row per C_ee generator and one
column per C_0 generator. Product and cup-one tables are indexed
table[i][j] by the generators of the left and right factors and hold the
coordinates of the product. Integers may be written as decimal strings.
"""
import logging
import random
import re
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Dict
from typing import List
from typing import Literal
from typing import NamedTuple
from typing import Optional
from typing import Tuple
from typing import Union

import jsonschema
import simplejson as json
from pydantic import BaseModel
from pydantic import ValidationError
from pydantic import root_validator

from einfty import EinftyQPA
from einfty import SignActions
from groups import AbelianGroup
from groups import GroupElement
from groups import Hom
from groups import parse_terms
from groups import UnsupportedCarrier
from laws import QpaError
from laws import SuiteReport
from laws import Witness
from qpa import check_degreewise_qpm
from qpa import check_qpa_axioms
from qpa import GradedQPA
from qpa import H0Class
from qpa import LEVEL_OF_KIND
from qpa import PRODUCT_LEVELS
from qpm import QuadraticMap
from qpm import QuadraticPairModule
from qpm import zero_module

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).parent / "schemas" / "qpa-instance-schema.json"
LOAD_BOUND = 2
LOAD_MAX_TUPLES = 2000
RANDOM_SIZE_BOUND = 3
RANDOM_ATTEMPTS = 500
BUILTIN_PREFIX = "builtin:"

Instance = Union[GradedQPA, EinftyQPA]


class InstanceParseError(QpaError):
    pass


class InstanceValidationError(QpaError):
    def __init__(self, message: str, law_id: Optional[str] = None, witness: Optional[Witness] = None):
        super().__init__(message)
        self.law_id = law_id
        self.witness = witness


class CrossedModuleError(InstanceValidationError):
    pass


class GenerationBudgetExhausted(QpaError):
    pass


INTEGER = re.compile(r"^-?\d+$")


class BigInt(int):
    """An integer, or a decimal string for values beyond the 53-bit range."""

    @classmethod
    def __get_validators__(cls):
        yield cls.validate

    @classmethod
    def validate(cls, v: Any) -> int:
        if isinstance(v, bool):
            raise TypeError("integer expected, got a boolean")
        if isinstance(v, int):
            return int(v)
        if isinstance(v, str) and INTEGER.match(v):
            return int(v)
        raise TypeError("integer or decimal string expected")


Vector = List[BigInt]
Matrix = List[List[BigInt]]
TableSpec = List[List[List[BigInt]]]


class CarrierSpec(BaseModel):
    orders: List[int] = []
    names: List[str] = []

    @root_validator(skip_on_failure=True)
    def one_name_per_generator(cls, values):
        if len(values["orders"]) != len(values["names"]):
            raise ValueError("carrier needs one name per order")
        return values


class DegreeSpec(BaseModel):
    n: int
    C0: CarrierSpec
    C1: CarrierSpec
    Cee: CarrierSpec
    boundary: Matrix
    H_gen: Matrix
    H_pairing: TableSpec
    P: Matrix


class ProductSpec(BaseModel):
    kind: Literal["00", "01", "10", "ee"]
    n: int
    m: int
    table: TableSpec


class ActionSpec(BaseModel):
    scheme: Literal["sign"] = "sign"


class CupOneSpec(BaseModel):
    n: int
    m: int
    table: TableSpec


class InstanceSpec(BaseModel):
    name: str
    truncation: int
    degrees: List[DegreeSpec] = []
    unit: Optional[Vector] = None
    products: List[ProductSpec] = []
    actions: Optional[ActionSpec] = None
    cupone: Optional[List[CupOneSpec]] = None

    @property
    def einfty(self) -> bool:
        return self.actions is not None or self.cupone is not None


class CrossedDegreeSpec(BaseModel):
    n: int
    B0: CarrierSpec
    B1: CarrierSpec
    boundary: Matrix


class CrossedModuleSpec(BaseModel):
    """A graded ring crossed module: C_ee = 0, so H = 0 and P = 0."""

    name: str
    truncation: int
    degrees: List[CrossedDegreeSpec] = []
    unit: Optional[Vector] = None
    products: List[ProductSpec] = []

    @root_validator(skip_on_failure=True)
    def no_ee_products(cls, values):
        if any(p.kind == "ee" for p in values["products"]):
            raise ValueError("a crossed module has no ee products")
        return values


def _shape(matrix: List[Any], rows: int, cols: int, what: str) -> None:
    if len(matrix) != rows or any(len(row) != cols for row in matrix):
        raise InstanceValidationError("%s must be %d x %d" % (what, rows, cols))


def _carrier(spec: CarrierSpec, name: str, n: int, level: str) -> AbelianGroup:
    try:
        return AbelianGroup(spec.orders, spec.names, label="%s.C%s[%d]" % (name, level, n), degree=n, level=level)
    except ValueError as e:
        raise InstanceValidationError("degree %d level %s: %s" % (n, level, e))


def _module(name: str, spec: DegreeSpec) -> QuadraticPairModule:
    n = spec.n
    c0 = _carrier(spec.C0, name, n, "0")
    c1 = _carrier(spec.C1, name, n, "1")
    cee = _carrier(spec.Cee, name, n, "ee")
    _shape(spec.boundary, c0.rank, c1.rank, "boundary in degree %d" % n)
    _shape(spec.H_gen, cee.rank, c0.rank, "H_gen in degree %d" % n)
    _shape(spec.P, c1.rank, cee.rank, "P in degree %d" % n)
    _shape(spec.H_pairing, c0.rank, c0.rank, "H_pairing in degree %d" % n)
    for i, row in enumerate(spec.H_pairing):
        _shape(row, c0.rank, cee.rank, "H_pairing row %d in degree %d" % (i, n))
    values = [[spec.H_gen[r][c] for r in range(cee.rank)] for c in range(c0.rank)]
    h = QuadraticMap(c0, cee, values, spec.H_pairing)
    return QuadraticPairModule(
        c0,
        c1,
        cee,
        Hom(c1, c0, spec.boundary),
        h,
        Hom(cee, c1, spec.P),
        degree=n,
        name="%s[%d]" % (name, n),
    )


def build_instance(spec: InstanceSpec) -> Instance:
    """The structure described by a parsed spec, without running any law."""
    D = spec.truncation
    if D < 0:
        raise InstanceValidationError("truncation must be at least 0")
    by_degree: Dict[int, DegreeSpec] = {}
    for degree in spec.degrees:
        if not 0 <= degree.n <= D:
            raise InstanceValidationError("degree %d lies outside 0..%d" % (degree.n, D))
        if degree.n in by_degree:
            raise InstanceValidationError("degree %d is described twice" % degree.n)
        by_degree[degree.n] = degree
    modules = [_module(spec.name, by_degree[n]) if n in by_degree else zero_module(n) for n in range(D + 1)]

    def carrier(n: int, level: str) -> AbelianGroup:
        M = modules[n] if n <= D else zero_module(n)
        return {"0": M.c0, "1": M.c1, "ee": M.cee}[level]

    tables = {}
    for product in spec.products:
        key = (product.kind, product.n, product.m)
        if key in tables:
            raise InstanceValidationError("product %s (%d, %d) is described twice" % key)
        if product.n < 0 or product.m < 0 or product.n + product.m > D:
            raise InstanceValidationError("product %s (%d, %d) lands outside 0..%d" % (key + (D,)))
        left_level, right_level = LEVEL_OF_KIND[product.kind]
        target_level = PRODUCT_LEVELS[(left_level, right_level)][1]
        left, right = carrier(product.n, left_level), carrier(product.m, right_level)
        target = carrier(product.n + product.m, target_level)
        what = "product %s (%d, %d)" % key
        _shape(product.table, left.rank, right.rank, what)
        for row in product.table:
            _shape(row, right.rank, target.rank, what + " entries")
        tables[key] = product.table

    unit_carrier = carrier(0, "0")
    if spec.unit is not None:
        _shape([spec.unit], 1, unit_carrier.rank, "unit")
        unit = unit_carrier.element(spec.unit)
    elif unit_carrier.has_generator("1"):
        unit = unit_carrier.generator("1")
    else:
        unit = unit_carrier.zero()
    B = GradedQPA(spec.name, D, modules, tables, unit)
    if not spec.einfty:
        return B
    cupone = {}
    for entry in spec.cupone or []:
        if (entry.n, entry.m) in cupone:
            raise InstanceValidationError("cup-one (%d, %d) is described twice" % (entry.n, entry.m))
        target = carrier(entry.n + entry.m, "1") if entry.n + entry.m <= D else zero_module(entry.n + entry.m).c1
        what = "cup-one (%d, %d)" % (entry.n, entry.m)
        _shape(entry.table, carrier(entry.n, "0").rank, carrier(entry.m, "0").rank, what)
        for row in entry.table:
            _shape(row, carrier(entry.m, "0").rank, target.rank, what + " entries")
        cupone[(entry.n, entry.m)] = entry.table
    return EinftyQPA(B, SignActions(B), cupone)


def base_of(instance: Instance) -> GradedQPA:
    return instance.base if isinstance(instance, EinftyQPA) else instance


def _well_defined(B: GradedQPA) -> None:
    for M in B.modules:
        for hom, label in ((M.boundary, "boundary"), (M.p, "P")):
            bad = hom.ill_defined_generator()
            if bad is not None:
                raise InstanceValidationError("%s is ill defined on generator %s in degree %d" % (label, bad, M.degree))
        pair = M.h.asymmetric_pair()
        if pair is not None:
            raise InstanceValidationError("H_pairing is not symmetric at (%s, %s) in degree %d" % (pair + (M.degree,)))
        bad = M.h.ill_defined_generator()
        if bad is not None:
            i = M.c0.names.index(bad)
            raise InstanceValidationError(
                "H is ill defined on generator %s of order %d in degree %d" % (bad, M.c0.orders[i], M.degree)
            )
    bad = B.ill_defined_product()
    if bad is not None:
        raise InstanceValidationError("products do not respect the order of %s" % bad)


def _raise_first_failure(report: SuiteReport, error: type = InstanceValidationError) -> None:
    for law in report.failures():
        raise error(
            "%s fails (%s): %s" % (law.law_id, law.label, law.witness.json() if law.witness else ""),
            law_id=law.law_id,
            witness=law.witness,
        )


def validate_instance(instance: Instance, bound: int = LOAD_BOUND, max_tuples: int = LOAD_MAX_TUPLES) -> None:
    """Well-definedness of every map, then the qpm and qpa axioms in a small window."""
    B = base_of(instance)
    _well_defined(B)
    _raise_first_failure(check_degreewise_qpm(B, bound, max_tuples))
    _raise_first_failure(check_qpa_axioms(B, bound, max_tuples))
    logger.debug("%s validated with bound %d", B.name, bound)


def _schema() -> Dict[str, Any]:
    with open(SCHEMA_PATH, "r", encoding="utf-8") as f:
        return json.load(f)


def parse_instance(text: str, source: str = "<string>") -> InstanceSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError("%s:%d:%d: %s" % (source, e.lineno, e.colno, e.msg))
    try:
        jsonschema.validate(instance=obj, schema=_schema())
    except jsonschema.exceptions.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InstanceParseError("%s: at %s: %s" % (source, where, e.message))
    try:
        return InstanceSpec.parse_obj(obj)
    except ValidationError as e:
        raise InstanceParseError("%s: %s" % (source, e))


def _load_instance(path: Union[str, Path], run_laws: bool = True, bound: int = LOAD_BOUND) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceParseError("%s: %s" % (path, e.strerror or e))
    spec = parse_instance(text, str(path))
    instance = build_instance(spec)
    if run_laws:
        validate_instance(instance, bound)
    return instance


def load_instance(path: Union[str, Path], bound: int = LOAD_BOUND) -> Instance:
    return _load_instance(path, True, bound)


def instance_spec(instance: Instance) -> InstanceSpec:
    """The spec a structure was built from, reconstructed from its data."""
    B = base_of(instance)
    degrees = []
    for M in B.modules:
        values = M.h.values
        degrees.append(
            {
                "n": M.degree,
                "C0": {"orders": list(M.c0.orders), "names": list(M.c0.names)},
                "C1": {"orders": list(M.c1.orders), "names": list(M.c1.names)},
                "Cee": {"orders": list(M.cee.orders), "names": list(M.cee.names)},
                "boundary": M.boundary.require_matrix(),
                "H_gen": [[values[c][r] for c in range(M.c0.rank)] for r in range(M.cee.rank)],
                "H_pairing": M.h.pairing,
                "P": M.p.require_matrix(),
            }
        )
    products = [
        {"kind": kind, "n": n, "m": m, "table": table}
        for (kind, n, m), table in sorted(B.tables.items())
    ]
    spec: Dict[str, Any] = {
        "name": B.name,
        "truncation": B.truncation,
        "degrees": degrees,
        "unit": list(B.unit.value),
        "products": products,
    }
    if isinstance(instance, EinftyQPA):
        if not isinstance(instance.actions, SignActions):
            raise InstanceValidationError("only sign actions can be written to a file")
        spec["actions"] = {"scheme": "sign"}
        spec["cupone"] = [{"n": n, "m": m, "table": t} for (n, m), t in sorted(instance.cupone.items())]
    return InstanceSpec.parse_obj(spec)


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    return instance_spec(instance).dict(exclude_none=True)


def serialize_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), sort_keys=True, indent=2, bigint_as_string=True)


def _crossed_to_spec(spec: CrossedModuleSpec) -> InstanceSpec:
    degrees = []
    for degree in spec.degrees:
        r0, r1 = len(degree.B0.orders), len(degree.B1.orders)
        degrees.append(
            {
                "n": degree.n,
                "C0": degree.B0.dict(),
                "C1": degree.B1.dict(),
                "Cee": {"orders": [], "names": []},
                "boundary": degree.boundary,
                "H_gen": [],
                "H_pairing": [[[] for _ in range(r0)] for _ in range(r0)],
                "P": [[] for _ in range(r1)],
            }
        )
    return InstanceSpec.parse_obj(
        {
            "name": spec.name,
            "truncation": spec.truncation,
            "degrees": degrees,
            "unit": spec.unit,
            "products": [p.dict() for p in spec.products],
        }
    )


def build_from_crossed_module(spec: Union[CrossedModuleSpec, Dict[str, Any]], validate: bool = True) -> GradedQPA:
    """
    A quadratic pair algebra with C_ee = 0 from ring crossed module data.

    The boundary must commute with the bimodule products and satisfy the
    Peiffer identity ds1 . s2 = s1 . ds2; a violation is reported with its
    witness before any other law runs.
    """
    if not isinstance(spec, CrossedModuleSpec):
        spec = CrossedModuleSpec.parse_obj(spec)
    B = build_instance(_crossed_to_spec(spec))
    assert isinstance(B, GradedQPA)
    _raise_first_failure(check_qpa_axioms(B, LOAD_BOUND, LOAD_MAX_TUPLES, laws="A3"), CrossedModuleError)
    if validate:
        validate_instance(B)
    return B


def _ones(rank: int) -> List[List[List[int]]]:
    """The table of 1 * g or g * 1 over a carrier of the given rank."""
    return [[[1 if k == i else 0 for k in range(rank)]] for i in range(rank)]


def _unit_tables(ranks: Dict[Tuple[int, str], int], top: int) -> List[Dict[str, Any]]:
    """Tables for multiplication by the unit generator of C_0 in degree 0."""
    products = []
    for n in range(top + 1):
        for kind, level in (("00", "0"), ("01", "1")):
            rank = ranks.get((n, level), 0)
            if rank:
                products.append({"kind": kind, "n": 0, "m": n, "table": [[row[0] for row in _ones(rank)]]})
        for kind, level in (("00", "0"), ("10", "1")):
            rank = ranks.get((n, level), 0)
            if rank and not (kind == "00" and n == 0):
                products.append({"kind": kind, "n": n, "m": 0, "table": _ones(rank)})
    return products


def zsigma_spec() -> Dict[str, Any]:
    return {
        "name": "zsigma",
        "truncation": 0,
        "unit": [1],
        "degrees": [
            {
                "n": 0,
                "C0": {"orders": [0], "names": ["1"]},
                "C1": {"orders": [2], "names": ["eta"]},
                "Cee": {"orders": [0], "names": ["h"]},
                "boundary": [[0]],
                "H_gen": [[0]],
                "H_pairing": [[[1]]],
                "P": [[1]],
            }
        ],
        "products": [{"kind": kind, "n": 0, "m": 0, "table": [[[1]]]} for kind in ("00", "01", "10", "ee")],
        "actions": {"scheme": "sign"},
        "cupone": [],
    }


def build_zsigma() -> EinftyQPA:
    """Z in degree 0 with H(n) = n(n-1)/2 and P reduction mod 2."""
    E = build_instance(InstanceSpec.parse_obj(zsigma_spec()))
    assert isinstance(E, EinftyQPA)
    return E


LAMBDA_PRODUCTS = [
    {"kind": "00", "n": 1, "m": 1, "table": [[[1]]]},
    {"kind": "00", "n": 1, "m": 2, "table": [[[1]]]},
    {"kind": "00", "n": 2, "m": 1, "table": [[[1]]]},
    {"kind": "01", "n": 1, "m": 2, "table": [[[1, 1]]]},
    {"kind": "10", "n": 2, "m": 1, "table": [[[1, 0]]]},
]

LAMBDA_LEVEL0 = ["1", "x", "y", "z"]
LAMBDA_LEVEL1: Dict[int, List[str]] = {2: ["v"], 3: ["p", "q"]}
LAMBDA_BOUNDARY = {0: [[]], 1: [[]], 2: [[1]], 3: [[1, 0]]}
LAMBDA_CUPONE = [
    {"n": 1, "m": 1, "table": [[[2]]]},
    {"n": 1, "m": 2, "table": [[[0, -2]]]},
    {"n": 2, "m": 1, "table": [[[0, 2]]]},
]


def _lambda_name(modulus: int) -> str:
    return "lambda-z" if modulus == 0 else "lambda-z%d" % modulus


def _lambda_ranks() -> Dict[Tuple[int, str], int]:
    ranks = {(n, "0"): 1 for n in range(4)}
    ranks.update({(n, "1"): len(names) for n, names in LAMBDA_LEVEL1.items()})
    return ranks


def _check_modulus(modulus: int) -> None:
    if modulus < 0 or modulus == 1:
        raise UnsupportedCarrier("coefficients must be Z (0) or Z/k with k >= 2, got %d" % modulus)


def lambda_spec(modulus: int = 0, einfty: bool = False) -> Dict[str, Any]:
    _check_modulus(modulus)
    degrees = []
    for n, name in enumerate(LAMBDA_LEVEL0):
        level1 = LAMBDA_LEVEL1.get(n, [])
        degrees.append(
            {
                "n": n,
                "C0": {"orders": [modulus], "names": [name]},
                "C1": {"orders": [modulus] * len(level1), "names": level1},
                "Cee": {"orders": [], "names": []},
                "boundary": LAMBDA_BOUNDARY[n],
                "H_gen": [],
                "H_pairing": [[[]]],
                "P": [[] for _ in level1],
            }
        )
    spec = {
        "name": _lambda_name(modulus) + ("-einfty-negative" if einfty and modulus != 3 else ""),
        "truncation": 3,
        "unit": [1],
        "degrees": degrees,
        "products": _unit_tables(_lambda_ranks(), 3) + LAMBDA_PRODUCTS,
    }
    if einfty:
        spec["actions"] = {"scheme": "sign"}
        spec["cupone"] = LAMBDA_CUPONE
    return spec


def lambda_crossed_spec(modulus: int = 0) -> Dict[str, Any]:
    """lambda written as a ring crossed module."""
    _check_modulus(modulus)
    degrees = [
        {
            "n": n,
            "B0": {"orders": [modulus], "names": [name]},
            "B1": {"orders": [modulus] * len(LAMBDA_LEVEL1.get(n, [])), "names": LAMBDA_LEVEL1.get(n, [])},
            "boundary": LAMBDA_BOUNDARY[n],
        }
        for n, name in enumerate(LAMBDA_LEVEL0)
    ]
    return {
        "name": _lambda_name(modulus),
        "truncation": 3,
        "unit": [1],
        "degrees": degrees,
        "products": _unit_tables(_lambda_ranks(), 3) + LAMBDA_PRODUCTS,
    }


def build_lambda(modulus: int = 0, einfty: Optional[bool] = None) -> Instance:
    """
    Degrees 0..3 over Z (modulus 0) or Z/modulus with x^2 = dv, so that
    <x, x, x> = {q}. The E-infinity structure is attached for modulus 3
    by default; over other coefficients it fails the hexagon law.
    """
    if einfty is None:
        einfty = modulus == 3
    return build_instance(InstanceSpec.parse_obj(lambda_spec(modulus, einfty)))


def truncated_polynomial_spec() -> Dict[str, Any]:
    """Z[u]/(u^3) with u in degree 1, zero differential and no level 1."""
    degrees = [
        {"n": n, "B0": {"orders": [0], "names": [name]}, "B1": {"orders": [], "names": []}, "boundary": [[]]}
        for n, name in enumerate(["1", "u", "u2"])
    ]
    ranks = {(n, "0"): 1 for n in range(3)}
    products = _unit_tables(ranks, 2) + [{"kind": "00", "n": 1, "m": 1, "table": [[[1]]]}]
    return {"name": "truncated-poly", "truncation": 2, "unit": [1], "degrees": degrees, "products": products}


def build_trivial() -> GradedQPA:
    """Z . 1 in degree 0 and nothing else."""
    spec = {
        "name": "trivial",
        "truncation": 0,
        "unit": [1],
        "degrees": [
            {
                "n": 0,
                "C0": {"orders": [0], "names": ["1"]},
                "C1": {"orders": [], "names": []},
                "Cee": {"orders": [], "names": []},
                "boundary": [[]],
                "H_gen": [],
                "H_pairing": [[[]]],
                "P": [],
            }
        ],
        "products": [{"kind": "00", "n": 0, "m": 0, "table": [[[1]]]}],
    }
    B = build_instance(InstanceSpec.parse_obj(spec))
    assert isinstance(B, GradedQPA)
    return B


def _random_crossed_spec(rng: random.Random, seed: int, size_bound: int) -> Dict[str, Any]:
    p = rng.choice((2, 3))
    top = rng.randint(2, max(2, min(size_bound, 3)))
    cap = max(1, min(size_bound, 2))
    ranks: Dict[Tuple[int, str], int] = {(0, "0"): 1, (0, "1"): 0}
    for n in range(1, top + 1):
        ranks[(n, "0")] = rng.randint(0, cap)
        ranks[(n, "1")] = rng.randint(0, cap)

    def names(prefix: str, n: int, level: str) -> List[str]:
        if (n, level) == (0, "0"):
            return ["1"]
        return ["%s%d_%d" % (prefix, n, i + 1) for i in range(ranks[(n, level)])]

    def entries(rows: int, cols: int) -> List[List[int]]:
        return [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]

    degrees = [
        {
            "n": n,
            "B0": {"orders": [p] * ranks[(n, "0")], "names": names("x", n, "0")},
            "B1": {"orders": [p] * ranks[(n, "1")], "names": names("s", n, "1")},
            "boundary": entries(ranks[(n, "0")], ranks[(n, "1")]),
        }
        for n in range(top + 1)
    ]
    products = _unit_tables(ranks, top)
    for n in range(1, top + 1):
        for m in range(1, top + 1 - n):
            for kind in ("00", "01", "10"):
                left_level, right_level = LEVEL_OF_KIND[kind]
                target_level = PRODUCT_LEVELS[(left_level, right_level)][1]
                left, right = ranks[(n, left_level)], ranks[(m, right_level)]
                target = ranks[(n + m, target_level)]
                if left and right and target:
                    table = [entries(right, target) for _ in range(left)]
                    products.append({"kind": kind, "n": n, "m": m, "table": table})
    return {"name": "random-%d" % seed, "truncation": top, "unit": [1], "degrees": degrees, "products": products}


def random_finite_crossed_module(
    seed: int,
    size_bound: int = RANDOM_SIZE_BOUND,
    attempts: int = RANDOM_ATTEMPTS,
) -> GradedQPA:
    """Draw ring crossed modules over Z/2 or Z/3 from the seed until one passes validation."""
    rng = random.Random(seed)
    for attempt in range(attempts):
        spec = _random_crossed_spec(rng, seed, size_bound)
        try:
            return build_from_crossed_module(spec)
        except InstanceValidationError as e:
            logger.debug("seed %d attempt %d rejected: %s", seed, attempt, e)
    raise GenerationBudgetExhausted("no valid instance for seed %d after %d attempts" % (seed, attempts))


class Builtin(NamedTuple):
    build: Callable[[], Instance]
    description: str


BUILTINS: Dict[str, Builtin] = {
    "zsigma": Builtin(build_zsigma, "Z in degree 0, h1 = Z/2 generated by eta, E-infinity"),
    "lambda-z": Builtin(lambda: build_lambda(0), "degrees 0..3 over Z with <x,x,x> = {q}"),
    "lambda-z3": Builtin(lambda: build_lambda(3), "lambda over Z/3 with its E-infinity structure"),
    "lambda-z-einfty-negative": Builtin(
        lambda: build_lambda(0, einfty=True), "lambda over Z with the cup-one table that fails the hexagon law"
    ),
    "lambda-z-crossed": Builtin(
        lambda: build_from_crossed_module(lambda_crossed_spec(0), validate=False), "lambda over Z from its crossed module"
    ),
    "truncated-poly": Builtin(
        lambda: build_from_crossed_module(truncated_polynomial_spec(), validate=False), "Z[u]/(u^3), zero differential"
    ),
    "trivial": Builtin(build_trivial, "Z . 1 in degree 0"),
}


def builtin(name: str) -> Instance:
    if name not in BUILTINS:
        raise InstanceParseError("unknown built-in %r (known: %s)" % (name, ", ".join(sorted(BUILTINS))))
    return BUILTINS[name].build()


def resolve_instance(ref: str, bound: int = LOAD_BOUND) -> Instance:
    """'builtin:NAME' or a path to an instance file."""
    if ref.startswith(BUILTIN_PREFIX):
        return builtin(ref[len(BUILTIN_PREFIX):])
    return load_instance(ref, bound)


def parse_element(B: GradedQPA, expr: str, level: str = "0") -> GroupElement:
    """
    A level-0 element from an expression such as '2x-y' or '3'.

    Bare integers are multiples of the unit; named terms must all belong to
    one degree.
    """
    try:
        terms = parse_terms(expr)
    except ValueError as e:
        raise InstanceParseError(str(e))
    named = [name for _, name in terms if name is not None]
    if named:
        degrees = [n for n in B.degrees() if B.carrier(n, level).has_generator(named[0])]
        if not degrees:
            raise InstanceParseError("no generator named %r in %s" % (named[0], B.name))
        degree = degrees[0]
    else:
        degree = 0
    carrier = B.carrier(degree, level)
    total = carrier.zero()
    for c, name in terms:
        if name is None:
            if degree != 0 or level != "0":
                raise InstanceParseError("%r mixes integers with generators of degree %d" % (expr, degree))
            total = total + B.unit * c
            continue
        if not carrier.has_generator(name):
            raise InstanceParseError("%r mixes generators of different degrees" % expr)
        total = total + carrier.generator(name) * c
    return total


def parse_class(B: GradedQPA, expr: str) -> H0Class:
    return H0Class(B, parse_element(B, expr))
