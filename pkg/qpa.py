"""
Graded quadratic pair algebras, right modules over them, and their
secondary operations.

A graded structure holds one QuadraticPairModule per degree up to its
truncation and four multiplication tables. Products landing above the
truncation are zero. Every checker here takes the structure on the left of
the products (an algebra or a right module) and the algebra on the right.
"""
import itertools
import logging
from typing import Any
from typing import Callable
from typing import Dict
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from pydantic import BaseModel

from groups import AbelianGroup
from groups import Cokernel
from groups import GroupElement
from groups import Subgroup
from laws import bounded_product
from laws import Case
from laws import DEFAULT_BRACKET_BOUND
from laws import DEFAULT_MAX_TUPLES
from laws import LawRunner
from laws import merge_reports
from laws import QpaError
from laws import SuiteReport
from qpm import check_qpm_axioms
from qpm import QuadraticPairModule
from qpm import zero_module

logger = logging.getLogger(__name__)

QPA_BOUND = 3

Table = List[List[List[int]]]

# (left level, right level) -> (table kind, product level)
PRODUCT_LEVELS = {
    ("0", "0"): ("00", "0"),
    ("0", "1"): ("01", "1"),
    ("1", "0"): ("10", "1"),
    ("ee", "ee"): ("ee", "ee"),
}
LEVEL_OF_KIND = {kind: levels for levels, (kind, _) in PRODUCT_LEVELS.items()}


class IllDefinedProduct(QpaError):
    pass


class BracketUndefined(QpaError):
    pass


class PreimageNotFound(QpaError):
    pass


class GradedStructure(object):
    """Degrees 0..truncation of quadratic pair modules with product tables."""

    def __init__(
        self,
        name: str,
        truncation: int,
        modules: Sequence[QuadraticPairModule],
        tables: Dict[Tuple[str, int, int], Table],
    ):
        if len(modules) != truncation + 1:
            raise ValueError("need one module per degree 0..%d" % truncation)
        self.name = name
        self.truncation = truncation
        self.modules = list(modules)
        self.tables = dict(tables)
        self._zero_modules: Dict[int, QuadraticPairModule] = {}

    def __repr__(self) -> str:
        return "%s(%r, truncation=%d)" % (type(self).__name__, self.name, self.truncation)

    @property
    def right(self) -> "GradedQPA":
        raise NotImplementedError

    def module(self, n: int) -> QuadraticPairModule:
        if 0 <= n <= self.truncation:
            return self.modules[n]
        if n not in self._zero_modules:
            self._zero_modules[n] = zero_module(n)
        return self._zero_modules[n]

    def carrier(self, n: int, level: str) -> AbelianGroup:
        M = self.module(n)
        return {"0": M.c0, "1": M.c1, "ee": M.cee}[level]

    def degrees(self) -> range:
        return range(self.truncation + 1)

    def mul(self, x: GroupElement, y: GroupElement) -> GroupElement:
        try:
            kind, level = PRODUCT_LEVELS[(x.carrier.level, y.carrier.level)]
        except KeyError:
            raise IllDefinedProduct(
                "no product between levels %s and %s" % (x.carrier.level, y.carrier.level)
            )
        n, m = x.carrier.degree, y.carrier.degree
        self.carrier(n, x.carrier.level)._check(x)
        self.right.carrier(m, y.carrier.level)._check(y)
        target = self.carrier(n + m, level)
        table = self.tables.get((kind, n, m))
        if table is None or n + m > self.truncation:
            return target.zero()
        total = [0] * target.rank
        for i, xi in enumerate(x.value):
            if not xi:
                continue
            for j, yj in enumerate(y.value):
                if yj:
                    for k, c in enumerate(table[i][j]):
                        total[k] += xi * yj * c
        return target.element(total)

    def d(self, s: GroupElement) -> GroupElement:
        return self.module(s.carrier.degree).d(s)

    def H(self, x: GroupElement) -> GroupElement:
        return self.module(x.carrier.degree).H(x)

    def P(self, a: GroupElement) -> GroupElement:
        return self.module(a.carrier.degree).P(a)

    def crossed(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.module(x.carrier.degree).crossed_effect(x, y)

    def delta(self, x: GroupElement) -> GroupElement:
        return self.module(x.carrier.degree).delta(x)

    def eta(self, x: GroupElement) -> GroupElement:
        return self.module(x.carrier.degree).eta(x)

    def h0(self, n: int) -> Cokernel:
        return self.module(n).homology()[0]

    def h1(self, n: int) -> Subgroup:
        return self.module(n).homology()[1]

    def canonical(self, x: GroupElement) -> GroupElement:
        """The section representative of the h_0 class of x."""
        cok = self.h0(x.carrier.degree)
        return cok.section(cok.coordinates(x))

    def classes(self, n: int, window: int) -> List["H0Class"]:
        cok = self.h0(n)
        return [H0Class(self, cok.section(c)) for c in cok.classes(window)]

    def ill_defined_product(self) -> Optional[str]:
        """A torsion generator whose order does not kill its products."""
        for (kind, n, m), table in self.tables.items():
            left_level, right_level = LEVEL_OF_KIND[kind]
            left = self.carrier(n, left_level)
            right = self.right.carrier(m, right_level)
            target = self.carrier(n + m, PRODUCT_LEVELS[(left_level, right_level)][1])
            for i, order in enumerate(left.orders):
                if order and any(not target.element([order * c for c in table[i][j]]).is_zero() for j in range(right.rank)):
                    return "%s in degree %d" % (left.names[i], n)
            for j, order in enumerate(right.orders):
                if order and any(not target.element([order * c for c in table[i][j]]).is_zero() for i in range(left.rank)):
                    return "%s in degree %d" % (right.names[j], m)
        return None


class GradedQPA(GradedStructure):
    def __init__(
        self,
        name: str,
        truncation: int,
        modules: Sequence[QuadraticPairModule],
        tables: Dict[Tuple[str, int, int], Table],
        unit: Optional[GroupElement] = None,
    ):
        super().__init__(name, truncation, modules, tables)
        if unit is None:
            unit = self.carrier(0, "0").zero()
        self.unit = unit

    @property
    def right(self) -> "GradedQPA":
        return self

    def unit_ee(self) -> GroupElement:
        return self.crossed(self.unit, self.unit)

    def as_module(self) -> "RightQpaModule":
        """The algebra as a right module over itself."""
        return RightQpaModule(self.name + "-as-module", self, self.truncation, self.modules, self.tables)


class RightQpaModule(GradedStructure):
    def __init__(
        self,
        name: str,
        base: GradedQPA,
        truncation: int,
        modules: Sequence[QuadraticPairModule],
        tables: Dict[Tuple[str, int, int], Table],
    ):
        super().__init__(name, truncation, modules, tables)
        self.base = base

    @property
    def right(self) -> GradedQPA:
        return self.base


class H0Class(object):
    """A class in h_0 of a graded structure, kept with a representative."""

    def __init__(self, structure: GradedStructure, rep: GroupElement):
        self.structure = structure
        self.rep = rep
        self.degree: int = rep.carrier.degree
        self.coords = structure.h0(self.degree).coordinates(rep)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, H0Class):
            return NotImplemented
        return self.degree == other.degree and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.degree, self.coords))

    def __add__(self, other: "H0Class") -> "H0Class":
        return H0Class(self.structure, self.rep + other.rep)

    def __neg__(self) -> "H0Class":
        return H0Class(self.structure, -self.rep)

    def __mul__(self, other: Any) -> "H0Class":
        if isinstance(other, int):
            return H0Class(self.structure, self.rep * other)
        return H0Class(self.structure, self.structure.mul(self.rep, other.rep))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def canonical(self) -> GroupElement:
        return self.structure.canonical(self.rep)

    def __str__(self) -> str:
        return "%s@%d" % (self.canonical(), self.degree)

    __repr__ = __str__


class Coset(object):
    """rep + subgroup inside a level-1 carrier."""

    def __init__(self, rep: GroupElement, subgroup: Subgroup):
        self.rep = rep
        self.subgroup = subgroup

    @classmethod
    def zero(cls, carrier: AbelianGroup) -> "Coset":
        return cls(carrier.zero(), Subgroup(carrier, []))

    def contains(self, x: GroupElement) -> bool:
        return self.subgroup.contains(x - self.rep)

    def __add__(self, other: "Coset") -> "Coset":
        return Coset(self.rep + other.rep, self.subgroup + other.subgroup)

    def __neg__(self) -> "Coset":
        return Coset(-self.rep, self.subgroup)

    def includes(self, other: "Coset") -> bool:
        return self.contains(other.rep) and self.subgroup.includes(other.subgroup)

    def intersects(self, other: "Coset") -> bool:
        return (self.subgroup + other.subgroup).contains(other.rep - self.rep)

    def equals(self, other: "Coset") -> bool:
        return self.includes(other) and other.includes(self)

    def map(self, func: Callable[[GroupElement], GroupElement], carrier: AbelianGroup) -> "Coset":
        return Coset(func(self.rep), self.subgroup.image(func, carrier))

    def elements(self, limit: int = 1000) -> Optional[List[GroupElement]]:
        members = self.subgroup.elements(limit)
        if members is None:
            return None
        return sorted({self.rep + k for k in members}, key=lambda e: e.value)

    def __str__(self) -> str:
        listed = self.elements(64)
        if listed is not None:
            return "{%s}" % ", ".join(str(x) for x in listed)
        return "%s + <%s>" % (self.rep, ", ".join(str(g) for g in self.subgroup.generators))


class BracketRecord(BaseModel):
    degree: int
    representative: str
    indeterminacy: List[str]
    coset: Optional[List[str]] = None
    lifts: Dict[str, str] = {}


class MasseyResult(object):
    def __init__(
        self,
        degree: int,
        representative: GroupElement,
        indeterminacy: Subgroup,
        lifts: Dict[str, GroupElement],
    ):
        self.degree = degree
        self.representative = representative
        self.indeterminacy = indeterminacy
        self.coset = Coset(representative, indeterminacy)
        self.lifts = lifts

    def contains(self, x: GroupElement) -> bool:
        return self.coset.contains(x)

    def elements(self, limit: int = 1000) -> Optional[List[GroupElement]]:
        return self.coset.elements(limit)

    def record(self) -> BracketRecord:
        listed = self.elements()
        return BracketRecord(
            degree=self.degree,
            representative=str(self.representative),
            indeterminacy=[str(g) for g in self.indeterminacy.basis()],
            coset=[str(x) for x in listed] if listed is not None else None,
            lifts={k: str(v) for k, v in self.lifts.items()},
        )

    def __str__(self) -> str:
        return str(self.coset)


def _rep(structure: GradedStructure, a: Any) -> GroupElement:
    if isinstance(a, H0Class):
        return structure.canonical(a.rep)
    return structure.canonical(a)


def _lift(structure: GradedStructure, x: GroupElement, label: str) -> GroupElement:
    s = structure.module(x.carrier.degree).preimage(x)
    if s is None:
        raise BracketUndefined("%s \u2260 0 (%s is not a boundary)" % (label, x))
    return s


def bracket(L: GradedStructure, a: Any, b: Any, c: Any) -> MasseyResult:
    """<a, b, c> with a on the left structure and b, c in its algebra."""
    B = L.right
    a_bar, b_bar, c_bar = _rep(L, a), _rep(B, b), _rep(B, c)
    ab = L.mul(a_bar, b_bar)
    bc = B.mul(b_bar, c_bar)
    ab_lift = _lift(L, ab, "%s\u00b7%s" % (a_bar, b_bar))
    bc_lift = _lift(B, bc, "%s\u00b7%s" % (b_bar, c_bar))
    rep = -L.mul(ab_lift, c_bar) + L.mul(a_bar, bc_lift)
    degree = rep.carrier.degree
    if not L.d(rep).is_zero():
        raise PreimageNotFound("bracket representative %s is not a cycle" % rep)
    gens = [L.mul(k, c_bar) for k in L.h1(ab.carrier.degree).basis()]
    gens += [L.mul(a_bar, k) for k in B.h1(bc.carrier.degree).basis()]
    lifts = {"a": a_bar, "b": b_bar, "c": c_bar, "ab": ab_lift, "bc": bc_lift}
    result = MasseyResult(degree, rep, Subgroup(rep.carrier, gens), lifts)
    logger.debug("<%s, %s, %s> = %s", a_bar, b_bar, c_bar, result)
    return result


def massey_product(B: GradedQPA, a: Any, b: Any, c: Any) -> MasseyResult:
    return bracket(B, a, b, c)


def module_massey(M: RightQpaModule, a: Any, b: Any, c: Any) -> MasseyResult:
    return bracket(M, a, b, c)


def _window(sub: Subgroup, window: int) -> List[GroupElement]:
    if not sub.invariants:
        return [sub.carrier.zero()]
    coords = AbelianGroup(sub.invariants).elements(window)
    return [sub.section(c.value) for c in coords]


def _representatives(L: GradedStructure, x: GroupElement, window: int) -> List[GroupElement]:
    """x plus boundaries of a window of level-1 elements."""
    M = L.module(x.carrier.degree)
    return sorted({x + M.d(s) for s in M.c1.elements(window)}, key=lambda e: e.value)


def massey_oracle(
    L: GradedStructure,
    a: Any,
    b: Any,
    c: Any,
    window: int = DEFAULT_BRACKET_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
) -> List[GroupElement]:
    """Every value of the bracket over the lift choices in a window."""
    B = L.right
    a_bars = _representatives(L, _rep(L, a), window)
    b_bars = _representatives(B, _rep(B, b), window)
    c_bars = _representatives(B, _rep(B, c), window)
    values = set()
    for a_bar, b_bar, c_bar in bounded_product([a_bars, b_bars, c_bars], max_tuples):
        ab = L.mul(a_bar, b_bar)
        bc = B.mul(b_bar, c_bar)
        ab0 = _lift(L, ab, "%s\u00b7%s" % (a_bar, b_bar))
        bc0 = _lift(B, bc, "%s\u00b7%s" % (b_bar, c_bar))
        ab_lifts = [ab0 + k for k in _window(L.h1(ab.carrier.degree), window)]
        bc_lifts = [bc0 + k for k in _window(B.h1(bc.carrier.degree), window)]
        for ab_lift, bc_lift in itertools.product(ab_lifts, bc_lifts):
            values.add(-L.mul(ab_lift, c_bar) + L.mul(a_bar, bc_lift))
    return sorted(values, key=lambda e: e.value)


def degree_combos(limit: int, arity: int, top: int) -> List[Tuple[int, ...]]:
    return [c for c in itertools.product(range(top + 1), repeat=arity) if sum(c) <= limit]


class ElementPools(object):
    """Element pools of a structure, per (degree, level)."""

    def __init__(self, structure: GradedStructure, bound: int):
        self.structure = structure
        self.bound = bound
        self._cache: Dict[Tuple[int, str], List[GroupElement]] = {}

    def __call__(self, n: int, level: str) -> List[GroupElement]:
        key = (n, level)
        if key not in self._cache:
            self._cache[key] = self.structure.carrier(n, level).elements(self.bound)
        return self._cache[key]


def over_combos(
    combos: List[Tuple[int, ...]],
    pools: Callable[[Tuple[int, ...]], List[List[GroupElement]]],
    max_tuples: int,
    seed: int,
) -> Iterator[Tuple[Tuple[int, ...], Tuple[GroupElement, ...]]]:
    per = max(max_tuples // max(len(combos), 1), 1)
    for combo in combos:
        for values in bounded_product(pools(combo), per, seed):
            yield combo, values


def _axiom_suite(
    L: GradedStructure,
    prefix: str,
    suite: str,
    bound: int,
    max_tuples: int,
    laws: Optional[str],
    seed: int,
) -> SuiteReport:
    B = L.right
    is_algebra = L is B
    runner = LawRunner(suite, laws, max_tuples)
    left = ElementPools(L, bound)
    right = ElementPools(B, bound)
    D = L.truncation
    pairs = degree_combos(D, 2, D)
    mul = L.mul

    def over(pool_spec: Sequence[Tuple[str, int, str]], arity: int = 2):
        combos = degree_combos(D, arity, D)

        def pools(combo):
            # each entry: (side, which degree slot, level)
            return [(left if side == "L" else right)(combo[slot], level) for side, slot, level in pool_spec]

        return over_combos(combos, pools, max_tuples, seed)

    def rl() -> Iterator[Case]:
        for _, (x1, x2, x3) in over([("L", 0, "0"), ("B", 1, "0"), ("B", 1, "0")]):
            yield Case({"x1": x1, "x2": x2, "x3": x3}, mul(x1, x2 + x3), mul(x1, x2) + mul(x1, x3), "x.(x+x)")
        for _, (x, s1, s2) in over([("L", 0, "0"), ("B", 1, "1"), ("B", 1, "1")]):
            yield Case({"x": x, "s1": s1, "s2": s2}, mul(x, s1 + s2), mul(x, s1) + mul(x, s2), "x.(s+s)")
        for _, (s, x1, x2) in over([("L", 0, "1"), ("B", 1, "0"), ("B", 1, "0")]):
            yield Case({"s": s, "x1": x1, "x2": x2}, mul(s, x1 + x2), mul(s, x1) + mul(s, x2), "s.(x+x)")
        for _, (a1, a2, a3) in over([("L", 0, "ee"), ("B", 1, "ee"), ("B", 1, "ee")]):
            yield Case({"a1": a1, "a2": a2, "a3": a3}, mul(a1, a2 + a3), mul(a1, a2) + mul(a1, a3), "a.(a+a)")

    def ldl() -> Iterator[Case]:
        for _, (x1, x2, x3) in over([("L", 0, "0"), ("L", 0, "0"), ("B", 1, "0")]):
            correction = L.d(L.P(mul(L.crossed(x2, x1), B.H(x3))))
            yield Case(
                {"x1": x1, "x2": x2, "x3": x3},
                mul(x1 + x2, x3),
                mul(x1, x3) + mul(x2, x3) + correction,
                "(x+x).x",
            )
        for _, (x1, x2, s) in over([("L", 0, "0"), ("L", 0, "0"), ("B", 1, "1")]):
            correction = L.P(mul(L.crossed(x2, x1), B.H(B.d(s))))
            yield Case(
                {"x1": x1, "x2": x2, "s": s},
                mul(x1 + x2, s),
                mul(x1, s) + mul(x2, s) + correction,
                "(x+x).s",
            )
        for _, (s1, s2, x) in over([("L", 0, "1"), ("L", 0, "1"), ("B", 1, "0")]):
            correction = L.P(mul(L.crossed(L.d(s2), L.d(s1)), B.H(x)))
            yield Case(
                {"s1": s1, "s2": s2, "x": x},
                mul(s1 + s2, x),
                mul(s1, x) + mul(s2, x) + correction,
                "(s+s).x",
            )
        for _, (a1, a2, a3) in over([("L", 0, "ee"), ("L", 0, "ee"), ("B", 1, "ee")]):
            yield Case({"a1": a1, "a2": a2, "a3": a3}, mul(a1 + a2, a3), mul(a1, a3) + mul(a2, a3), "(a+a).a")

    def dm() -> Iterator[Case]:
        for _, (x, s) in over([("L", 0, "0"), ("B", 1, "1")]):
            yield Case({"x": x, "s": s}, L.d(mul(x, s)), mul(x, B.d(s)), "d(x.s)")
        for _, (s, x) in over([("L", 0, "1"), ("B", 1, "0")]):
            yield Case({"s": s, "x": x}, L.d(mul(s, x)), mul(L.d(s), x), "d(s.x)")
        for _, (s1, s2) in over([("L", 0, "1"), ("B", 1, "1")]):
            yield Case({"s1": s1, "s2": s2}, mul(L.d(s1), s2), mul(s1, B.d(s2)), "ds.s")

    def pml() -> Iterator[Case]:
        for _, (x, a) in over([("L", 0, "0"), ("B", 1, "ee")]):
            yield Case({"x": x, "a": a}, L.P(mul(L.crossed(x, x), a)), mul(x, B.P(a)))

    def pmr() -> Iterator[Case]:
        for _, (a, x) in over([("L", 0, "ee"), ("B", 1, "0")]):
            yield Case({"a": a, "x": x}, L.P(mul(a, B.delta(x))), mul(L.P(a), x))

    def hm() -> Iterator[Case]:
        for _, (x1, x2) in over([("L", 0, "0"), ("B", 1, "0")]):
            yield Case(
                {"x1": x1, "x2": x2},
                L.H(mul(x1, x2)),
                mul(L.crossed(x1, x1), B.H(x2)) + mul(L.H(x1), B.delta(x2)),
            )

    def hdpm() -> Iterator[Case]:
        for _, (a1, a2) in over([("L", 0, "ee"), ("B", 1, "ee")]):
            t1 = L.H(L.d(L.P(a1)))
            t2 = B.H(B.d(B.P(a2)))
            yield Case(
                {"a1": a1, "a2": a2},
                L.H(L.d(L.P(mul(a1, a2)))),
                mul(t1, a2) + mul(a1, t2) - mul(t1, t2),
            )

    def cem() -> Iterator[Case]:
        for _, (x1, x3, x2, x4) in over([("L", 0, "0"), ("L", 0, "0"), ("B", 1, "0"), ("B", 1, "0")]):
            yield Case(
                {"x1": x1, "x2": x2, "x3": x3, "x4": x4},
                L.crossed(mul(x1, x2), mul(x3, x4)),
                mul(L.crossed(x1, x3), B.crossed(x2, x4)),
            )

    def unit_and_associativity() -> Iterator[Case]:
        one = B.unit
        one_ee = B.unit_ee()
        if is_algebra:
            yield Case({}, B.H(one), B.carrier(0, "ee").zero(), "H(1) = 0")
        for n in L.degrees():
            for level, unit in (("0", one), ("1", one), ("ee", one_ee)):
                for x in left(n, level):
                    yield Case({"x": x}, mul(x, unit), x, "right unit")
            if is_algebra:
                for level, unit in (("0", one), ("1", one), ("ee", one_ee)):
                    for x in left(n, level):
                        yield Case({"x": x}, mul(unit, x), x, "left unit")
        shapes = [("0", "0", "0"), ("0", "0", "1"), ("0", "1", "0"), ("1", "0", "0"), ("ee", "ee", "ee")]
        for shape in shapes:
            spec = [("L", 0, shape[0]), ("B", 1, shape[1]), ("B", 2, shape[2])]
            for _, (x, y, z) in over(spec, arity=3):
                yield Case({"x": x, "y": y, "z": z}, mul(mul(x, y), z), mul(x, B.mul(y, z)), "associativity %s" % ".".join(shape))

    def zero_left() -> Iterator[Case]:
        for n, m in pairs:
            zero = L.carrier(n, "0").zero()
            for x in right(m, "0"):
                yield Case({"x": x, "n": n}, mul(zero, x), L.carrier(n + m, "0").zero())

    def minus_left() -> Iterator[Case]:
        for _, (x1, x2) in over([("L", 0, "0"), ("B", 1, "0")]):
            yield Case(
                {"x1": x1, "x2": x2},
                mul(-x1, x2),
                -mul(x1, x2) + L.d(L.P(mul(L.crossed(x1, x1), B.H(x2)))),
            )

    def minus_level1() -> Iterator[Case]:
        for _, (x, s) in over([("L", 0, "0"), ("B", 1, "1")]):
            yield Case(
                {"x": x, "s": s},
                mul(-x, s),
                -mul(x, s) + L.P(mul(L.crossed(x, x), B.H(B.d(s)))),
            )

    runner.run(prefix + "1", "products are right linear", rl)
    runner.run(prefix + "2", "left distributivity with corrections", ldl)
    runner.run(prefix + "3", "boundary is compatible with products", dm)
    runner.run(prefix + "4", "P((x|x)_H a) = x P(a)", pml)
    runner.run(prefix + "5", "P(a Delta(x)) = P(a) x", pmr)
    runner.run(prefix + "6", "H(x1 x2) = (x1|x1)_H H(x2) + H(x1) Delta(x2)", hm)
    runner.run(prefix + "7", "HdP is a derivation up to its square", hdpm)
    runner.run(prefix + "8", "crossed effect is multiplicative", cem)
    runner.run(prefix + "9", "unit and associativity", unit_and_associativity)
    if is_algebra:
        runner.run("L1", "0 x = 0", zero_left)
        runner.run("L2", "(-x1) x2 = -x1 x2 + dP((x1|x1)_H H(x2))", minus_left)
        runner.run("L3", "(-x) s = -x s + P((x|x)_H HdS)", minus_level1)
    return runner.report()


def check_qpa_axioms(
    B: GradedQPA,
    bound: int = QPA_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    seed: int = 0,
) -> SuiteReport:
    return _axiom_suite(B, "A", "qpa", bound, max_tuples, laws, seed)


def check_module_axioms(
    M: RightQpaModule,
    bound: int = QPA_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    seed: int = 0,
) -> SuiteReport:
    return _axiom_suite(M, "MA", "module", bound, max_tuples, laws, seed)


def check_degreewise_qpm(
    L: GradedStructure,
    bound: int = QPA_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    seed: int = 0,
) -> SuiteReport:
    per = max(max_tuples // len(L.modules), 1)
    reports = [check_qpm_axioms(M, bound, per, laws, seed) for M in L.modules]
    return merge_reports("qpm", reports)


class H0Ring(object):
    """h_0 of a graded structure with the induced right action of h_0 of its algebra."""

    def __init__(self, structure: GradedStructure):
        self.structure = structure
        self.invariants = {n: structure.h0(n).invariants for n in structure.degrees()}

    def basis(self, n: int) -> List[H0Class]:
        return [H0Class(self.structure, g) for g in self.structure.h0(n).generators()]

    def mul(self, a: H0Class, b: H0Class) -> H0Class:
        return a * b

    def products(self) -> Dict[Tuple[int, int], List[List[Tuple[int, ...]]]]:
        """Coordinates of products of basis classes, per pair of degrees."""
        right = H0Ring(self.structure.right) if self.structure.right is not self.structure else self
        table = {}
        for n in self.structure.degrees():
            for m in right.structure.degrees():
                if n + m > self.structure.truncation:
                    continue
                table[(n, m)] = [[(a * b).coords for b in right.basis(m)] for a in self.basis(n)]
        return table


class H1Bimodule(object):
    def __init__(self, structure: GradedStructure):
        self.structure = structure
        self.invariants = {n: structure.h1(n).invariants for n in structure.degrees()}

    def basis(self, n: int) -> List[GroupElement]:
        return self.structure.h1(n).basis()

    def left(self, a: H0Class, s: GroupElement) -> GroupElement:
        return self.structure.mul(self.structure.canonical(a.rep), s)

    def right(self, s: GroupElement, a: H0Class) -> GroupElement:
        return self.structure.mul(s, self.structure.right.canonical(a.rep))


def _homology_cases(L: GradedStructure) -> Tuple[Callable[[], Iterator[Case]], Callable[[], Iterator[Case]]]:
    B = L.right

    def h0_products() -> Iterator[Case]:
        for n in L.degrees():
            for m in B.degrees():
                if n + m > L.truncation:
                    continue
                target = L.module(n + m)
                for s in L.carrier(n, "1").generators():
                    for y in B.carrier(m, "0").generators():
                        p = L.mul(L.d(s), y)
                        yield Case({"ds": L.d(s), "y": y}, p, "boundary", holds=target.is_boundary(p))
                for x in L.carrier(n, "0").generators():
                    for s in B.carrier(m, "1").generators():
                        p = L.mul(x, B.d(s))
                        yield Case({"x": x, "ds": B.d(s)}, p, "boundary", holds=target.is_boundary(p))

    def h1_actions() -> Iterator[Case]:
        for n in L.degrees():
            for m in B.degrees():
                if n + m > L.truncation:
                    continue
                zero = L.carrier(n + m, "1").zero()
                zero0 = L.carrier(n + m, "0").zero()
                for k in L.h1(n).basis():
                    for y in B.carrier(m, "0").generators():
                        yield Case({"k": k, "y": y}, L.d(L.mul(k, y)), zero0, "k.y is a cycle")
                    for s in B.carrier(m, "1").generators():
                        yield Case({"k": k, "ds": B.d(s)}, L.mul(k, B.d(s)), zero, "k.ds = 0")
                for x in L.carrier(n, "0").generators():
                    for k in B.h1(m).basis():
                        yield Case({"x": x, "k": k}, L.d(L.mul(x, k)), zero0, "x.k is a cycle")
                for s in L.carrier(n, "1").generators():
                    for k in B.h1(m).basis():
                        yield Case({"ds": L.d(s), "k": k}, L.mul(L.d(s), k), zero, "ds.k = 0")

    return h0_products, h1_actions


def check_homology_laws(L: GradedStructure, max_tuples: int = DEFAULT_MAX_TUPLES, laws: Optional[str] = None) -> SuiteReport:
    runner = LawRunner("homology", laws, max_tuples)
    h0_products, h1_actions = _homology_cases(L)
    runner.run("H0R", "h0 products are well defined", h0_products)
    runner.run("H1B", "h1 is an h0 bimodule", h1_actions)
    return runner.report()


def h0_ring(B: GradedStructure) -> H0Ring:
    report = check_homology_laws(B, laws="H0R")
    if not report.passed:
        raise IllDefinedProduct("induced product on h0 is ill defined: %s" % report.failures()[0].witness)
    return H0Ring(B)


def h1_bimodule(B: GradedStructure) -> H1Bimodule:
    report = check_homology_laws(B, laws="H1B")
    if not report.passed:
        raise IllDefinedProduct("h1 actions are ill defined: %s" % report.failures()[0].witness)
    return H1Bimodule(B)


def k_invariant_bimodule_check(
    B: GradedStructure,
    bound: int = DEFAULT_BRACKET_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
) -> SuiteReport:
    runner = LawRunner("k-invariant", laws, max_tuples)
    R = B.right

    def pairs() -> Iterator[Tuple[H0Class, H0Class]]:
        for n in B.degrees():
            for m in R.degrees():
                if n + m > B.truncation:
                    continue
                yield from itertools.product(B.classes(n, bound), R.classes(m, bound))

    def left_linear() -> Iterator[Case]:
        for a, b in pairs():
            x, y = a.canonical(), b.canonical()
            yield Case({"a": a, "b": b}, B.eta(B.mul(x, y)), B.mul(x, R.eta(y)))

    def right_linear() -> Iterator[Case]:
        for a, b in pairs():
            x, y = a.canonical(), b.canonical()
            yield Case({"a": a, "b": b}, B.mul(B.eta(x), y), B.eta(B.mul(x, y)))

    runner.run("K1", "(ab) eta = a (b eta)", left_linear)
    runner.run("K2", "(a eta) b = (ab) eta", right_linear)
    return runner.report()


def property_H_check(B: GradedStructure, bound: int = DEFAULT_BRACKET_BOUND, window: int = QPA_BOUND) -> Dict[int, bool]:
    """Per degree, whether every class in the window has a representative in ker H."""
    result = {}
    for n in B.degrees():
        M = B.module(n)
        boundaries = [M.d(s) for s in M.c1.elements(window)]
        ok = True
        for cls in B.classes(n, bound):
            x = cls.canonical()
            if not any(M.H(x + b).is_zero() for b in boundaries):
                ok = False
                break
        result[n] = ok
    return result


def _try_bracket(L: GradedStructure, a: Any, b: Any, c: Any) -> Optional[MasseyResult]:
    try:
        return bracket(L, a, b, c)
    except BracketUndefined:
        return None


def _toda_suite(
    L: GradedStructure,
    prefix: str,
    suite: str,
    bound: int,
    max_tuples: int,
    laws: Optional[str],
) -> SuiteReport:
    B = L.right
    is_algebra = L is B
    runner = LawRunner(suite, laws, max_tuples)
    D = L.truncation
    left_classes = {n: L.classes(n, bound) for n in L.degrees()}
    right_classes = {n: B.classes(n, bound) for n in range(D + 1)}
    cache: Dict[Tuple[Any, ...], Optional[MasseyResult]] = {}

    def br(S: GradedStructure, a: H0Class, b: H0Class, c: H0Class) -> Optional[MasseyResult]:
        key = (id(S), a, b, c)
        if key not in cache:
            cache[key] = _try_bracket(S, a, b, c)
        return cache[key]

    def triples() -> Iterator[Tuple[H0Class, H0Class, H0Class]]:
        for p, q, r in degree_combos(D, 3, D):
            yield from itertools.product(left_classes[p], right_classes.get(q, []), right_classes.get(r, []))

    def quads() -> Iterator[Tuple[H0Class, H0Class, H0Class, H0Class]]:
        for p, q, r, s in degree_combos(D, 4, D):
            yield from itertools.product(
                left_classes[p], right_classes.get(q, []), right_classes.get(r, []), right_classes.get(s, [])
            )

    def zero_entry() -> Iterator[Case]:
        for a, b, c in triples():
            if not (a.is_zero() or b.is_zero() or c.is_zero()):
                continue
            m = br(L, a, b, c)
            if m is None:
                continue
            yield Case({"a": a, "b": b, "c": c}, m, "contains 0", holds=m.contains(m.representative.carrier.zero()))

    def linearity() -> Iterator[Case]:
        for p, q, r in degree_combos(D, 3, D):
            for a, a2 in itertools.product(left_classes[p], repeat=2):
                for b, c in itertools.product(right_classes[q], right_classes[r]):
                    m, m1, m2 = br(L, a + a2, b, c), br(L, a, b, c), br(L, a2, b, c)
                    if m and m1 and m2:
                        yield Case({"a": a, "a'": a2, "b": b, "c": c}, m, m1.coset + m2.coset, "left", holds=(m1.coset + m2.coset).includes(m.coset))
            for b, b2 in itertools.product(right_classes[q], repeat=2):
                for a, c in itertools.product(left_classes[p], right_classes[r]):
                    m, m1, m2 = br(L, a, b + b2, c), br(L, a, b, c), br(L, a, b2, c)
                    if m and m1 and m2:
                        yield Case({"a": a, "b": b, "b'": b2, "c": c}, m, m1.coset + m2.coset, "middle", holds=(m1.coset + m2.coset).equals(m.coset))
            for c, c2 in itertools.product(right_classes[r], repeat=2):
                for a, b in itertools.product(left_classes[p], right_classes[q]):
                    m, m1, m2 = br(L, a, b, c + c2), br(L, a, b, c), br(L, a, b, c2)
                    if m and m1 and m2:
                        yield Case({"a": a, "b": b, "c": c, "c'": c2}, m, m1.coset + m2.coset, "right", holds=(m1.coset + m2.coset).includes(m.coset))

    def juggling() -> Iterator[Case]:
        for a, b, c, d in quads():
            inner = br(B, b, c, d)
            outer = br(L, a * b, c, d)
            if inner and outer:
                a_bar = a.canonical()
                image = inner.coset.map(lambda s: L.mul(a_bar, s), outer.representative.carrier)
                yield Case({"a": a, "b": b, "c": c, "d": d}, image, outer, "a<b,c,d>", holds=outer.coset.includes(image))
            first = br(L, a, b, c)
            last = br(L, a, b, c * d)
            if first and last:
                d_bar = d.canonical()
                image = first.coset.map(lambda s: L.mul(s, d_bar), last.representative.carrier)
                yield Case({"a": a, "b": b, "c": c, "d": d}, image, last, "<a,b,c>d", holds=last.coset.includes(image))

    def associativity() -> Iterator[Case]:
        for a, b, c, d in quads():
            middle = br(L, a, b * c, d)
            if middle is None:
                continue
            left_one = br(L, a * b, c, d)
            if left_one:
                yield Case({"a": a, "b": b, "c": c, "d": d}, left_one, middle, "<ab,c,d>", holds=middle.coset.includes(left_one.coset))
            right_one = br(L, a, b, c * d)
            if right_one:
                yield Case({"a": a, "b": b, "c": c, "d": d}, right_one, middle, "<a,b,cd>", holds=middle.coset.includes(right_one.coset))

    def juggling_sum() -> Iterator[Case]:
        for a, b, c, d in quads():
            first = br(L, a, b, c)
            inner = br(B, b, c, d)
            if not (first and inner):
                continue
            a_bar, d_bar = a.canonical(), d.canonical()
            target = L.carrier(a.degree + b.degree + c.degree + d.degree, "1")
            total = first.coset.map(lambda s: L.mul(s, d_bar), target)
            total = total + inner.coset.map(lambda s: L.mul(a_bar, s), target)
            yield Case({"a": a, "b": b, "c": c, "d": d}, total, "contains 0", holds=total.contains(total.rep.carrier.zero()))

    def eta_in_bracket() -> Iterator[Case]:
        two = H0Class(B, B.unit * 2)
        for n in B.degrees():
            for a in left_classes[n]:
                if a.is_zero() or not (a * 2).is_zero():
                    continue
                m = br(B, two, a, two)
                if m is None:
                    continue
                value = B.eta(a.canonical())
                yield Case({"a": a}, value, m, holds=m.contains(value))

    runner.run(prefix + "1", "zero entry gives a bracket containing 0", zero_entry)
    runner.run(prefix + "2", "bracket is linear in each variable", linearity)
    runner.run(prefix + "3", "products move into the bracket", juggling)
    runner.run(prefix + "4", "<ab,c,d> and <a,b,cd> lie in <a,bc,d>", associativity)
    runner.run(prefix + "5", "0 lies in <a,b,c>d + a<b,c,d>", juggling_sum)
    if is_algebra:
        runner.run(prefix + "6", "a eta lies in <2,a,2>", eta_in_bracket, note="needs 2-torsion in h0")
    return runner.report()


def check_toda_laws(
    B: GradedQPA,
    bound: int = DEFAULT_BRACKET_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
) -> SuiteReport:
    return _toda_suite(B, "T", "toda", bound, max_tuples, laws)


def check_pairing_laws(
    M: RightQpaModule,
    bound: int = DEFAULT_BRACKET_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
) -> SuiteReport:
    runner = LawRunner("pairing", laws, max_tuples)
    B = M.base

    def pairs() -> Iterator[Tuple[H0Class, GroupElement]]:
        for n in M.degrees():
            for m in B.degrees():
                if n + m > M.truncation:
                    continue
                for a in M.classes(n, bound):
                    for k in B.h1(m).basis():
                        yield a, k

    def cycles() -> Iterator[Case]:
        for a, k in pairs():
            value = M.mul(a.canonical(), k)
            yield Case({"x": a, "s": k}, M.d(value), M.carrier(value.carrier.degree, "0").zero())

    def independence() -> Iterator[Case]:
        for a, k in pairs():
            x = a.canonical()
            for t in M.carrier(a.degree, "1").elements(bound):
                yield Case({"x": a, "t": t, "s": k}, M.mul(x + M.d(t), k), M.mul(x, k))

    def extends_eta() -> Iterator[Case]:
        unit_pair = B.P(B.unit_ee())
        for n in M.degrees():
            for a in M.classes(n, bound):
                x = a.canonical()
                yield Case({"x": a}, M.mul(x, unit_pair), M.eta(x))

    runner.run("MP1", "x s is a cycle", cycles)
    runner.run("MP2", "x s depends only on the class of x", independence)
    runner.run("MP3", "x P(1|1)_H = x eta", extends_eta)
    return runner.report()


def check_module_laws(
    M: RightQpaModule,
    bound: int = QPA_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    seed: int = 0,
    bracket_bound: int = DEFAULT_BRACKET_BOUND,
) -> SuiteReport:
    reports = [
        check_module_axioms(M, bound, max_tuples, laws, seed),
        check_pairing_laws(M, bracket_bound, max_tuples, laws),
        _toda_suite(M, "MT", "module-toda", bracket_bound, max_tuples, laws),
    ]
    return SuiteReport(suite="module", laws=[law for r in reports for law in r.laws])
