"""
Group carriers for every level of a quadratic pair module.

Two kinds of carrier exist. AbelianGroup is a direct sum of cyclic groups
with named generators; its normal form is the coordinate vector with torsion
coordinates reduced. FiniteGroup is a finite group of nilpotency class at
most two given by a multiplication table. Both are written additively.
"""
import itertools
import re
from typing import Any
from typing import Callable
from typing import Dict
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from laws import bounded_product
from laws import Case
from laws import DEFAULT_MAX_TUPLES
from laws import DEFAULT_POOL_LIMIT
from laws import LawRunner
from laws import QpaError
from laws import small_first
from laws import SuiteReport
from smith import columns
from smith import hstack
from smith import identity
from smith import kernel_basis_with
from smith import mat_vec
from smith import Quotient
from smith import smith_normal_form
from smith import solve_with


class CarrierMismatch(QpaError):
    pass


class UnsupportedCarrier(QpaError):
    pass


class GroupElement(object):
    __slots__ = ("carrier", "value")

    def __init__(self, carrier: "GroupCarrier", value: Any):
        self.carrier = carrier
        self.value = value

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return self.carrier.add(self, other)

    def __neg__(self) -> "GroupElement":
        return self.carrier.neg(self)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self.carrier.add(self, self.carrier.neg(other))

    def __mul__(self, n: int) -> "GroupElement":
        return self.carrier.scale(self, n)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.carrier == other.carrier and self.value == other.value

    def __ne__(self, other: object) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self) -> int:
        return hash((self.carrier, self.value))

    def __str__(self) -> str:
        return self.carrier.format(self)

    def __repr__(self) -> str:
        return "<%s in %s>" % (self.carrier.format(self), self.carrier.label)

    def is_zero(self) -> bool:
        return self == self.carrier.zero()

    @property
    def degree(self) -> Optional[int]:
        return self.carrier.degree


class GroupCarrier(object):
    kind = "abstract"

    def __init__(self, label: str = "", degree: Optional[int] = None, level: str = ""):
        self.label = label
        self.degree = degree
        self.level = level

    def _check(self, *elements: GroupElement) -> None:
        for element in elements:
            if element.carrier != self:
                raise CarrierMismatch(
                    "%r does not belong to %s" % (element, self.label or self.kind)
                )

    def zero(self) -> GroupElement:
        raise NotImplementedError

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        raise NotImplementedError

    def neg(self, a: GroupElement) -> GroupElement:
        raise NotImplementedError

    def commutator(self, a: GroupElement, b: GroupElement) -> GroupElement:
        """-a - b + a + b."""
        self._check(a, b)
        return self.add(self.add(self.add(self.neg(a), self.neg(b)), a), b)

    def scale(self, a: GroupElement, n: int) -> GroupElement:
        self._check(a)
        if n < 0:
            return self.scale(self.neg(a), -n)
        result = self.zero()
        power = a
        while n:
            if n & 1:
                result = self.add(result, power)
            power = self.add(power, power)
            n >>= 1
        return result

    def elements(self, bound: int, limit: int = DEFAULT_POOL_LIMIT) -> List[GroupElement]:
        raise NotImplementedError

    def is_finite(self) -> bool:
        raise NotImplementedError

    def format(self, a: GroupElement) -> str:
        return str(a.value)


class AbelianGroup(GroupCarrier):
    """Z/orders[0] + ... with 0 standing for a copy of Z."""

    kind = "abelian"

    def __init__(
        self,
        orders: Sequence[int],
        names: Optional[Sequence[str]] = None,
        label: str = "",
        degree: Optional[int] = None,
        level: str = "",
    ):
        super().__init__(label, degree, level)
        if any(o < 0 or o == 1 for o in orders):
            raise ValueError("cyclic orders must be 0 (for Z) or at least 2: %r" % (orders,))
        self.orders = tuple(int(o) for o in orders)
        if names is None:
            names = ["g%d" % (i + 1) for i in range(len(self.orders))]
        if len(names) != len(self.orders):
            raise ValueError("need one name per generator")
        self.names = tuple(names)
        self._index = {name: i for i, name in enumerate(self.names)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return (self.orders, self.names, self.degree, self.level) == (
            other.orders,
            other.names,
            other.degree,
            other.level,
        )

    def __hash__(self) -> int:
        return hash((self.orders, self.names, self.degree, self.level))

    def __repr__(self) -> str:
        return "AbelianGroup(%r, %r, degree=%r, level=%r)" % (
            self.orders,
            self.names,
            self.degree,
            self.level,
        )

    @property
    def rank(self) -> int:
        return len(self.orders)

    def element(self, coords: Sequence[int]) -> GroupElement:
        if len(coords) != self.rank:
            raise ValueError("%s expects %d coordinates" % (self.label, self.rank))
        return GroupElement(
            self, tuple(c % o if o else int(c) for c, o in zip(coords, self.orders))
        )

    def generator(self, name_or_index: Any) -> GroupElement:
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        return self.element([1 if j == i else 0 for j in range(self.rank)])

    def generators(self) -> List[GroupElement]:
        return [self.generator(i) for i in range(self.rank)]

    def has_generator(self, name: str) -> bool:
        return name in self._index

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a, b)
        return self.element([x + y for x, y in zip(a.value, b.value)])

    def neg(self, a: GroupElement) -> GroupElement:
        self._check(a)
        return self.element([-x for x in a.value])

    def scale(self, a: GroupElement, n: int) -> GroupElement:
        self._check(a)
        return self.element([n * x for x in a.value])

    def commutator(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a, b)
        return self.zero()

    def is_finite(self) -> bool:
        return all(self.orders)

    def order(self) -> Optional[int]:
        if not self.is_finite():
            return None
        total = 1
        for o in self.orders:
            total *= o
        return total

    def relations(self) -> List[List[int]]:
        """Relation columns, one per torsion generator, as a rank x k matrix."""
        torsion = [i for i, o in enumerate(self.orders) if o]
        return [[self.orders[i] if r == i else 0 for i in torsion] for r in range(self.rank)]

    def elements(self, bound: int, limit: int = DEFAULT_POOL_LIMIT) -> List[GroupElement]:
        """Small-first: by growing window on the free coordinates."""
        free = [i for i, o in enumerate(self.orders) if not o]
        found: List[GroupElement] = []
        radii = range(bound + 1) if free else range(1)
        for radius in radii:
            ranges = [
                small_first(radius) if not o else list(range(o)) for o in self.orders
            ]
            for coords in itertools.product(*ranges):
                if free and max(abs(coords[i]) for i in free) != radius:
                    continue
                found.append(self.element(coords))
                if len(found) >= limit:
                    return found
        return found

    def format(self, a: GroupElement) -> str:
        terms = []
        for c, name in zip(a.value, self.names):
            if c == 0:
                continue
            if name == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = name
            else:
                body = "%d%s" % (abs(c), name)
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        text = "".join(sign + body for sign, body in terms)
        return text[1:] if text.startswith("+") else text


TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*([A-Za-z_][\w^.']*)?\s*")


def parse_terms(expr: str) -> List[Tuple[int, Optional[str]]]:
    """'2x-q+3' -> [(2, 'x'), (-1, 'q'), (3, None)]."""
    terms = []
    pos = 0
    text = expr.strip()
    if not text:
        raise ValueError("empty expression")
    while pos < len(text):
        match = TERM.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError("cannot parse %r at position %d" % (expr, pos))
        sign, digits, name = match.groups()
        if not digits and not name:
            raise ValueError("dangling sign in %r" % expr)
        if pos > 0 and not sign:
            raise ValueError("missing operator in %r at position %d" % (expr, pos))
        c = int(digits) if digits else 1
        terms.append((-c if sign == "-" else c, name))
        pos = match.end()
    return terms


class FiniteGroup(GroupCarrier):
    """A finite group from its multiplication table, written additively."""

    kind = "finite-table"

    def __init__(self, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None, label: str = ""):
        super().__init__(label)
        self.table = tuple(tuple(row) for row in table)
        size = len(self.table)
        if any(len(row) != size for row in self.table):
            raise ValueError("multiplication table must be square")
        self.names = tuple(names) if names else tuple("e%d" % i for i in range(size))
        identities = [
            e for e in range(size) if all(self.table[e][g] == g == self.table[g][e] for g in range(size))
        ]
        if not identities:
            raise ValueError("table has no identity")
        self._zero = identities[0]
        self._inverse = {}
        for g in range(size):
            for h in range(size):
                if self.table[g][h] == self._zero:
                    self._inverse[g] = h
                    break
            else:
                raise ValueError("element %s has no inverse" % self.names[g])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table and self.names == other.names

    def __hash__(self) -> int:
        return hash((self.table, self.names))

    def __len__(self) -> int:
        return len(self.table)

    def element(self, index_or_name: Any) -> GroupElement:
        if isinstance(index_or_name, str):
            return GroupElement(self, self.names.index(index_or_name))
        return GroupElement(self, index_or_name)

    def zero(self) -> GroupElement:
        return GroupElement(self, self._zero)

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a, b)
        return GroupElement(self, self.table[a.value][b.value])

    def neg(self, a: GroupElement) -> GroupElement:
        self._check(a)
        return GroupElement(self, self._inverse[a.value])

    def is_finite(self) -> bool:
        return True

    def elements(self, bound: int = 0, limit: int = DEFAULT_POOL_LIMIT) -> List[GroupElement]:
        ordered = [self._zero] + [g for g in range(len(self.table)) if g != self._zero]
        return [GroupElement(self, g) for g in ordered[:limit]]

    def format(self, a: GroupElement) -> str:
        return self.names[a.value]


def permutation_table(perms: Sequence[Tuple[int, ...]]) -> List[List[int]]:
    """Multiplication table of a list of permutations, (p+q)(i) = p(q(i))."""
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[i]] for i in range(len(q)))] for q in perms] for p in perms]


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    names = ["".join(str(i + 1) for i in p) for p in perms]
    return FiniteGroup(permutation_table(perms), names, label="S%d" % n)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of an n-gon, of order 2n, elements r^k and r^k s."""
    elements = [(k, f) for f in (0, 1) for k in range(n)]

    def mul(a: Tuple[int, int], b: Tuple[int, int]) -> Tuple[int, int]:
        k1, f1 = a
        k2, f2 = b
        return ((k1 + (-k2 if f1 else k2)) % n, f1 ^ f2)

    index = {e: i for i, e in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    names = [("r%d" % k if k else "1") if not f else ("r%ds" % k if k else "s") for k, f in elements]
    return FiniteGroup(table, names, label="D%d" % (2 * n))


class Hom(object):
    """
    A homomorphism of carriers. Abelian homomorphisms are integer matrices
    with one row per target generator and one column per source generator.
    """

    def __init__(
        self,
        source: GroupCarrier,
        target: GroupCarrier,
        matrix: Optional[Sequence[Sequence[int]]] = None,
        func: Optional[Callable[[GroupElement], GroupElement]] = None,
    ):
        if (matrix is None) == (func is None):
            raise ValueError("a Hom needs exactly one of matrix or func")
        self.source = source
        self.target = target
        self.func = func
        self.matrix: Optional[List[List[int]]] = None
        if matrix is not None:
            if not isinstance(source, AbelianGroup) or not isinstance(target, AbelianGroup):
                raise UnsupportedCarrier("matrix homomorphisms need abelian carriers")
            self.matrix = [[int(c) for c in row] for row in matrix]
            if len(self.matrix) != target.rank or any(len(r) != source.rank for r in self.matrix):
                raise ValueError(
                    "matrix for %s -> %s must be %d x %d"
                    % (source.label, target.label, target.rank, source.rank)
                )

    @classmethod
    def zero(cls, source: AbelianGroup, target: AbelianGroup) -> "Hom":
        return cls(source, target, [[0] * source.rank for _ in range(target.rank)])

    @classmethod
    def identity(cls, carrier: AbelianGroup) -> "Hom":
        return cls(carrier, carrier, identity(carrier.rank))

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.carrier != self.source:
            raise CarrierMismatch("%r is not in the source %s" % (x, self.source.label))
        if self.matrix is not None:
            return self.target.element(mat_vec(self.matrix, x.value))
        return self.func(x)

    def require_matrix(self) -> List[List[int]]:
        if self.matrix is None:
            raise UnsupportedCarrier("%s -> %s is not given by a matrix" % (self.source.label, self.target.label))
        return self.matrix

    def ill_defined_generator(self) -> Optional[str]:
        """Name of a torsion generator whose relation is not respected."""
        matrix = self.require_matrix()
        for j, order in enumerate(self.source.orders):
            if order and not self.target.element([row[j] * order for row in matrix]).is_zero():
                return self.source.names[j]
        return None


def _lift_matrix(hom: Hom) -> Tuple[List[List[int]], int]:
    """[matrix | target relations] and the source rank."""
    matrix = hom.require_matrix()
    target = hom.target
    relations = target.relations()
    return hstack(matrix, relations), hom.source.rank + len(relations[0] if relations else [])


class Cokernel(object):
    """Target of an abelian homomorphism modulo its image."""

    def __init__(self, hom: Hom):
        self.hom = hom
        self.target: AbelianGroup = hom.target
        stacked = _lift_matrix(hom)
        self._stacked, self._ncols = stacked
        self._form = smith_normal_form(self._stacked, self._ncols)
        self.quotient = Quotient(self._stacked, self._ncols)
        self.invariants = self.quotient.invariants

    def coordinates(self, y: GroupElement) -> Tuple[int, ...]:
        self.target._check(y)
        return self.quotient.coordinates(y.value)

    def section(self, coords: Sequence[int]) -> GroupElement:
        return self.target.element(self.quotient.section(coords))

    def generators(self) -> List[GroupElement]:
        k = len(self.invariants)
        return [self.section([1 if i == j else 0 for i in range(k)]) for j in range(k)]

    def in_image(self, y: GroupElement) -> bool:
        return self.preimage(y) is not None

    def preimage(self, y: GroupElement) -> Optional[GroupElement]:
        self.target._check(y)
        solution = solve_with(self._form, y.value)
        if solution is None:
            return None
        return self.hom.source.element(solution[: self.hom.source.rank])

    def classes(self, bound: int, limit: int = DEFAULT_POOL_LIMIT) -> List[Tuple[int, ...]]:
        if not self.invariants:
            return [()]
        window = AbelianGroup([d for d in self.invariants])
        return [e.value for e in window.elements(bound, limit)]


class Subgroup(object):
    """The subgroup of an abelian carrier spanned by some elements."""

    def __init__(self, carrier: AbelianGroup, generators: Sequence[GroupElement]):
        self.carrier = carrier
        for g in generators:
            carrier._check(g)
        self.generators = [g for g in generators if not g.is_zero()]
        relations = carrier.relations()
        gens = columns([g.value for g in self.generators], carrier.rank)
        self._stacked = hstack(gens, relations) if carrier.rank else []
        self._ncols = len(self.generators) + (len(relations[0]) if relations else 0)
        self._form = smith_normal_form(self._stacked, self._ncols)
        self._abstract: Optional[Quotient] = None

    def __repr__(self) -> str:
        return "Subgroup(%s)" % ", ".join(str(g) for g in self.generators)

    def _solve(self, x: GroupElement) -> Optional[List[int]]:
        self.carrier._check(x)
        solution = solve_with(self._form, x.value)
        return None if solution is None else solution[: len(self.generators)]

    def contains(self, x: GroupElement) -> bool:
        return self._solve(x) is not None

    def includes(self, other: "Subgroup") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.carrier, self.generators + other.generators)

    def image(self, func: Callable[[GroupElement], GroupElement], carrier: AbelianGroup) -> "Subgroup":
        return Subgroup(carrier, [func(g) for g in self.generators])

    @property
    def abstract(self) -> Quotient:
        """Z^g modulo the relations among the generators."""
        if self._abstract is None:
            g = len(self.generators)
            relations = [vector[:g] for vector in kernel_basis_with(self._form)]
            self._abstract = Quotient(columns(relations, g), len(relations))
        return self._abstract

    @property
    def invariants(self) -> Tuple[int, ...]:
        return self.abstract.invariants

    def is_finite(self) -> bool:
        return self.abstract.is_finite()

    def coordinates(self, x: GroupElement) -> Tuple[int, ...]:
        weights = self._solve(x)
        if weights is None:
            raise ValueError("%s is not in the subgroup" % x)
        return self.abstract.coordinates(weights)

    def section(self, coords: Sequence[int]) -> GroupElement:
        weights = self.abstract.section(coords)
        result = self.carrier.zero()
        for w, g in zip(weights, self.generators):
            result = result + g * w
        return result

    def basis(self) -> List[GroupElement]:
        k = len(self.invariants)
        return [self.section([1 if i == j else 0 for i in range(k)]) for j in range(k)]

    def elements(self, limit: int = DEFAULT_POOL_LIMIT) -> Optional[List[GroupElement]]:
        """Every element when the subgroup is finite and small enough."""
        if not self.is_finite():
            return None
        found = {self.carrier.zero()}
        frontier = [self.carrier.zero()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x + g
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
                        if len(found) > limit:
                            return None
            frontier = nxt
        return sorted(found, key=lambda e: e.value)


def kernel(hom: Hom) -> Subgroup:
    stacked, ncols = _lift_matrix(hom)
    form = smith_normal_form(stacked, ncols)
    rank = hom.source.rank
    gens = [hom.source.element(v[:rank]) for v in kernel_basis_with(form)]
    if not stacked:
        # the target is trivial: everything is in the kernel
        gens = hom.source.generators()
    return Subgroup(hom.source, gens)


def check_class2(
    carrier: GroupCarrier,
    bound: int = 2,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
) -> SuiteReport:
    runner = LawRunner("carrier", laws, max_tuples)
    pool = carrier.elements(bound)
    zero = carrier.zero()

    def associativity() -> Iterator[Case]:
        for a, b, c in bounded_product([pool] * 3, max_tuples):
            yield Case({"a": a, "b": b, "c": c}, (a + b) + c, a + (b + c))

    def identity_law() -> Iterator[Case]:
        for a in pool:
            yield Case({"a": a}, zero + a, a, "left")
            yield Case({"a": a}, a + zero, a, "right")

    def inverse() -> Iterator[Case]:
        for a in pool:
            yield Case({"a": a}, -a + a, zero, "left")
            yield Case({"a": a}, a + -a, zero, "right")

    def central() -> Iterator[Case]:
        for g, h, k in bounded_product([pool] * 3, max_tuples):
            yield Case(
                {"g": g, "h": h, "k": k},
                carrier.commutator(g, carrier.commutator(h, k)),
                zero,
            )

    def bilinear() -> Iterator[Case]:
        for g, g2, h in bounded_product([pool] * 3, max_tuples):
            c = carrier.commutator
            yield Case({"g": g, "g'": g2, "h": h}, c(g + g2, h), c(g, h) + c(g2, h), "left")
            yield Case({"g": h, "h": g, "h'": g2}, c(h, g + g2), c(h, g) + c(h, g2), "right")

    runner.run("G1", "associativity", associativity)
    runner.run("G2", "zero is a two-sided identity", identity_law)
    runner.run("G3", "negation is a two-sided inverse", inverse)
    runner.run("C1", "commutators are central", central)
    runner.run("C2", "commutator is bilinear", bilinear)
    return runner.report()


def describe_carrier(carrier: GroupCarrier) -> Dict[str, Any]:
    if isinstance(carrier, AbelianGroup):
        return {"kind": carrier.kind, "orders": list(carrier.orders), "names": list(carrier.names)}
    return {"kind": carrier.kind, "order": len(carrier.elements(0))}
