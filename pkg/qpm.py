"""
Quadratic pair modules C_ee --P--> C_1 --d--> C_0 with a quadratic map
H: C_0 -> C_ee, their derived maps T and Delta, homology and k-invariant.
"""
import logging
from typing import Callable
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from groups import AbelianGroup
from groups import Cokernel
from groups import GroupCarrier
from groups import GroupElement
from groups import Hom
from groups import kernel
from groups import Subgroup
from groups import UnsupportedCarrier
from laws import binom2
from laws import bounded_product
from laws import Case
from laws import DEFAULT_MAX_TUPLES
from laws import LawRunner
from laws import SuiteReport
from smith import hstack
from smith import kernel_basis
from smith import Quotient

logger = logging.getLogger(__name__)

QPM_BOUND = 6


class QuadraticMap(object):
    """
    A quadratic map out of an abelian group, from its values h_i on the
    generators and the symmetric pairing b_ij = (g_i|g_j)_H:

        H(sum n_i g_i) = sum n_i h_i + sum binom(n_i, 2) b_ii + sum_{i<j} n_i n_j b_ij
    """

    def __init__(
        self,
        source: GroupCarrier,
        target: AbelianGroup,
        values: Optional[Sequence[Sequence[int]]] = None,
        pairing: Optional[Sequence[Sequence[Sequence[int]]]] = None,
        func: Optional[Callable[[GroupElement], GroupElement]] = None,
    ):
        self.source = source
        self.target = target
        self.func = func
        self.values: List[List[int]] = []
        self.pairing: List[List[List[int]]] = []
        if func is None:
            if not isinstance(source, AbelianGroup):
                raise UnsupportedCarrier("a tabulated quadratic map needs an abelian source")
            rank = source.rank
            self.values = [list(v) for v in values] if values is not None else [[0] * target.rank] * rank
            if pairing is None:
                pairing = [[[0] * target.rank for _ in range(rank)] for _ in range(rank)]
            self.pairing = [[list(v) for v in row] for row in pairing]
            if len(self.values) != rank or len(self.pairing) != rank or any(len(r) != rank for r in self.pairing):
                raise ValueError("quadratic map on %s needs %d values and a %d x %d pairing" % (source.label, rank, rank, rank))

    @classmethod
    def zero(cls, source: AbelianGroup, target: AbelianGroup) -> "QuadraticMap":
        return cls(source, target)

    def __call__(self, x: GroupElement) -> GroupElement:
        self.source._check(x)
        if self.func is not None:
            return self.func(x)
        return self.evaluate_coefficients(x.value)

    def evaluate_coefficients(self, coeffs: Sequence[int]) -> GroupElement:
        """Expand on a coefficient vector that need not be reduced."""
        total = [0] * self.target.rank
        n = len(coeffs)
        for i in range(n):
            ci = coeffs[i]
            if not ci:
                continue
            c2 = binom2(ci)
            for k in range(self.target.rank):
                total[k] += ci * self.values[i][k] + c2 * self.pairing[i][i][k]
            for j in range(i + 1, n):
                if coeffs[j]:
                    cij = ci * coeffs[j]
                    for k in range(self.target.rank):
                        total[k] += cij * self.pairing[i][j][k]
        return self.target.element(total)

    def crossed(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self(x + y) - self(y) - self(x)

    def asymmetric_pair(self) -> Optional[Tuple[str, str]]:
        for i in range(len(self.pairing)):
            for j in range(i + 1, len(self.pairing)):
                if self.target.element(self.pairing[i][j]) != self.target.element(self.pairing[j][i]):
                    return self.source.names[i], self.source.names[j]
        return None

    def ill_defined_generator(self) -> Optional[str]:
        """A torsion generator g with H(g + order g) != H(g), or a pairing not killed by its order."""
        source = self.source
        for i, order in enumerate(source.orders):
            if not order:
                continue
            unit = [1 if k == i else 0 for k in range(source.rank)]
            shifted = [(1 + order) if k == i else 0 for k in range(source.rank)]
            if self.evaluate_coefficients(shifted) != self.evaluate_coefficients(unit):
                return source.names[i]
            for j in range(source.rank):
                if j == i:
                    continue
                other = [1 if k == j else 0 for k in range(source.rank)]
                moved = list(other)
                moved[i] += order
                if self.evaluate_coefficients(moved) != self.evaluate_coefficients(other):
                    return source.names[i]
        return None


class QuadraticPairModule(object):
    def __init__(
        self,
        c0: GroupCarrier,
        c1: GroupCarrier,
        cee: AbelianGroup,
        boundary: Hom,
        h: QuadraticMap,
        p: Hom,
        degree: int = 0,
        name: str = "",
    ):
        for hom, source, target, label in (
            (boundary, c1, c0, "boundary"),
            (h, c0, cee, "H"),
            (p, cee, c1, "P"),
        ):
            if hom.source != source or hom.target != target:
                raise ValueError("%s has the wrong source or target" % label)
        self.c0 = c0
        self.c1 = c1
        self.cee = cee
        self.boundary = boundary
        self.h = h
        self.p = p
        self.degree = degree
        self.name = name
        self._homology: Optional[Tuple[Cokernel, Subgroup]] = None

    def __repr__(self) -> str:
        return "QuadraticPairModule(%s, degree=%d)" % (self.name or "?", self.degree)

    def d(self, s: GroupElement) -> GroupElement:
        return self.boundary(s)

    def H(self, x: GroupElement) -> GroupElement:
        return self.h(x)

    def P(self, a: GroupElement) -> GroupElement:
        return self.p(a)

    def crossed_effect(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.H(x + y) - self.H(y) - self.H(x)

    def T(self, a: GroupElement) -> GroupElement:
        return self.H(self.d(self.P(a))) - a

    def delta(self, x: GroupElement) -> GroupElement:
        return self.crossed_effect(x, x) - self.H(x) + self.T(self.H(x))

    def eta(self, x: GroupElement) -> GroupElement:
        """x . eta = P(x|x)_H."""
        return self.P(self.crossed_effect(x, x))

    def homology(self) -> Tuple[Cokernel, Subgroup]:
        if self._homology is None:
            if not all(isinstance(c, AbelianGroup) for c in (self.c0, self.c1)):
                raise UnsupportedCarrier("homology needs abelian carriers")
            self._homology = (Cokernel(self.boundary), kernel(self.boundary))
        return self._homology

    def is_boundary(self, x: GroupElement) -> bool:
        if isinstance(self.c0, AbelianGroup):
            return self.homology()[0].in_image(x)
        return any(self.d(s) == x for s in self.c1.elements(0))

    def preimage(self, x: GroupElement) -> Optional[GroupElement]:
        if isinstance(self.c0, AbelianGroup):
            return self.homology()[0].preimage(x)
        return next((s for s in self.c1.elements(0) if self.d(s) == x), None)


def zero_module(degree: int = 0) -> QuadraticPairModule:
    zero = [AbelianGroup([], [], label="0", degree=degree, level=level) for level in ("0", "1", "ee")]
    c0, c1, cee = zero
    return QuadraticPairModule(
        c0, c1, cee, Hom.zero(c1, c0), QuadraticMap.zero(c0, cee), Hom.zero(cee, c1), degree
    )


def crossed_effect(M: QuadraticPairModule, x: GroupElement, y: GroupElement) -> GroupElement:
    return M.crossed_effect(x, y)


def t_map(M: QuadraticPairModule, a: GroupElement) -> GroupElement:
    return M.T(a)


def delta_map(M: QuadraticPairModule, x: GroupElement) -> GroupElement:
    return M.delta(x)


def homology(M: QuadraticPairModule) -> Tuple[Cokernel, Subgroup]:
    return M.homology()


def k_invariant(M: QuadraticPairModule, x: GroupElement) -> GroupElement:
    """The k-invariant on a representative of an h_0 class; lands in ker d."""
    return M.eta(x)


def check_qpm_axioms(
    M: QuadraticPairModule,
    bound: int = QPM_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    seed: int = 0,
) -> SuiteReport:
    runner = LawRunner("qpm", laws, max_tuples)
    c0 = M.c0.elements(bound)
    c1 = M.c1.elements(bound)
    cee = M.cee.elements(bound)
    d, H, P, T = M.d, M.H, M.P, M.T
    ce = M.crossed_effect

    def pairs(a, b):
        return bounded_product([a, b], max_tuples, seed)

    def m1() -> Iterator[Case]:
        for a in cee:
            yield Case({"a": a}, P(H(d(P(a)))), P(a) + P(a))

    def m2() -> Iterator[Case]:
        for x, a in pairs(c0, cee):
            yield Case({"x": x, "a": a}, H(x + d(P(a))), H(x) + H(d(P(a))))

    def m3() -> Iterator[Case]:
        for s1, s2 in pairs(c1, c1):
            yield Case(
                {"s1": s1, "s2": s2},
                P(H(d(s1) + d(s2))),
                P(H(d(s1))) + P(H(d(s2))) + M.c1.commutator(s1, s2),
            )

    def m4() -> Iterator[Case]:
        for x1, x2 in pairs(c0, c0):
            yield Case(
                {"x1": x1, "x2": x2},
                d(P(H(x1 + x2))),
                d(P(H(x1))) + d(P(H(x2))) + M.c0.commutator(x1, x2),
            )

    def d1() -> Iterator[Case]:
        yield Case({}, H(M.c0.zero()), M.cee.zero())

    def d2() -> Iterator[Case]:
        for x in c0:
            yield Case({"x": x}, H(-x), -H(x) + ce(x, x))

    def d3() -> Iterator[Case]:
        for x1, x2, y in bounded_product([c0, c0, c0], max_tuples, seed):
            yield Case({"x1": x1, "x2": x2, "y": y}, ce(x1 + x2, y), ce(x1, y) + ce(x2, y), "left")
            yield Case({"x": y, "y1": x1, "y2": x2}, ce(y, x1 + x2), ce(y, x1) + ce(y, x2), "right")

    def d4() -> Iterator[Case]:
        for x1, x2 in pairs(c0, c0):
            yield Case({"x1": x1, "x2": x2}, T(ce(x1, x2)), -ce(x2, x1))

    def d5() -> Iterator[Case]:
        for x1, x2 in pairs(c0, c0):
            yield Case({"x1": x1, "x2": x2}, P(ce(x1, x2)), -P(ce(x2, x1)))

    def d6() -> Iterator[Case]:
        for a in cee:
            yield Case({"a": a}, T(T(a)), a, "involution")
        for a, b in pairs(cee, cee):
            yield Case({"a": a, "b": b}, T(a + b), T(a) + T(b), "homomorphism")

    def d7() -> Iterator[Case]:
        for a in cee:
            yield Case({"a": a}, P(T(a)), P(a))

    def d8() -> Iterator[Case]:
        for x, y in pairs(c0, c0):
            yield Case({"x": x, "y": y}, M.delta(x + y), M.delta(x) + M.delta(y), "additive")
        for x in c0:
            yield Case({"x": x}, P(M.delta(x)), P(ce(x, x)), "P Delta")

    def n1() -> Iterator[Case]:
        for x, s in pairs(c0, c1):
            conj = -x + d(s) + x
            yield Case({"x": x, "s": s}, conj, "image of d", holds=M.is_boundary(conj))

    def n2() -> Iterator[Case]:
        for a, s in pairs(cee, c1):
            yield Case({"a": a, "s": s}, P(a) + s, s + P(a))

    def n3() -> Iterator[Case]:
        for s, s2 in pairs(c1, c1):
            if d(s) != M.c0.zero():
                continue
            yield Case({"s": s, "s'": s2}, s + s2, s2 + s)

    runner.run("M1", "PHdP(a) = P(a) + P(a)", m1)
    runner.run("M2", "H(x + dP(a)) = H(x) + HdP(a)", m2)
    runner.run("M3", "PH(ds1 + ds2) = PHds1 + PHds2 + [s1, s2]", m3)
    runner.run("M4", "dPH(x1 + x2) = dPH(x1) + dPH(x2) + [x1, x2]", m4)
    runner.run("D1", "H(0) = 0", d1)
    runner.run("D2", "H(-x) = -H(x) + (x|x)_H", d2)
    runner.run("D3", "crossed effect is bilinear", d3)
    runner.run("D4", "T(x1|x2)_H = -(x2|x1)_H", d4)
    runner.run("D5", "P(x1|x2)_H = -P(x2|x1)_H", d5)
    runner.run("D6", "T is an involutive homomorphism", d6)
    runner.run("D7", "PT = P", d7)
    runner.run("D8", "Delta is additive and P Delta(x) = P(x|x)_H", d8)
    runner.run("N1", "image of d is normal", n1)
    runner.run("N2", "image of P is central", n2)
    runner.run("N3", "kernel of d is central", n3)
    return runner.report()


class QpmMorphism(object):
    def __init__(
        self,
        source: QuadraticPairModule,
        target: QuadraticPairModule,
        f0: Hom,
        f1: Hom,
        fee: Hom,
    ):
        for hom, a, b, label in (
            (f0, source.c0, target.c0, "f0"),
            (f1, source.c1, target.c1, "f1"),
            (fee, source.cee, target.cee, "fee"),
        ):
            if hom.source != a or hom.target != b:
                raise ValueError("%s has the wrong source or target" % label)
        self.source = source
        self.target = target
        self.f0 = f0
        self.f1 = f1
        self.fee = fee

    @classmethod
    def identity(cls, M: QuadraticPairModule) -> "QpmMorphism":
        return cls(M, M, Hom.identity(M.c0), Hom.identity(M.c1), Hom.identity(M.cee))

    @classmethod
    def zero(cls, source: QuadraticPairModule, target: QuadraticPairModule) -> "QpmMorphism":
        return cls(
            source,
            target,
            Hom.zero(source.c0, target.c0),
            Hom.zero(source.c1, target.c1),
            Hom.zero(source.cee, target.cee),
        )


def check_morphism(
    f: QpmMorphism,
    bound: int = QPM_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
) -> SuiteReport:
    runner = LawRunner("morphism", laws, max_tuples)
    S, D = f.source, f.target

    def f1_law() -> Iterator[Case]:
        for s in S.c1.elements(bound):
            yield Case({"s": s}, f.f0(S.d(s)), D.d(f.f1(s)))

    def f2_law() -> Iterator[Case]:
        for a in S.cee.elements(bound):
            yield Case({"a": a}, f.f1(S.P(a)), D.P(f.fee(a)))

    def f3_law() -> Iterator[Case]:
        for x in S.c0.elements(bound):
            yield Case({"x": x}, f.fee(S.H(x)), D.H(f.f0(x)))

    runner.run("F1", "f0 d = d f1", f1_law)
    runner.run("F2", "f1 P = P fee", f2_law)
    runner.run("F3", "fee H = H f0", f3_law)
    return runner.report()


def _diagonal(invariants: Sequence[int]) -> List[List[int]]:
    k = len(invariants)
    return [[invariants[i] if i == j else 0 for j in range(k)] for i in range(k)]


def induced_is_iso(matrix: List[List[int]], source: Sequence[int], target: Sequence[int]) -> bool:
    """
    Whether the map Z^s/diag(source) -> Z^t/diag(target) given by an integer
    matrix (rows = target coordinates) is an isomorphism.
    """
    ns, nt = len(source), len(target)
    stacked = hstack(matrix, _diagonal(target)) if nt else []
    if not Quotient(stacked, ns + nt).is_trivial():
        return False
    for vector in kernel_basis(stacked, ns + nt):
        head = vector[:ns]
        if any((c % d if d else c) for c, d in zip(head, source)):
            return False
    return True


def is_quasi_iso(f: QpmMorphism) -> bool:
    h0s, h1s = f.source.homology()
    h0t, h1t = f.target.homology()
    k0s, k0t = len(h0s.invariants), len(h0t.invariants)
    m0 = [[0] * k0s for _ in range(k0t)]
    for j, g in enumerate(h0s.generators()):
        for i, c in enumerate(h0t.coordinates(f.f0(g))):
            m0[i][j] = c
    k1s, k1t = len(h1s.invariants), len(h1t.invariants)
    m1 = [[0] * k1s for _ in range(k1t)]
    for j, g in enumerate(h1s.basis()):
        for i, c in enumerate(h1t.coordinates(f.f1(g))):
            m1[i][j] = c
    result = induced_is_iso(m0, h0s.invariants, h0t.invariants) and induced_is_iso(
        m1, h1s.invariants, h1t.invariants
    )
    logger.debug("quasi-isomorphism check: %s", result)
    return result
