"""
E-infinity structure on a graded quadratic pair algebra.

An EinftyQPA adds to its base algebra right actions of the symmetric groups
and of their track extensions, and a cup-one product x1 cup x2 landing in
level 1 of degree n1 + n2. The derived operation is the secondary square
Sq_1 on even-degree classes of h_0, valued in h_1 of twice the degree.

Right actions compose as precomposition: x.[gh] = (x.[g]).[h].
"""
import itertools
import logging
from typing import Any
from typing import Dict
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from pydantic import BaseModel
from pydantic import Field

from groups import GroupElement
from laws import Case
from laws import DEFAULT_BRACKET_BOUND
from laws import DEFAULT_MAX_TUPLES
from laws import LawRunner
from laws import QpaError
from laws import SKIP
from laws import SuiteReport
from qpa import bracket
from qpa import BracketUndefined
from qpa import Coset
from qpa import degree_combos
from qpa import ElementPools
from qpa import GradedQPA
from qpa import H0Class
from qpa import MasseyResult
from qpa import over_combos
from qpa import Table
from trackgroup import all_perms
from trackgroup import block_shuffle
from trackgroup import cross_perm
from trackgroup import DegreeMismatch
from trackgroup import Perm
from trackgroup import shuffle_lift
from trackgroup import sign_binom
from trackgroup import suspend_left
from trackgroup import suspend_right
from trackgroup import track_group
from trackgroup import TrackElem

logger = logging.getLogger(__name__)

EINFTY_BOUND = 2
LIFTS = ("tauhat", "omega")


class OddDegree(QpaError):
    pass


class NotACycle(QpaError):
    pass


def _check_degree(x: GroupElement, n: int) -> None:
    if x.carrier.degree != n:
        raise DegreeMismatch("element of degree %s acted on by a group of degree %d" % (x.carrier.degree, n))


class SymActionData(object):
    """
    Right actions on each degree of a graded structure.

    act0_perm and act1_perm are the actions of Sigma_n on levels 0 and 1,
    act0_track sends x in degree n and t in the track group of degree n to
    x.[t] in level 1, and actee_pair is the action of pairs (g, g') on the
    ee level.
    """

    def act0_perm(self, x: GroupElement, g: Perm) -> GroupElement:
        raise NotImplementedError

    def act1_perm(self, s: GroupElement, g: Perm) -> GroupElement:
        raise NotImplementedError

    def act0_track(self, x: GroupElement, t: TrackElem) -> GroupElement:
        raise NotImplementedError

    def actee_pair(self, a: GroupElement, g: Perm, h: Perm) -> GroupElement:
        raise NotImplementedError


class SignActions(SymActionData):
    """
    Permutations act through their sign. A track t acts as bit(t) times the
    k-invariant: the section s(g) of a permutation acts as 0 and w acts as
    eta, so x.[w] = x.eta.

    Where C_ee = 0, as in every instance built from a crossed module, eta
    vanishes and every track acts as 0. Among the built-ins w acts nontrivially
    only in degree 0 of zsigma.
    """

    def __init__(self, base: GradedQPA):
        self.base = base
        for n in base.degrees():
            if n >= 2 and base.carrier(n, "ee").rank:
                logger.warning(
                    "%s: sign actions with a nonzero ee level in degree %d; tracks act through eta only",
                    base.name,
                    n,
                )

    def act0_perm(self, x: GroupElement, g: Perm) -> GroupElement:
        _check_degree(x, g.degree)
        return x * g.sign()

    def act1_perm(self, s: GroupElement, g: Perm) -> GroupElement:
        _check_degree(s, g.degree)
        return s * g.sign()

    def act0_track(self, x: GroupElement, t: TrackElem) -> GroupElement:
        _check_degree(x, t.degree)
        return self.base.eta(x) * t.bit

    def actee_pair(self, a: GroupElement, g: Perm, h: Perm) -> GroupElement:
        _check_degree(a, g.degree)
        _check_degree(a, h.degree)
        return a * (g.sign() * h.sign())


class EinftyQPA(object):
    def __init__(
        self,
        base: GradedQPA,
        actions: Optional[SymActionData] = None,
        cupone: Optional[Dict[Tuple[int, int], Table]] = None,
    ):
        self.base = base
        self.actions = actions or SignActions(base)
        self.cupone = dict(cupone or {})
        for (n, m), table in self.cupone.items():
            rows, cols = base.carrier(n, "0").rank, base.carrier(m, "0").rank
            if len(table) != rows or any(len(row) != cols for row in table):
                raise ValueError("cup-one table (%d, %d) is not %d x %d" % (n, m, rows, cols))

    @property
    def name(self) -> str:
        return self.base.name

    def __repr__(self) -> str:
        return "EinftyQPA(%r)" % self.base.name

    def cup(self, x: GroupElement, y: GroupElement) -> GroupElement:
        n, m = x.carrier.degree, y.carrier.degree
        B = self.base
        B.carrier(n, "0")._check(x)
        B.carrier(m, "0")._check(y)
        target = B.carrier(n + m, "1")
        table = self.cupone.get((n, m))
        if table is None or n + m > B.truncation:
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

    def act(self, x: GroupElement, g: Any) -> GroupElement:
        if isinstance(g, TrackElem):
            return self.actions.act0_track(x, g)
        if x.carrier.level == "1":
            return self.actions.act1_perm(x, g)
        return self.actions.act0_perm(x, g)

    def TH(self, x: GroupElement) -> GroupElement:
        B = self.base
        return B.module(x.carrier.degree).T(B.H(x))


class SquareResult(BaseModel):
    degree: int
    class_: str = Field(..., alias="class")
    value: str
    lift: str

    class Config:
        allow_population_by_field_name = True


def _canonical(E: EinftyQPA, a: Any) -> GroupElement:
    if isinstance(a, H0Class):
        return a.canonical()
    return E.base.canonical(a)


def _lift_track(d: int, lift: str) -> TrackElem:
    if lift not in LIFTS:
        raise ValueError("unknown lift %r, expected one of %s" % (lift, ", ".join(LIFTS)))
    t = shuffle_lift(d, d)
    return t.flip() if lift == "omega" else t


def square_of_representative(E: EinftyQPA, x: GroupElement, lift: str = "tauhat") -> GroupElement:
    """-(x x).[lift] + x cup x - P(H(x) TH(x)).[tau_{d,d}] for x of even degree d."""
    B = E.base
    d = x.carrier.degree
    if d % 2:
        raise OddDegree("Sq_1 needs an even degree, got %d" % d)
    t = _lift_track(d, lift)
    correction = B.P(B.mul(B.H(x), E.TH(x)))
    value = -E.act(B.mul(x, x), t) + E.cup(x, x) - E.actions.act1_perm(correction, block_shuffle(d, d))
    if not B.d(value).is_zero():
        raise NotACycle("Sq_1 of %s is %s, which is not a cycle" % (x, value))
    return value


def sq1(E: EinftyQPA, a: Any, lift: str = "tauhat") -> GroupElement:
    return square_of_representative(E, _canonical(E, a), lift)


def sq1_omega(E: EinftyQPA, a: Any) -> GroupElement:
    return sq1(E, a, "omega")


def square_result(E: EinftyQPA, a: Any, lift: str = "tauhat") -> SquareResult:
    x = _canonical(E, a)
    return SquareResult(degree=x.carrier.degree, class_=str(x), value=str(sq1(E, x, lift)), lift=lift)


def power_operation_set(E: EinftyQPA, a: Any) -> List[GroupElement]:
    """The values Sq_1(a) and Sq_1(a) + a^2 eta of the two lifts."""
    x = _canonical(E, a)
    value = sq1(E, x)
    return sorted({value, value + E.base.eta(E.base.mul(x, x))}, key=lambda e: e.value)


class _Sampler(object):
    def __init__(self, E: EinftyQPA, bound: int, max_tuples: int, seed: int):
        self.elements = ElementPools(E.base, bound)
        self.top = E.base.truncation
        self.max_tuples = max_tuples
        self.seed = seed

    def pool(self, kind: str, n: int) -> List[Any]:
        if kind == "perm":
            return all_perms(n)
        if kind == "track":
            return track_group(n).elements()
        return self.elements(n, kind)

    def over(self, spec: Sequence[Tuple[str, int]], arity: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[Any, ...]]]:
        combos = degree_combos(self.top, arity, self.top)

        def pools(combo):
            return [self.pool(kind, combo[slot]) for kind, slot in spec]

        return over_combos(combos, pools, self.max_tuples, self.seed)


def check_equivariance(
    E: EinftyQPA,
    bound: int = EINFTY_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    seed: int = 0,
) -> SuiteReport:
    B = E.base
    runner = LawRunner("equivariance", laws, max_tuples)
    sampler = _Sampler(E, bound, max_tuples, seed)
    act, mul = E.act, B.mul

    def products() -> Iterator[Case]:
        for _, (x1, g1, x2, g2) in sampler.over([("0", 0), ("perm", 0), ("0", 1), ("perm", 1)], 2):
            yield Case(
                {"x1": x1, "g1": g1, "x2": x2, "g2": g2},
                mul(act(x1, g1), act(x2, g2)),
                act(mul(x1, x2), cross_perm(g1, g2)),
            )

    def level1_products() -> Iterator[Case]:
        for _, (s1, g1, x2, g2) in sampler.over([("1", 0), ("perm", 0), ("0", 1), ("perm", 1)], 2):
            yield Case(
                {"s1": s1, "g1": g1, "x2": x2, "g2": g2},
                mul(act(s1, g1), act(x2, g2)),
                act(mul(s1, x2), cross_perm(g1, g2)),
            )

    def ee_products() -> Iterator[Case]:
        pair = E.actions.actee_pair
        spec = [("ee", 0), ("perm", 0), ("perm", 0), ("ee", 1), ("perm", 1), ("perm", 1)]
        for _, (a1, g1, h1, a2, g2, h2) in sampler.over(spec, 2):
            yield Case(
                {"a1": a1, "g1": g1, "g1'": h1, "a2": a2, "g2": g2, "g2'": h2},
                mul(pair(a1, g1, h1), pair(a2, g2, h2)),
                pair(mul(a1, a2), cross_perm(g1, g2), cross_perm(h1, h2)),
            )

    def left_tracks() -> Iterator[Case]:
        for (n1, _), (x1, x2, r2) in sampler.over([("0", 0), ("0", 1), ("track", 1)], 2):
            yield Case(
                {"x1": x1, "x2": x2, "r2": r2},
                mul(x1, act(x2, r2)),
                act(mul(x1, x2), suspend_left(n1, r2)),
            )

    def mixed_products() -> Iterator[Case]:
        for _, (x1, g1, s2, g2) in sampler.over([("0", 0), ("perm", 0), ("1", 1), ("perm", 1)], 2):
            if not B.H(x1).is_zero():
                yield SKIP
                continue
            yield Case(
                {"x1": x1, "g1": g1, "s2": s2, "g2": g2},
                mul(act(x1, g1), act(s2, g2)),
                act(mul(x1, s2), cross_perm(g1, g2)),
            )

    def right_tracks() -> Iterator[Case]:
        for (_, n2), (x1, r1, x2) in sampler.over([("0", 0), ("track", 0), ("0", 1)], 2):
            if not (B.H(x1).is_zero() and B.H(x2).is_zero()):
                yield SKIP
                continue
            yield Case(
                {"x1": x1, "r1": r1, "x2": x2},
                mul(act(x1, r1), x2),
                act(mul(x1, x2), suspend_right(r1, n2)),
            )

    runner.run("EQ1", "(x1.[g1])(x2.[g2]) = (x1 x2).[g1 x g2]", products)
    runner.run("EQ2", "(s1.[g1])(x2.[g2]) = (s1 x2).[g1 x g2]", level1_products)
    runner.run("EQ3", "products of ee elements are equivariant", ee_products)
    runner.run("EQ4", "x1 (x2.[r2]) = (x1 x2).[S^n1 r2]", left_tracks)
    runner.run("O1", "(x1.[g1])(s2.[g2]) = (x1 s2).[g1 x g2]", mixed_products, note="needs H(x1) = 0")
    runner.run("O2", "(x1.[r1]) x2 = (x1 x2).[r1 S^n2]", right_tracks, note="needs H(x1) = H(x2) = 0")
    return runner.report()


def check_cupone_laws(
    E: EinftyQPA,
    bound: int = EINFTY_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    seed: int = 0,
) -> SuiteReport:
    B = E.base
    runner = LawRunner("cup-one", laws, max_tuples)
    sampler = _Sampler(E, bound, max_tuples, seed)
    act, mul, cup, TH = E.act, B.mul, E.cup, E.TH
    d, H, P = B.d, B.H, B.P

    def no_H(*xs: GroupElement) -> bool:
        return all(H(x).is_zero() for x in xs)

    def commutes_up_to_boundary() -> Iterator[Case]:
        for (n1, n2), (x1, x2) in sampler.over([("0", 0), ("0", 1)], 2):
            tau = block_shuffle(n1, n2)
            yield Case(
                {"x1": x1, "x2": x2},
                act(mul(x2, x1), tau) + d(cup(x1, x2)),
                mul(x1, x2) + act(d(P(mul(H(x2), TH(x1)))), tau),
            )

    def boundary_in_first_slot() -> Iterator[Case]:
        for (n1, n2), (s1, x2) in sampler.over([("1", 0), ("0", 1)], 2):
            tau = block_shuffle(n1, n2)
            yield Case(
                {"s1": s1, "x2": x2},
                act(mul(x2, s1), tau) + cup(d(s1), x2),
                mul(s1, x2) + act(P(mul(H(x2), TH(d(s1)))), tau),
            )

    def symmetry() -> Iterator[Case]:
        for (n1, n2), (x1, x2) in sampler.over([("0", 0), ("0", 1)], 2):
            tau = block_shuffle(n1, n2)
            yield Case(
                {"x1": x1, "x2": x2},
                act(cup(x2, x1), tau) + cup(x1, x2),
                -P(mul(TH(x1), H(x2))) + act(P(mul(H(x2), TH(x1))), tau),
            )

    def additivity() -> Iterator[Case]:
        for (n1, n2), (x1, x2, x3) in sampler.over([("0", 0), ("0", 1), ("0", 1)], 2):
            pair = B.crossed(d(cup(x1, x2)), act(mul(x3, x1), block_shuffle(n1, n2)))
            yield Case(
                {"x1": x1, "x2": x2, "x3": x3},
                cup(x1, x2 + x3),
                cup(x1, x2) + cup(x1, x3) + P(pair),
            )

    def left_multiplicativity() -> Iterator[Case]:
        for (n1, n2, n3), (x1, x2, x3) in sampler.over([("0", 0), ("0", 1), ("0", 2)], 3):
            inner = cross_perm(Perm.identity(n1), block_shuffle(n2, n3))
            outer = block_shuffle(n1 + n2, n3)
            x1x1 = B.crossed(x1, x1)
            pair = B.crossed(d(cup(x1, x3)), act(mul(x3, x1), block_shuffle(n1, n3)))
            rhs = act(mul(cup(x1, x3), x2), inner) + mul(x1, cup(x2, x3))
            rhs = rhs + act(P(mul(pair, H(x2))), inner)
            rhs = rhs + act(P(mul(mul(H(x3), x1x1), TH(x2))), outer)
            rhs = rhs - act(P(mul(mul(x1x1, H(x3)), TH(x2))), inner)
            yield Case({"x1": x1, "x2": x2, "x3": x3}, cup(mul(x1, x2), x3), rhs)

    def equivariance() -> Iterator[Case]:
        for _, (x1, g1, x2, g2) in sampler.over([("0", 0), ("perm", 0), ("0", 1), ("perm", 1)], 2):
            yield Case(
                {"x1": x1, "g1": g1, "x2": x2, "g2": g2},
                cup(act(x1, g1), act(x2, g2)),
                act(cup(x1, x2), cross_perm(g1, g2)),
            )

    def boundary_in_second_slot() -> Iterator[Case]:
        for (n1, n2), (x1, s2) in sampler.over([("0", 0), ("1", 1)], 2):
            if not no_H(x1):
                yield SKIP
                continue
            yield Case(
                {"x1": x1, "s2": s2},
                act(mul(s2, x1), block_shuffle(n1, n2)) + cup(x1, d(s2)),
                mul(x1, s2),
            )

    def left_additivity() -> Iterator[Case]:
        for (n1, n3), (x1, x2, x3) in sampler.over([("0", 0), ("0", 0), ("0", 1)], 2):
            if not no_H(x1, x2, x3):
                yield SKIP
                continue
            pair = B.crossed(d(cup(x1, x3)), act(mul(x3, x2), block_shuffle(n1, n3)))
            yield Case(
                {"x1": x1, "x2": x2, "x3": x3},
                cup(x1 + x2, x3),
                cup(x1, x3) + cup(x2, x3) + P(pair),
            )

    def right_multiplicativity() -> Iterator[Case]:
        for (n1, n2, n3), (x1, x2, x3) in sampler.over([("0", 0), ("0", 1), ("0", 2)], 3):
            if not no_H(x1, x2, x3):
                yield SKIP
                continue
            moved = cross_perm(block_shuffle(n1, n2), Perm.identity(n3))
            yield Case(
                {"x1": x1, "x2": x2, "x3": x3},
                cup(x1, mul(x2, x3)),
                act(mul(x2, cup(x1, x3)), moved) + mul(cup(x1, x2), x3),
            )

    def hexagon() -> Iterator[Case]:
        for (n1, n2, n3), (x1, x2, x3) in sampler.over([("0", 0), ("0", 1), ("0", 2)], 3):
            if not no_H(x1, x2, x3):
                yield SKIP
                continue
            yield Case(
                {"x1": x1, "x2": x2, "x3": x3},
                cup(x1, mul(x2, x3)),
                act(cup(mul(x3, x1), x2), block_shuffle(n1 + n2, n3)) + cup(mul(x1, x2), x3),
            )

    hypothesis = "needs H = 0 on the inputs"
    runner.run("LC1", "(x2 x1).[tau] + d(x1 cup x2) = x1 x2 + dP(H(x2) TH(x1)).[tau]", commutes_up_to_boundary)
    runner.run("LC2", "(x2 s1).[tau] + ds1 cup x2 = s1 x2 + P(H(x2) THds1).[tau]", boundary_in_first_slot)
    runner.run("C1C", "cup-one is symmetric up to the H correction", symmetry)
    runner.run("C1P", "cup-one is additive in the second slot", additivity)
    runner.run("C1M", "cup-one with a product on the left", left_multiplicativity)
    runner.run("C1E", "cup-one is equivariant", equivariance)
    runner.run("O3", "(s2 x1).[tau] + x1 cup ds2 = x1 s2", boundary_in_second_slot, note=hypothesis)
    runner.run("O4", "cup-one is additive in the first slot", left_additivity, note=hypothesis)
    runner.run("O5", "x1 cup (x2 x3) = (x2 (x1 cup x3)).[tau x 1] + (x1 cup x2) x3", right_multiplicativity, note=hypothesis)
    runner.run("O6", "x1 cup (x2 x3) = ((x3 x1) cup x2).[tau] + (x1 x2) cup x3", hexagon, note=hypothesis)
    return runner.report()


def check_action_groupring_laws(
    E: EinftyQPA,
    bound: int = EINFTY_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    seed: int = 0,
) -> SuiteReport:
    B = E.base
    runner = LawRunner("group-ring", laws, max_tuples)
    sampler = _Sampler(E, bound, max_tuples, seed)
    act = E.act
    D = B.truncation

    def identity() -> Iterator[Case]:
        for (n,), (x, s, a) in sampler.over([("0", 0), ("1", 0), ("ee", 0)], 1):
            one = Perm.identity(n)
            yield Case({"x": x}, act(x, one), x, "level 0")
            yield Case({"s": s}, act(s, one), s, "level 1")
            yield Case({"a": a}, E.actions.actee_pair(a, one, one), a, "ee level")

    def composition() -> Iterator[Case]:
        for _, (x, s, g, h) in sampler.over([("0", 0), ("1", 0), ("perm", 0), ("perm", 0)], 1):
            yield Case({"x": x, "g": g, "h": h}, act(x, g * h), act(act(x, g), h), "level 0")
            yield Case({"s": s, "g": g, "h": h}, act(s, g * h), act(act(s, g), h), "level 1")

    def boundary() -> Iterator[Case]:
        for _, (x, t) in sampler.over([("0", 0), ("track", 0)], 1):
            yield Case({"x": x, "t": t}, B.d(act(x, t)), -act(x, t.perm) + x * t.epsilon())

    def products() -> Iterator[Case]:
        for _, (x, s, t) in sampler.over([("0", 0), ("track", 0), ("track", 0)], 1):
            twist = sign_binom(s.epsilon()) * sign_binom(t.epsilon())
            yield Case(
                {"x": x, "s": s, "t": t},
                act(x, s * t),
                act(act(x, s.perm), t) + act(x, s) * t.epsilon() + B.eta(x) * twist,
            )

    def omega() -> Iterator[Case]:
        for (n,), (x,) in sampler.over([("0", 0)], 1):
            yield Case({"x": x}, act(x, track_group(n).omega()), B.eta(x))

    def unit_track() -> Iterator[Case]:
        for (n,), (x,) in sampler.over([("0", 0)], 1):
            yield Case({"x": x}, act(x, track_group(n).identity()), B.carrier(n, "1").zero())

    def other_products() -> Iterator[Case]:
        for _, (x, s, t) in sampler.over([("0", 0), ("track", 0), ("track", 0)], 1):
            yield Case(
                {"x": x, "s": s, "t": t},
                act(x, s * t),
                act(act(x, s), t.perm) + act(x, t) * s.epsilon(),
            )

    def exchange() -> Iterator[Case]:
        for n, m in degree_combos(D, 2, D):
            pools = [sampler.pool("0", n + m), sampler.pool("track", n)]
            for x, t in itertools.islice(itertools.product(*pools), max_tuples):
                tau = block_shuffle(n, m)
                yield Case(
                    {"x": x, "t": t, "m": m},
                    act(act(x, suspend_left(m, t)), tau),
                    act(act(x, tau), suspend_right(t, m)),
                )

    def modulo_boundaries() -> Iterator[Case]:
        for (n,), (x, g) in sampler.over([("0", 0), ("perm", 0)], 1):
            difference = act(x, g) - x * g.sign()
            yield Case({"x": x, "g": g}, difference, "boundary", holds=B.module(n).is_boundary(difference))

    def shuffle_square() -> Iterator[Case]:
        for k in range(D // 4 + 1):
            tau = block_shuffle(2 * k, 2 * k)
            lift = shuffle_lift(2 * k, 2 * k)
            for x in sampler.pool("0", 4 * k):
                yield Case({"x": x}, act(act(x, tau), lift) + act(x, lift), B.eta(x) * k)

    runner.run("S2", "[1] acts as the identity", identity)
    runner.run("S3", "x.[gh] = (x.[g]).[h]", composition)
    runner.run("S4", "d(x.[t]) = -x.[delta t] + eps(t) x", boundary)
    runner.run("S5", "x.[st] = (x.[delta s]).[t] + eps(t) x.[s] + twist x eta", products)
    runner.run("S6", "x.[w] = x eta", omega)
    runner.run("GR1", "x.[1] = 0 for the unit track", unit_track)
    runner.run("GR2", "x.[st] = (x.[s]).[delta t] + eps(s) x.[t]", other_products)
    runner.run("GR3", "(x.[S^m t]).[tau] = (x.[tau]).[t S^m]", exchange)
    runner.run("GR4", "x.[g] = eps(g) x modulo boundaries", modulo_boundaries)
    runner.run("GR5", "(x.[tau]).[tauhat] + x.[tauhat] = k x eta in degree 4k", shuffle_square)
    return runner.report()


def check_einfty_axioms(
    E: EinftyQPA,
    bound: int = EINFTY_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    seed: int = 0,
) -> SuiteReport:
    reports = [
        check_equivariance(E, bound, max_tuples, laws, seed),
        check_cupone_laws(E, bound, max_tuples, laws, seed),
        check_action_groupring_laws(E, bound, max_tuples, laws, seed),
    ]
    return SuiteReport(suite="einfty", laws=[law for r in reports for law in r.laws])


def _even_classes(E: EinftyQPA, bound: int) -> Iterator[H0Class]:
    B = E.base
    for n in B.degrees():
        if n % 2 == 0:
            yield from B.classes(n, bound)


def lor2_check(
    E: EinftyQPA,
    bound: int = DEFAULT_BRACKET_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
) -> SuiteReport:
    B = E.base
    runner = LawRunner("square", laws, max_tuples)

    def lifts_differ_by_eta() -> Iterator[Case]:
        for a in _even_classes(E, bound):
            x = a.canonical()
            yield Case({"a": a}, sq1(E, a, "omega"), sq1(E, a) + B.eta(B.mul(x, x)))

    def representatives() -> Iterator[Case]:
        for a in _even_classes(E, bound):
            x = a.canonical()
            M = B.module(a.degree)
            expected = square_of_representative(E, x)
            for s in M.c1.elements(bound):
                y = x + M.d(s)
                yield Case({"a": a, "representative": y}, square_of_representative(E, y), expected)

    runner.run("LOR2", "Sq_1^w(a) = Sq_1(a) + a^2 eta", lifts_differ_by_eta)
    runner.run("SQREP", "Sq_1 does not depend on the representative", representatives)
    return runner.report()


def sq1_representative_check(
    E: EinftyQPA,
    bound: int = DEFAULT_BRACKET_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
) -> SuiteReport:
    return lor2_check(E, bound, max_tuples, laws="SQREP")


def _signed(coset: Coset, sign: int) -> Coset:
    return coset if sign > 0 else -coset


def check_comm_toda_laws(
    E: EinftyQPA,
    lift: str = "tauhat",
    bound: int = DEFAULT_BRACKET_BOUND,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    square_bound: Optional[int] = None,
) -> SuiteReport:
    """
    Brackets and Sq_1 in a commutative setting, under the chosen lift.

    Bracket laws enumerate classes within `bound`; the Sq_1 laws are cheap and
    use the wider `square_bound` when given.
    """
    B = E.base
    D = B.truncation
    wide = bound if square_bound is None else square_bound
    square_classes = {n: B.classes(n, wide) for n in B.degrees()}
    suffix = ".omega" if lift == "omega" else ""
    runner = LawRunner("comm-toda" + suffix, laws, max_tuples)
    classes = {n: B.classes(n, bound) for n in B.degrees()}
    cache: Dict[Tuple[H0Class, H0Class, H0Class], Optional[MasseyResult]] = {}
    squares: Dict[H0Class, GroupElement] = {}

    def br(a: H0Class, b: H0Class, c: H0Class) -> Optional[MasseyResult]:
        key = (a, b, c)
        if key not in cache:
            try:
                cache[key] = bracket(B, a, b, c)
            except BracketUndefined:
                cache[key] = None
        return cache[key]

    def sq(a: H0Class) -> GroupElement:
        if a not in squares:
            squares[a] = sq1(E, a, lift)
        return squares[a]

    def sign(k: int) -> int:
        return -1 if k % 2 else 1

    def triples() -> Iterator[Tuple[H0Class, H0Class, H0Class]]:
        for p, q, r in degree_combos(D, 3, D):
            yield from itertools.product(classes[p], classes[q], classes[r])

    def reversal() -> Iterator[Optional[Case]]:
        for a, b, c in triples():
            m, r = br(a, b, c), br(c, b, a)
            if m is None or r is None:
                yield SKIP
                continue
            p, q, s = a.degree, b.degree, c.degree
            flipped = _signed(r.coset, sign(p * q + q * s + s * p + 1))
            yield Case({"a": a, "b": b, "c": c}, m, flipped, holds=m.coset.equals(flipped))

    def jacobi() -> Iterator[Optional[Case]]:
        for a, b, c in triples():
            parts = [br(a, b, c), br(b, c, a), br(c, a, b)]
            if any(m is None for m in parts):
                yield SKIP
                continue
            p, q, s = a.degree, b.degree, c.degree
            total = _signed(parts[0].coset, sign(p * s))
            total = total + _signed(parts[1].coset, sign(q * p))
            total = total + _signed(parts[2].coset, sign(s * q))
            yield Case({"a": a, "b": b, "c": c}, total, "contains 0", holds=total.contains(total.rep.carrier.zero()))

    def odd_symmetric() -> Iterator[Optional[Case]]:
        for p, q in degree_combos(D, 2, D):
            if p % 2 == 0 or 2 * p + q > D:
                continue
            for a, b in itertools.product(classes[p], classes[q]):
                m, r = br(a, b, a), br(b, a, a * 2)
                if m is None or r is None:
                    yield SKIP
                    continue
                other = _signed(r.coset, sign(p * q))
                yield Case({"a": a, "b": b}, m, other, holds=m.coset.intersects(other))

    def even_symmetric() -> Iterator[Optional[Case]]:
        for p, q in degree_combos(D, 2, D):
            if p % 2 or 2 * p + q > D:
                continue
            for a, b in itertools.product(classes[p], classes[q]):
                m = br(a, b, a)
                if m is None:
                    yield SKIP
                    continue
                value = B.mul(b.canonical(), sq(a)) * sign(p * q)
                yield Case({"a": a, "b": b}, value, m, holds=m.contains(value))

    def additivity() -> Iterator[Case]:
        for n in range(0, D + 1, 2):
            for a, b in itertools.product(square_classes[n], repeat=2):
                x, y = a.canonical(), b.canonical()
                yield Case(
                    {"a": a, "b": b},
                    sq(a + b),
                    sq(a) + sq(b) + B.eta(B.mul(x, y)) * (n // 2 + 1),
                )

    def multiplicativity() -> Iterator[Case]:
        for n, m in degree_combos(D, 2, D):
            if n % 2 or m % 2:
                continue
            for a, b in itertools.product(square_classes[n], square_classes[m]):
                x, y = a.canonical(), b.canonical()
                xx, yy = B.mul(x, x), B.mul(y, y)
                rhs = B.mul(xx, sq(b)) + B.mul(sq(a), yy) + B.eta(B.mul(xx, yy)) * (n * m // 4)
                yield Case({"a": a, "b": b}, sq(a * b), rhs)

    unit = H0Class(B, B.unit)

    def square_of_one() -> Iterator[Case]:
        yield Case({"a": unit}, sq(unit), B.carrier(0, "1").zero())

    def square_of_two() -> Iterator[Case]:
        yield Case({"a": unit * 2}, sq(unit * 2), B.eta(B.unit))

    def twice_square() -> Iterator[Case]:
        for a in _even_classes(E, wide):
            x = a.canonical()
            yield Case({"a": a}, sq(a) * 2, B.eta(B.mul(x, x)) * (a.degree // 2))

    def square_of_double() -> Iterator[Case]:
        for a in _even_classes(E, wide):
            x = a.canonical()
            yield Case({"a": a}, sq(a * 2), B.eta(B.mul(x, x)))

    runner.run("T7" + suffix, "<a,b,c> = +-<c,b,a>", reversal)
    runner.run("T8" + suffix, "the signed cyclic sum of brackets contains 0", jacobi)
    runner.run("T9" + suffix, "<a,b,a> meets +-<b,a,2a> for odd a", odd_symmetric)
    runner.run("T10" + suffix, "+-b Sq_1(a) lies in <a,b,a> for even a", even_symmetric)
    runner.run("T11" + suffix, "Sq_1(a+b) = Sq_1(a) + Sq_1(b) + (|a|/2+1) ab eta", additivity)
    runner.run("T12" + suffix, "Sq_1(ab) = a^2 Sq_1(b) + Sq_1(a) b^2 + (|a||b|/4) a^2b^2 eta", multiplicativity)
    runner.run("MAS1" + suffix, "Sq_1(1) = 0", square_of_one)
    runner.run("MAS2" + suffix, "Sq_1(2) = eta", square_of_two)
    runner.run("MAS3" + suffix, "2 Sq_1(a) = (|a|/2) a^2 eta", twice_square)
    runner.run("MAS4" + suffix, "Sq_1(2a) = a^2 eta", square_of_double)
    logger.debug("%s: %d brackets, %d squares computed", E.name, len(cache), len(squares))
    return runner.report()
