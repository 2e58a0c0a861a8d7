"""
Symmetric track groups: the central extensions of the symmetric groups by
{1, w} with generators t_i, and the shuffle lifts between them.

An element is stored as (perm, bit) and stands for w**bit * s(perm), where
s(perm) is the product of generators along the lexicographically smallest
reduced word of perm. Multiplying by a generator on the right changes the
bit by a cocycle read off the Clifford model in clifford.py; it is computed
once per (perm, generator) and kept.
"""
import functools
import itertools
import logging
import math
import re
import threading
from typing import Any
from typing import Dict
from typing import Iterable
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from clifford import Multivector
from clifford import relative_sign
from laws import binom2
from laws import bounded_product
from laws import Case
from laws import DEFAULT_MAX_TUPLES
from laws import LawRunner
from laws import QpaError
from laws import SuiteReport

logger = logging.getLogger(__name__)

EXHAUSTIVE_TRACK_DEGREE = 6
CLIFFORD_CHECK_DEGREE = 6
ASSOCIATIVITY_EXHAUSTIVE_DEGREE = 5
# products of sections are kept up to this degree (120 x 120 pairs)
PRODUCT_CACHE_DEGREE = 5


class DegreeMismatch(QpaError):
    pass


class GeneratorIndexError(QpaError):
    pass


class Perm(object):
    """A permutation of {0, ..., n-1} in one-line notation; (p*q)(i) = p(q(i))."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("not a permutation: %r" % (images,))
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def simple(cls, n: int, i: int) -> "Perm":
        """The transposition (i i+1), 1 <= i < n."""
        images = list(range(n))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(images)

    @classmethod
    def from_one_line(cls, values: Sequence[int]) -> "Perm":
        return cls(v - 1 for v in values)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise DegreeMismatch("cannot compose permutations of degree %d and %d" % (self.degree, other.degree))
        return Perm(self.images[j] for j in other.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def inversions(self) -> int:
        return sum(
            1
            for i, j in itertools.combinations(range(self.degree), 2)
            if self.images[i] > self.images[j]
        )

    def sign(self) -> int:
        return -1 if self.inversions() & 1 else 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __str__(self) -> str:
        sep = "" if self.degree < 10 else " "
        return sep.join(str(i + 1) for i in self.images) or "()"

    def __repr__(self) -> str:
        return "Perm(%s)" % self


def block_shuffle(n: int, m: int) -> Perm:
    """Exchange the first block of n letters with the last block of m letters."""
    return Perm(k + m if k < n else k - n for k in range(n + m))


def cross_perm(s: Perm, t: Perm) -> Perm:
    return Perm(s.images + tuple(s.degree + x for x in t.images))


def all_perms(n: int) -> List[Perm]:
    return [Perm(p) for p in itertools.permutations(range(n))]


@functools.lru_cache(maxsize=None)
def reduced_word(perm: Perm) -> Tuple[int, ...]:
    """Lexicographically smallest reduced word, as 1-based generator indices."""
    n = perm.degree
    word = []
    current = perm
    while True:
        position = current.inverse().images
        descent = next((i for i in range(1, n) if position[i] < position[i - 1]), None)
        if descent is None:
            return tuple(word)
        word.append(descent)
        current = Perm.simple(n, descent) * current


class TrackElem(object):
    __slots__ = ("degree", "perm", "bit")

    def __init__(self, degree: int, perm: Perm, bit: int = 0):
        if perm.degree != degree:
            raise DegreeMismatch("permutation of degree %d in a track group of degree %d" % (perm.degree, degree))
        self.degree = degree
        self.perm = perm
        self.bit = bit & 1

    @property
    def group(self) -> "TrackGroup":
        return track_group(self.degree)

    def __mul__(self, other: "TrackElem") -> "TrackElem":
        return self.group.mul(self, other)

    def __pow__(self, k: int) -> "TrackElem":
        if k < 0:
            return self.inverse() ** -k
        result = self.group.identity()
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "TrackElem":
        word = reduced_word(self.perm)
        r = from_word(self.degree, reversed(word))
        return TrackElem(self.degree, r.perm, r.bit ^ self.bit)

    def flip(self) -> "TrackElem":
        """w times this element."""
        return TrackElem(self.degree, self.perm, self.bit ^ 1)

    def delta(self) -> Perm:
        return self.perm

    def epsilon(self) -> int:
        return self.perm.sign()

    def word(self) -> Tuple[int, ...]:
        return reduced_word(self.perm)

    def is_identity(self) -> bool:
        return not self.bit and self.perm == Perm.identity(self.degree)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrackElem):
            return NotImplemented
        return (self.degree, self.perm, self.bit) == (other.degree, other.perm, other.bit)

    def __hash__(self) -> int:
        return hash((self.degree, self.perm, self.bit))

    def __str__(self) -> str:
        parts = ["w"] if self.bit else []
        parts += ["t%d" % i for i in self.word()]
        return " ".join(parts) or "1"

    def __repr__(self) -> str:
        return "<%s in degree %d>" % (self, self.degree)


class SignGroup(object):
    """
    An extension {1, w} -> G~ -> G followed by a sign G -> {+1, -1}.

    Subclasses provide the elements, iota, delta and epsilon.
    """

    def elements(self) -> List[Any]:
        raise NotImplementedError

    def omega(self) -> Any:
        return self.iota(-1)

    def iota(self, sign: int) -> Any:
        raise NotImplementedError

    def delta(self, t: Any) -> Any:
        raise NotImplementedError

    def epsilon(self, g: Any) -> int:
        raise NotImplementedError


class TrackGroup(SignGroup):
    def __init__(self, degree: int):
        self.degree = degree
        self._lock = threading.RLock()
        self._sections: Dict[Perm, Multivector] = {}
        self._right_bits: Dict[Tuple[Perm, int], int] = {}
        self._products: Dict[Tuple[Perm, Perm], Tuple[Perm, int]] = {}

    def __repr__(self) -> str:
        return "TrackGroup(%d)" % self.degree

    def identity(self) -> TrackElem:
        return TrackElem(self.degree, Perm.identity(self.degree))

    def iota(self, sign: int) -> TrackElem:
        return TrackElem(self.degree, Perm.identity(self.degree), 1 if sign < 0 else 0)

    def omega_power(self, k: int) -> TrackElem:
        return TrackElem(self.degree, Perm.identity(self.degree), k & 1)

    def generator(self, i: int) -> TrackElem:
        if not 1 <= i < self.degree:
            raise GeneratorIndexError("t%d does not exist in degree %d" % (i, self.degree))
        return TrackElem(self.degree, Perm.simple(self.degree, i))

    def generators(self) -> List[TrackElem]:
        return [self.generator(i) for i in range(1, self.degree)]

    def delta(self, t: TrackElem) -> Perm:
        return t.perm

    def epsilon(self, g: Perm) -> int:
        return g.sign()

    def elements(self) -> List[TrackElem]:
        return [
            TrackElem(self.degree, perm, bit)
            for perm in sorted(all_perms(self.degree))
            for bit in (0, 1)
        ]

    def section(self, perm: Perm) -> Multivector:
        """Clifford image of s(perm)."""
        with self._lock:
            found = self._sections.get(perm)
            if found is not None:
                return found
            word = reduced_word(perm)
            if not word:
                value = Multivector.one()
            else:
                rest = Perm.simple(self.degree, word[0]) * perm
                value = Multivector.generator(word[0]) * self.section(rest)
            self._sections[perm] = value
            return value

    def clifford(self, t: TrackElem) -> Multivector:
        value = self.section(t.perm)
        return -value if t.bit else value

    def right_bit(self, perm: Perm, i: int) -> int:
        """s(perm) * t_i == w**bit * s(perm * s_i)."""
        key = (perm, i)
        with self._lock:
            bit = self._right_bits.get(key)
            if bit is not None:
                return bit
            target = perm * Perm.simple(self.degree, i)
            sign = relative_sign(self.section(target), self.section(perm), Multivector.generator(i))
            if sign is None:
                raise QpaError("Clifford sections of %s and %s do not match" % (perm, target))
            bit = 0 if sign > 0 else 1
            self._right_bits[key] = bit
            return bit

    def mul(self, a: TrackElem, b: TrackElem) -> TrackElem:
        if a.degree != self.degree or b.degree != self.degree:
            raise DegreeMismatch(
                "cannot multiply elements of degree %d and %d in degree %d"
                % (a.degree, b.degree, self.degree)
            )
        key = (a.perm, b.perm)
        found = self._products.get(key)
        if found is None:
            perm, bit = a.perm, 0
            for j in reduced_word(b.perm):
                bit ^= self.right_bit(perm, j)
                perm = perm * Perm.simple(self.degree, j)
            found = (perm, bit)
            if self.degree <= PRODUCT_CACHE_DEGREE:
                self._products[key] = found
        perm, bit = found
        return TrackElem(self.degree, perm, bit ^ a.bit ^ b.bit)

    def cocycle(self, p: Perm, q: Perm) -> int:
        """s(p) * s(q) == w**c * s(pq)."""
        return self.mul(TrackElem(self.degree, p), TrackElem(self.degree, q)).bit


@functools.lru_cache(maxsize=None)
def track_group(degree: int) -> TrackGroup:
    return TrackGroup(degree)


WORD_TOKEN = re.compile(r"\s*(?:t(\d+)|(w|ω|omega)|(1))\s*")


def parse_word(text: str) -> List[Any]:
    """'t1 t3 w' -> [1, 3, 'w']; '1' is the empty word."""
    tokens: List[Any] = []
    pos = 0
    text = text.replace("*", " ").replace("·", " ")
    while pos < len(text):
        match = WORD_TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError("cannot parse %r at position %d" % (text, pos))
        index, omega, _ = match.groups()
        if index:
            tokens.append(int(index))
        elif omega:
            tokens.append("w")
        pos = match.end()
    return tokens


def from_word(n: int, word: Iterable[Any]) -> TrackElem:
    group = track_group(n)
    perm = Perm.identity(n)
    bit = 0
    for symbol in word:
        if isinstance(symbol, str):
            if symbol in ("w", "ω", "omega"):
                bit ^= 1
                continue
            if not symbol.startswith("t") or not symbol[1:].isdigit():
                raise GeneratorIndexError("unknown generator %r" % symbol)
            symbol = int(symbol[1:])
        if not 1 <= symbol < n:
            raise GeneratorIndexError("t%d does not exist in degree %d" % (symbol, n))
        bit ^= group.right_bit(perm, symbol)
        perm = perm * Perm.simple(n, symbol)
    return TrackElem(n, perm, bit)


def suspend_left(k: int, t: TrackElem) -> TrackElem:
    """S^k smash t, with t_i sent to t_{k+i}."""
    r = from_word(t.degree + k, (i + k for i in t.word()))
    return TrackElem(r.degree, r.perm, r.bit ^ t.bit)


def suspend_right(t: TrackElem, k: int) -> TrackElem:
    """t smash S^k, with t_i fixed."""
    r = from_word(t.degree + k, t.word())
    return TrackElem(r.degree, r.perm, r.bit ^ t.bit)


def suspend(left: int, t: TrackElem, right: int) -> TrackElem:
    return suspend_right(suspend_left(left, t), right)


def shuffle_word(n: int, m: int) -> List[int]:
    """n groups of m generators: t_m ... t_1, then t_{m+1} ... t_2, and so on."""
    word = []
    for j in range(1, n + 1):
        word.extend(range(m + j - 1, j - 1, -1))
    return word


@functools.lru_cache(maxsize=None)
def shuffle_lift(n: int, m: int) -> TrackElem:
    return from_word(n + m, shuffle_word(n, m))


def sign_binom(sign: int) -> int:
    """binom(sign, 2) for a sign: 1 for -1 and 0 for +1."""
    return binom2(sign)


def cocycle_table(n: int) -> Tuple[List[Perm], List[List[int]]]:
    group = track_group(n)
    perms = sorted(all_perms(n))
    logger.debug("building the %d x %d cocycle table of degree %d", len(perms), len(perms), n)
    return perms, [[group.cocycle(p, q) for q in perms] for p in perms]


def verify_track_laws(
    n_max: int = EXHAUSTIVE_TRACK_DEGREE,
    clifford_nmax: int = CLIFFORD_CHECK_DEGREE,
    max_tuples: int = DEFAULT_MAX_TUPLES,
    laws: Optional[str] = None,
    seed: int = 0,
) -> SuiteReport:
    if n_max > EXHAUSTIVE_TRACK_DEGREE + 2:
        raise ValueError("n_max=%d is above the supported bound %d" % (n_max, EXHAUSTIVE_TRACK_DEGREE + 2))
    runner = LawRunner("track", laws, max_tuples)
    degrees = range(n_max + 1)

    def order() -> Iterator[Case]:
        for n in degrees:
            group = track_group(n)
            seen = {group.identity()}
            frontier = list(seen)
            moves = group.generators() + [group.omega()]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in moves:
                        y = x * g
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            yield Case({"n": n}, len(seen), 2 * math.factorial(n))

    def involutions() -> Iterator[Case]:
        for n in degrees:
            group = track_group(n)
            for t in group.generators():
                yield Case({"n": n, "t": t}, t * t, group.identity())

    def braid() -> Iterator[Case]:
        for n in degrees:
            group = track_group(n)
            for i in range(1, n - 1):
                x = group.generator(i) * group.generator(i + 1)
                yield Case({"n": n, "i": i}, x ** 3, group.identity())

    def omega_order() -> Iterator[Case]:
        for n in degrees:
            w = track_group(n).omega()
            yield Case({"n": n}, w * w, track_group(n).identity())

    def omega_central() -> Iterator[Case]:
        for n in degrees:
            group = track_group(n)
            w = group.omega()
            for t in group.generators():
                yield Case({"n": n, "t": t}, t * w, w * t)

    def distant() -> Iterator[Case]:
        for n in degrees:
            group = track_group(n)
            w = group.omega()
            for i in range(1, n):
                for j in range(i + 2, n):
                    ti, tj = group.generator(i), group.generator(j)
                    yield Case({"n": n, "i": i, "j": j}, ti * tj, w * tj * ti)

    def signs() -> Iterator[Case]:
        for n in degrees:
            for t in track_group(n).generators():
                yield Case({"t": t}, t.epsilon(), -1)

    def associativity() -> Iterator[Case]:
        # w is central (R4), so triples of sections cover every triple
        for n in range(min(n_max, ASSOCIATIVITY_EXHAUSTIVE_DEGREE) + 1):
            sections = [TrackElem(n, p) for p in sorted(all_perms(n))]
            for a, b, c in itertools.product(sections, repeat=3):
                yield Case({"a": a, "b": b, "c": c}, (a * b) * c, a * (b * c))
        for n in range(ASSOCIATIVITY_EXHAUSTIVE_DEGREE + 1, n_max + 1):
            pool = track_group(n).elements()
            for a, b, c in bounded_product([pool] * 3, max_tuples, seed):
                yield Case({"a": a, "b": b, "c": c}, (a * b) * c, a * (b * c), "sampled")

    def inverses() -> Iterator[Case]:
        for n in degrees:
            group = track_group(n)
            for a in group.elements():
                yield Case({"a": a}, a * a.inverse(), group.identity())

    def cambio() -> Iterator[Case]:
        for n in degrees:
            for m in range(n_max - n + 1):
                tau = shuffle_lift(n, m)
                w = track_group(n + m).omega_power
                for t in track_group(n).elements():
                    e = n * m * sign_binom(t.epsilon())
                    yield Case(
                        {"n": n, "m": m, "t": t},
                        suspend_left(m, t) * tau,
                        tau * suspend_right(t, m) * w(e),
                    )

    def recho1() -> Iterator[Case]:
        for p in degrees:
            for q in range(n_max - p + 1):
                w = track_group(p + q).omega_power
                yield Case(
                    {"p": p, "q": q},
                    shuffle_lift(p, q) * shuffle_lift(q, p),
                    w(binom2(p) * binom2(q)),
                )

    def recho2() -> Iterator[Case]:
        for p, q, r, s in itertools.product(degrees, repeat=4):
            if p + q + r + s > n_max:
                continue
            lhs = (
                suspend(r, shuffle_lift(p, s), q)
                * suspend_left(r + p, shuffle_lift(q, s))
                * suspend_right(shuffle_lift(p, r), q + s)
                * suspend(p, shuffle_lift(q, r), s)
            )
            e = r * s * (binom2(p) + binom2(q) + p * q)
            rhs = shuffle_lift(p + q, r + s) * track_group(p + q + r + s).omega_power(e)
            yield Case({"p": p, "q": q, "r": r, "s": s}, lhs, rhs)

    def tau_square() -> Iterator[Case]:
        k = 1
        while 4 * k <= n_max:
            tau = shuffle_lift(2 * k, 2 * k)
            yield Case({"n": k}, tau * tau, track_group(4 * k).omega_power(binom2(2 * k) ** 2))
            k += 1

    def cross() -> Iterator[Case]:
        for n in range(min(n_max, 6) + 1):
            for m in range(min(n_max, 6) - n + 1):
                tau = block_shuffle(n, m)
                for s in all_perms(n):
                    for t in all_perms(m):
                        yield Case(
                            {"sigma": s, "tau": t},
                            tau * cross_perm(s, t),
                            cross_perm(t, s) * tau,
                        )

    def stabilization() -> Iterator[Case]:
        for n in range(min(n_max, 5) + 1):
            for m in range(min(n_max, 5) - n + 1):
                for t in track_group(n).elements():
                    yield Case(
                        {"m": m, "t": t},
                        suspend_left(m, t).perm,
                        cross_perm(Perm.identity(m), t.perm),
                        "left",
                    )
                    yield Case(
                        {"m": m, "t": t},
                        suspend_right(t, m).perm,
                        cross_perm(t.perm, Perm.identity(m)),
                        "right",
                    )

    def suspension_homomorphism() -> Iterator[Case]:
        for n in range(min(n_max, 4) + 1):
            pool = track_group(n).elements()
            for k in range(1, 3):
                for a, b in bounded_product([pool, pool], max_tuples // 4, seed):
                    yield Case({"k": k, "a": a, "b": b}, suspend_left(k, a * b), suspend_left(k, a) * suspend_left(k, b), "left")
                    yield Case({"k": k, "a": a, "b": b}, suspend_right(a * b, k), suspend_right(a, k) * suspend_right(b, k), "right")
                images = {suspend_left(k, a) for a in pool}
                yield Case({"n": n, "k": k}, len(images), len(pool), "left injective")
                images = {suspend_right(a, k) for a in pool}
                yield Case({"n": n, "k": k}, len(images), len(pool), "right injective")
                w = track_group(n).omega()
                yield Case({"n": n, "k": k}, suspend_left(k, w), track_group(n + k).omega(), "left fixes w")
                yield Case({"n": n, "k": k}, suspend_right(w, k), track_group(n + k).omega(), "right fixes w")

    def fast_path() -> Iterator[Case]:
        for n in range(min(clifford_nmax, n_max) + 1):
            group = track_group(n)
            pool = group.elements()
            for a, b in itertools.product(pool, repeat=2):
                c = a * b
                sign = relative_sign(group.section(c.perm), group.section(a.perm), group.section(b.perm))
                if sign is None:
                    yield Case({"a": a, "b": b}, c, "no Clifford match", holds=False)
                    continue
                lhs = sign * (-1 if a.bit ^ b.bit else 1)
                yield Case({"a": a, "b": b}, lhs, -1 if c.bit else 1)

    runner.run("ORDER", "track group has order 2 n!", order)
    runner.run("R1", "t_i squares to 1", involutions)
    runner.run("R2", "(t_i t_i+1)^3 = 1", braid)
    runner.run("R3", "w squares to 1", omega_order)
    runner.run("R4", "w is central", omega_central)
    runner.run("R5", "distant generators commute up to w", distant)
    runner.run("EPS", "generators have sign -1", signs)
    runner.run("ASSOC", "multiplication is associative", associativity)
    runner.run("INV", "inverse law", inverses)
    runner.run("CAMBIO", "shuffle lift exchanges the two suspensions", cambio)
    runner.run("RECHO1", "shuffle lift times its reverse", recho1)
    runner.run("RECHO2", "four-fold shuffle identity", recho2)
    runner.run("TAUSQ", "square of the middle shuffle lift", tau_square)
    runner.run("CROSS", "block shuffle conjugates cross products", cross)
    runner.run("STAB", "suspensions cover the block permutations", stabilization)
    runner.run("SUSP", "suspensions are injective homomorphisms fixing w", suspension_homomorphism)
    runner.run("FAST", "fast product agrees with the Clifford model", fast_path)
    return runner.report()
