"""
Exact Clifford algebra of R^n with e_i * e_i = +1.

This is the reference model for the symmetric track groups: the generator
t_i is sent to (e_i - e_{i+1}) / sqrt(2). A multivector stores integer
coefficients on basis blades (bitmasks) together with a scale s, so that its
value is sum(c * e_blade) * 2 ** (-s / 2).
"""
from typing import Dict
from typing import Iterable
from typing import Optional
from typing import Tuple


def blade_sign(a: int, b: int) -> int:
    """Sign of reordering e_a * e_b into canonical increasing order."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


class Multivector(object):
    __slots__ = ("terms", "scale")

    def __init__(self, terms: Dict[int, int], scale: int = 0):
        terms = {blade: c for blade, c in terms.items() if c}
        while scale >= 2 and terms and all(c % 2 == 0 for c in terms.values()):
            terms = {blade: c // 2 for blade, c in terms.items()}
            scale -= 2
        self.terms = terms
        self.scale = scale

    @classmethod
    def one(cls) -> "Multivector":
        return cls({0: 1})

    @classmethod
    def generator(cls, i: int) -> "Multivector":
        """Image of t_i, for 1 <= i."""
        return cls({1 << (i - 1): 1, 1 << i: -1}, 1)

    @classmethod
    def product_of(cls, indices: Iterable[int]) -> "Multivector":
        result = cls.one()
        for i in indices:
            result = result * cls.generator(i)
        return result

    def __mul__(self, other: "Multivector") -> "Multivector":
        terms: Dict[int, int] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                blade = a ^ b
                terms[blade] = terms.get(blade, 0) + blade_sign(a, b) * x * y
        return Multivector(terms, self.scale + other.scale)

    def __neg__(self) -> "Multivector":
        return Multivector({b: -c for b, c in self.terms.items()}, self.scale)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.terms == other.terms and self.scale == other.scale

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.scale))

    def __repr__(self) -> str:
        body = " + ".join("%d*e%s" % (c, bin(b)[2:]) for b, c in sorted(self.terms.items()))
        return "(%s) / 2^(%d/2)" % (body or "0", self.scale)

    def leading(self) -> Tuple[int, int]:
        """Smallest blade with a nonzero coefficient, and that coefficient."""
        blade = min(self.terms)
        return blade, self.terms[blade]

    def coefficient_of_product(self, other: "Multivector", blade: int) -> int:
        """The blade coefficient of self * other, without the other terms."""
        total = 0
        for a, x in self.terms.items():
            y = other.terms.get(a ^ blade)
            if y:
                total += blade_sign(a, a ^ blade) * x * y
        return total


def relative_sign(value: Multivector, left: Multivector, right: Multivector) -> Optional[int]:
    """
    +1 or -1 when left * right == sign * value, read off one coefficient.

    Both sides are pin elements over the same permutation, so they agree up
    to sign; None means the chosen coefficient vanished and they do not.
    """
    blade, c = value.leading()
    d = left.coefficient_of_product(right, blade)
    if d == 0:
        return None
    return 1 if (c > 0) == (d > 0) else -1
