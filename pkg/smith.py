"""
Smith normal form over the integers, with the unimodular transforms kept.

Matrices are lists of rows of Python ints. Since a matrix may have no rows,
the column count is always passed explicitly.
"""
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

Matrix = List[List[int]]


class SmithForm(NamedTuple):
    """left * A * right == diag(diagonal) padded with zeros."""

    rows: int
    cols: int
    left: Matrix
    left_inverse: Matrix
    right: Matrix
    diagonal: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_vec(matrix: Sequence[Sequence[int]], vector: Sequence[int]) -> List[int]:
    return [sum(a * b for a, b in zip(row, vector)) for row in matrix]


def columns(vectors: Sequence[Sequence[int]], rows: int) -> Matrix:
    """Place the given vectors side by side as columns."""
    return [[v[i] for v in vectors] for i in range(rows)]


def hstack(left: Sequence[Sequence[int]], right: Sequence[Sequence[int]]) -> Matrix:
    return [list(a) + list(b) for a, b in zip(left, right)]


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int) -> SmithForm:
    m = len(matrix)
    n = ncols
    a = [list(row) for row in matrix]
    u = identity(m)
    u_inv = identity(m)
    v = identity(n)

    def swap_rows(i: int, j: int) -> None:
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, c: int) -> None:
        # row_target += c * row_source
        a[target] = [x + c * y for x, y in zip(a[target], a[source])]
        u[target] = [x + c * y for x, y in zip(u[target], u[source])]
        for row in u_inv:
            row[source] -= c * row[target]

    def add_col(target: int, source: int, c: int) -> None:
        for row in a:
            row[target] += c * row[source]
        for row in v:
            row[target] += c * row[source]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for row in u_inv:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        entries = [
            (abs(a[i][j]), i, j)
            for i in range(t, m)
            for j in range(t, n)
            if a[i][j] != 0
        ]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            pivot = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // pivot
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, n):
                q = a[t][j] // pivot
                if q:
                    add_col(j, t, -q)
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            if rest:
                _, i, j = min(rest)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (
                    i
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if a[i][j] % pivot
                ),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    diagonal = tuple(a[i][i] for i in range(t))
    return SmithForm(m, n, u, u_inv, v, diagonal)


def solve_with(form: SmithForm, rhs: Sequence[int]) -> Optional[List[int]]:
    """An integer x with A x == rhs, or None."""
    z = mat_vec(form.left, rhs)
    w = [0] * form.cols
    for i, d in enumerate(form.diagonal):
        if z[i] % d:
            return None
        w[i] = z[i] // d
    if any(z[i] for i in range(form.rank, form.rows)):
        return None
    return mat_vec(form.right, w)


def solve(matrix: Sequence[Sequence[int]], ncols: int, rhs: Sequence[int]) -> Optional[List[int]]:
    return solve_with(smith_normal_form(matrix, ncols), rhs)


def kernel_basis_with(form: SmithForm) -> List[List[int]]:
    return [[row[j] for row in form.right] for j in range(form.rank, form.cols)]


def kernel_basis(matrix: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
    return kernel_basis_with(smith_normal_form(matrix, ncols))


class Quotient(object):
    """
    Z^m modulo the column span of a relation matrix, in invariant-factor
    coordinates. Unit factors are dropped; 0 stands for a free summand.
    """

    def __init__(self, relations: Sequence[Sequence[int]], nrels: int):
        self.ambient = len(relations)
        self.form = smith_normal_form(relations, nrels)
        factors = list(self.form.diagonal) + [0] * (self.ambient - self.form.rank)
        self.positions = [i for i, d in enumerate(factors) if d != 1]
        self.invariants: Tuple[int, ...] = tuple(factors[i] for i in self.positions)

    def coordinates(self, vector: Sequence[int]) -> Tuple[int, ...]:
        z = mat_vec(self.form.left, vector)
        return tuple(
            z[i] % d if d else z[i] for i, d in zip(self.positions, self.invariants)
        )

    def section(self, coords: Sequence[int]) -> List[int]:
        full = [0] * self.ambient
        for i, c in zip(self.positions, coords):
            full[i] = c
        return mat_vec(self.form.left_inverse, full)

    def is_zero(self, vector: Sequence[int]) -> bool:
        return not any(self.coordinates(vector))

    def is_trivial(self) -> bool:
        return not self.invariants

    def is_finite(self) -> bool:
        return all(d > 0 for d in self.invariants)


def describe_invariants(invariants: Sequence[int]) -> str:
    """(2, 0) -> 'Z/2 + Z'; () -> '0'."""
    if not invariants:
        return "0"
    return " + ".join("Z" if d == 0 else "Z/%d" % d for d in invariants)
