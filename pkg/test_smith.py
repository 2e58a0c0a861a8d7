import pytest
from hypothesis import given
from hypothesis import strategies as st

from smith import describe_invariants
from smith import identity
from smith import kernel_basis
from smith import mat_vec
from smith import Quotient
from smith import smith_normal_form
from smith import solve


def matmul(a, b, inner):
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(len(b[0]) if b else 0)] for i in range(len(a))]


def diagonal_matrix(form):
    return [
        [form.diagonal[i] if i == j and i < form.rank else 0 for j in range(form.cols)]
        for i in range(form.rows)
    ]


matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda rows: st.integers(min_value=1, max_value=4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


class TestSmithNormalForm(object):
    @pytest.mark.parametrize(
        "matrix,ncols,diagonal",
        (
            ([[2, 4], [6, 8]], 2, (2, 4)),
            ([[2, 0], [0, 3]], 2, (1, 6)),
            ([[0, 0], [0, 0]], 2, ()),
            ([[-5]], 1, (5,)),
            ([[1, 2, 3]], 3, (1,)),
            ([[]], 0, ()),
        ),
    )
    def test_diagonal(self, matrix, ncols, diagonal):
        assert smith_normal_form(matrix, ncols).diagonal == diagonal

    @given(matrices)
    def test_transforms(self, matrix):
        ncols = len(matrix[0])
        form = smith_normal_form(matrix, ncols)
        product = matmul(matmul(form.left, matrix, form.rows), form.right, ncols)
        assert product == diagonal_matrix(form)
        assert matmul(form.left, form.left_inverse, form.rows) == identity(form.rows)

    @given(matrices)
    def test_divisibility_chain(self, matrix):
        diagonal = smith_normal_form(matrix, len(matrix[0])).diagonal
        assert all(d > 0 for d in diagonal)
        assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]))


class TestSolve(object):
    def test_solvable(self):
        assert solve([[2]], 1, [4]) == [2]

    def test_unsolvable(self):
        assert solve([[2]], 1, [3]) is None

    def test_zero_rows_beyond_rank(self):
        assert solve([[1], [0]], 1, [1, 1]) is None

    @given(matrices, st.lists(st.integers(min_value=-5, max_value=5), min_size=4, max_size=4))
    def test_solution_of_image(self, matrix, weights):
        ncols = len(matrix[0])
        rhs = mat_vec(matrix, weights[:ncols])
        x = solve(matrix, ncols, rhs)
        assert x is not None
        assert mat_vec(matrix, x) == rhs

    def test_kernel(self):
        basis = kernel_basis([[1, 1]], 2)
        assert len(basis) == 1
        assert mat_vec([[1, 1]], basis[0]) == [0]


class TestQuotient(object):
    @pytest.mark.parametrize(
        "relations,nrels,invariants",
        (
            ([[2]], 1, (2,)),
            ([[]], 0, (0,)),
            ([[2, 0], [0, 3]], 2, (6,)),
            ([[2, 0], [0, 0]], 2, (2, 0)),
            ([[1]], 1, ()),
        ),
    )
    def test_invariants(self, relations, nrels, invariants):
        assert Quotient(relations, nrels).invariants == invariants

    def test_coordinates_and_section(self):
        q = Quotient([[2, 0], [0, 3]], 2)
        assert q.is_finite()
        assert q.is_zero([2, 3])
        assert not q.is_zero([1, 0])
        for v in ([1, 0], [0, 1], [1, 1], [5, -4]):
            assert q.coordinates(q.section(q.coordinates(v))) == q.coordinates(v)

    def test_trivial(self):
        assert Quotient([[1]], 1).is_trivial()


class TestDescribe(object):
    @pytest.mark.parametrize(
        "invariants,text",
        (((), "0"), ((2, 0), "Z/2 + Z"), ((0,), "Z"), ((2, 4), "Z/2 + Z/4")),
    )
    def test_describe(self, invariants, text):
        assert describe_invariants(invariants) == text
