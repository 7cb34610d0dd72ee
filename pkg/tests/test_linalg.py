from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gradedrham.linalg import Matrix, RowSpace, in_affine, nullspace_basis, rank, solve, span_rank

import properties


def test_rank_examples():
    assert rank(Matrix.identity(2)) == 2
    assert rank(Matrix.zeros(3, 4)) == 0
    assert rank(Matrix([[1, 2], [2, 4]])) == 1


def test_rank_exact_with_fractions():
    m = Matrix([[Fraction(1, 3), Fraction(1, 2)], [Fraction(2, 3), 1]])
    assert rank(m) == 1
    assert rank(Matrix([[10**30 + 1, 10**30], [10**30, 10**30 - 1]])) == 2


def test_nullspace_examples():
    assert nullspace_basis(Matrix([[1, 1]])) == [[1, -1]]
    assert nullspace_basis(Matrix.identity(2)) == []
    m = Matrix([[1, 2, 3]])
    basis = nullspace_basis(m)
    assert len(basis) == 2
    assert span_rank(basis, 3) == 2
    for v in basis:
        assert m.apply(v) == [0]


def test_nullspace_deterministic_and_primitive():
    m = Matrix([[2, 4, 6, 8], [1, 1, 1, 1]])
    a, b = nullspace_basis(m), nullspace_basis(Matrix([[1, 1, 1, 1], [2, 4, 6, 8]]))
    assert a == b
    for v in a:
        assert next(x for x in v if x) > 0


def test_in_affine_examples():
    assert in_affine([0, 0], [[1, 2]], [[3, 4]]) == [0]
    assert in_affine([2, 4], [], [[1, 2]]) == []
    assert in_affine([1, 0], [[1, 1]], [[0, 1]]) == [1]
    assert in_affine([1, 0], [], [[0, 1]]) is None
    with pytest.raises(ValueError):
        in_affine([1, 0], [[1, 0, 0]], [])


def test_solve():
    m = Matrix([[1, 1], [1, -1]])
    assert solve(m, [2, 0]) == [1, 1]
    assert solve(Matrix([[1, 1], [2, 2]]), [1, 3]) is None
    with pytest.raises(ValueError):
        solve(m, [1])


def test_rowspace_incremental():
    s = RowSpace(3)
    assert s.add([1, 0, 1])
    assert not s.add([2, 0, 2])
    assert s.contains([Fraction(1, 2), 0, Fraction(1, 2)])
    assert not s.contains([0, 1, 0])
    assert s.dim == 1
    with pytest.raises(ValueError):
        s.add([1, 2])


def test_matrix_algebra():
    a = Matrix([[1, 2], [3, 4]])
    assert a @ Matrix.identity(2) == a
    assert (a ** 2) == a @ a
    assert a - a == Matrix.zeros(2, 2)
    assert a.transpose().column(0) == [1, 2]
    assert Matrix.from_columns([[1, 3], [2, 4]], 2) == a


@given(st.randoms(use_true_random=False))
def test_rank_nullity_property(rng):
    properties.check_rank_nullity(rng)
