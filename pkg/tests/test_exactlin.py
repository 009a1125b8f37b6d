from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glwhit.errors import AmbientMismatchError, NotNilpotentError
from glwhit.exactlin import (QMatrix, Subspace, jordan_type, kernel, parse_rat,
                             rank, rat_str, solve_affine)


def test_rat_str_roundtrip():
    for x in [Fraction(0), Fraction(3), Fraction(-7, 2), Fraction(22, 7)]:
        assert parse_rat(rat_str(x)) == x
    assert rat_str(Fraction(4, 2)) == "2"
    assert rat_str(Fraction(-1, 3)) == "-1/3"


def test_matrix_basics():
    m = QMatrix([[1, 2], [3, 4]])
    assert m * m.inverse() == QMatrix.identity(2)
    assert m.transpose().entries == ((1, 3), (2, 4))
    assert m.trace() == 5
    assert (m - m).is_zero()
    assert QMatrix.elementary(3, 1, 2)[0, 1] == 1
    assert QMatrix.diagonal([1, 2]).is_diagonal()


def test_rank_and_kernel():
    m = QMatrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(m) == 2
    k = kernel(m)
    assert k.dim == 1
    for row in k.basis:
        assert all(sum(m.entries[i][j] * row[j] for j in range(3)) == 0
                   for i in range(3))


def test_solve_affine():
    m = QMatrix([[1, 1], [0, 1]])
    sol = solve_affine(m, [3, 1])
    assert sol == (2, 1)
    # inconsistent system
    assert solve_affine(QMatrix([[1, 1], [1, 1]]), [0, 1]) is None


def test_jordan_type_oracles():
    # single nilpotent block of size 3
    j3 = QMatrix([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert list(jordan_type(j3).parts) == [3]
    # 2+2 block structure
    m = QMatrix([[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]])
    assert list(jordan_type(m).parts) == [2, 2]
    assert list(jordan_type(QMatrix.zeros(2)).parts) == [1, 1]
    with pytest.raises(NotNilpotentError):
        jordan_type(QMatrix.identity(2))


def test_subspace_canonical_equality():
    a = Subspace(3, [(1, 0, 0), (0, 1, 0)])
    b = Subspace(3, [(2, 2, 0), (3, -1, 0)])
    assert a == b
    assert hash(a) == hash(b)
    assert a.dim == 2
    # pivot-normalized RREF
    assert a.basis == ((1, 0, 0), (0, 1, 0))


def test_subspace_lattice():
    x = Subspace(3, [(1, 0, 0)])
    y = Subspace(3, [(0, 1, 0)])
    assert (x + y).dim == 2
    assert x.intersect(y).dim == 0
    assert (x + y).contains((5, -7, 0))
    assert not (x + y).contains((0, 0, 1))
    assert (x + y).contains_subspace(x)
    with pytest.raises(AmbientMismatchError):
        x.intersect(Subspace(4, [(1, 0, 0, 0)]))


def test_complement_basis():
    small = Subspace(3, [(1, 0, 0)])
    big = Subspace.full(3)
    comp = small.complement_basis_in(big)
    assert len(comp) == 2
    total = small + Subspace(3, comp)
    assert total == big


_vec = st.lists(st.integers(-4, 4), min_size=4, max_size=4)


@settings(max_examples=60, deadline=None)
@given(st.lists(_vec, min_size=0, max_size=4), st.lists(_vec, min_size=0, max_size=4))
def test_dimension_formula(rows_a, rows_b):
    a = Subspace(4, rows_a)
    b = Subspace(4, rows_b)
    assert (a + b).dim + a.intersect(b).dim == a.dim + b.dim
    assert (a + b).contains_subspace(a)
    assert a.contains_subspace(a.intersect(b))


@settings(max_examples=40, deadline=None)
@given(st.lists(_vec, min_size=1, max_size=4))
def test_kernel_dimension(rows):
    m = QMatrix(rows)
    assert rank(m) + kernel(m).dim == m.cols
