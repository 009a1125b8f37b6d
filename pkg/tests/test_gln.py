from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glwhit.exactlin import QMatrix, jordan_type
from glwhit.gln import (LieElement, ad_matrix, centralizer, is_neutral,
                        jordan_chains, jordan_matrix, neutral_h, sl2_complete)
from glwhit.partitions import Partition, partitions_of


def test_jordan_matrix_and_h():
    j = jordan_matrix([3, 1])
    assert j[1, 0] == 1 and j[2, 1] == 1 and j[3, 3] == 0
    assert list(jordan_type(j.matrix).parts) == [3, 1]
    h = neutral_h([3, 1])
    assert h.diagonal_entries() == (2, 0, -2, 0)
    assert h.bracket(j) == j.scale(-2)


_mat4 = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                 min_size=3, max_size=3)


@settings(max_examples=50, deadline=None)
@given(_mat4, _mat4, _mat4)
def test_bracket_identities(a, b, c):
    x, y, z = LieElement(a), LieElement(b), LieElement(c)
    assert x.bracket(y) == -(y.bracket(x))
    jac = (x.bracket(y.bracket(z)) + y.bracket(z.bracket(x))
           + z.bracket(x.bracket(y)))
    assert jac.is_zero()
    # trace form is invariant: <[x,y], z> = <x, [y,z]>
    assert x.bracket(y).pair(z) == x.pair(y.bracket(z))


@settings(max_examples=40, deadline=None)
@given(_mat4, _mat4)
def test_ad_matrix_consistency(a, b):
    x, y = LieElement(a), LieElement(b)
    ad = ad_matrix(x)
    v = y.to_vector()
    image = tuple(sum(ad.entries[i][j] * v[j] for j in range(9))
                  for i in range(9))
    assert image == x.bracket(y).to_vector()


def test_centralizer_dimension():
    # dim of the centralizer of J_eta is sum min(eta_i, eta_j)
    for eta in partitions_of(5):
        expected = sum(min(p, q) for p in eta.parts for q in eta.parts)
        assert centralizer(jordan_matrix(eta)).dim == expected


def test_jordan_chains_shape():
    f = jordan_matrix([2, 2, 1])
    chains = jordan_chains(f)
    assert sorted(len(c) for c in chains) == [1, 2, 2]
    mat = f.matrix
    for ch in chains:
        for a, b in zip(ch, ch[1:]):
            assert b == tuple(sum(mat.entries[i][j] * a[j] for j in range(5))
                              for i in range(5))


def test_sl2_complete_all_types():
    for n in range(1, 6):
        for eta in partitions_of(n):
            triple = sl2_complete(jordan_matrix(eta))
            assert triple.verify()
            if eta.parts and eta.parts[0] >= 2:
                assert jordan_type(triple.e.matrix) == eta


def test_sl2_complete_conjugated_input():
    g = QMatrix([[1, 1, 0], [0, 1, 2], [0, 0, 1]])
    f = LieElement(g * jordan_matrix([3]).matrix * g.inverse())
    triple = sl2_complete(f)
    assert triple.verify()


def test_is_neutral():
    f = jordan_matrix([2, 2])
    assert is_neutral(neutral_h([2, 2]), f)
    assert not is_neutral(LieElement.diagonal([1, -1, 3, 1]), f)
    # scaling h breaks the -2 weight condition
    assert not is_neutral(neutral_h([2, 2]).scale(2), f)
