import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glwhit.errors import NotDominatedError
from glwhit.partitions import (Composition, Partition, compositions_of,
                               dominance_leq, partitions_of, split_index)


def test_counts():
    assert sum(1 for _ in partitions_of(6)) == 11
    assert sum(1 for _ in compositions_of(5)) == 16
    assert list(partitions_of(0)) == [Partition(())]


def test_composition_vs_partition():
    c = Composition([1, 3, 2])
    assert c.total == 6
    assert c.sorted_decreasing() == Partition([3, 2, 1])
    with pytest.raises(AssertionError):
        Partition([1, 2])
    with pytest.raises(AssertionError):
        Composition([0, 1])


def test_part_access_and_conjugate():
    p = Partition([4, 2, 1])
    assert (p.part(1), p.part(3), p.part(9)) == (4, 1, 0)
    assert p.conjugate() == Partition([3, 2, 1, 1])
    assert p.conjugate().conjugate() == p


def test_dominance_oracles():
    assert dominance_leq(Partition([2, 2]), Partition([3, 1]))
    assert not dominance_leq(Partition([3, 1]), Partition([2, 2]))
    assert dominance_leq(Partition([3, 2]), Partition([4, 1]))
    assert dominance_leq(Partition([2, 1]), Partition([2, 1]))
    with pytest.raises(NotDominatedError):
        dominance_leq(Partition([2]), Partition([2, 1]))


def test_split_index_oracle():
    assert split_index(Partition([4, 4]), Partition([3, 3, 2])) == 2
    assert split_index(Partition([3, 1]), Partition([2, 2])) == 1
    with pytest.raises(NotDominatedError):
        split_index(Partition([2, 2]), Partition([3, 1]))


@st.composite
def _partition(draw, n):
    parts = []
    remaining = n
    cap = n
    while remaining:
        p = draw(st.integers(1, min(cap, remaining)))
        parts.append(p)
        cap = p
        remaining -= p
    return Partition(parts)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8).flatmap(
    lambda n: st.tuples(_partition(n), _partition(n), _partition(n))))
def test_dominance_is_partial_order(triple):
    a, b, c = triple
    assert dominance_leq(a, a)
    if dominance_leq(a, b) and dominance_leq(b, a):
        assert a == b
    if dominance_leq(a, b) and dominance_leq(b, c):
        assert dominance_leq(a, c)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(_partition(n), _partition(n))))
def test_conjugation_reverses_dominance(pair):
    mu, lam = pair
    assert dominance_leq(mu, lam) == dominance_leq(lam.conjugate(), mu.conjugate())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(_partition(n), _partition(n))))
def test_split_index_bracketing(pair):
    mu, lam = pair
    if not dominance_leq(mu, lam) or mu == lam:
        return
    i = split_index(lam, mu)
    assert lam.part(i) >= mu.part(i) >= lam.part(i + 1)
