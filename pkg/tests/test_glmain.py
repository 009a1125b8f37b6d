from fractions import Fraction

import pytest

from glwhit.errors import DomainError, NotDominatedError
from glwhit.exactlin import jordan_type
from glwhit.glmain import construct, two_blocks
from glwhit.partitions import Partition, dominance_leq, partitions_of


def test_two_blocks_oracle():
    wit = two_blocks(2, 1, 1)
    assert wit.S.diagonal_entries() == (2, 0, -2, 0)
    assert list(wit.mu.parts) == [2, 2]
    y = wit.Y.matrix.entries
    assert y[1][0] == 1 and y[2][3] == -1 and y[0] == (0, 0, 0, 0)
    assert wit.all_checks_pass


def test_two_blocks_torus_branches():
    wit = two_blocks(1, 1, 0)
    assert wit.Y.is_zero()
    assert list(wit.mu.parts) == [1, 1]
    wit = two_blocks(2, 0, 2)
    assert list(wit.lam.parts) == [2, 2]
    assert jordan_type(wit.Y.matrix) == wit.mu


def test_two_blocks_domain():
    with pytest.raises(DomainError):
        two_blocks(1, 1, 2)   # p < r
    with pytest.raises(DomainError):
        two_blocks(0, 0, 0)


def test_construct_identity():
    wit = construct(Partition([2, 1]), Partition([2, 1]))
    assert wit.stages == ()
    assert jordan_type(wit.Y.matrix) == Partition([2, 1])


def test_construct_oracle_31_22():
    wit = construct(Partition([3, 1]), Partition([2, 2]))
    assert [int(x) for x in wit.S.diagonal_entries()] == [2, 0, -2, 0]
    assert len(wit.stages) == 1
    assert wit.all_checks_pass


def test_construct_to_zero_orbit():
    wit = construct(Partition([2, 1]), Partition([1, 1, 1]))
    assert wit.Y.is_zero()
    assert wit.all_checks_pass


def test_construct_rejects_non_dominated():
    with pytest.raises(NotDominatedError):
        construct(Partition([2, 2]), Partition([3, 1]))
    with pytest.raises(NotDominatedError):
        construct(Partition([2]), Partition([1, 1, 1]))


def test_construct_sweep_small():
    for n in range(1, 5):
        parts = list(partitions_of(n))
        for lam in parts:
            for mu in parts:
                if not dominance_leq(mu, lam):
                    continue
                wit = construct(lam, mu)
                assert wit.all_checks_pass, (lam, mu)
                assert jordan_type(wit.Y.matrix) == mu


def test_witness_json_shape():
    data = construct(Partition([3, 1]), Partition([2, 2])).to_json()
    assert data["S"] == [2, 0, -2, 0]
    assert set(data["checks"]) == {"grading", "integer_s",
                                   "conjugators_in_G_S", "jordan_type",
                                   "curve_limit", "closure"}
    assert all(data["checks"].values())
    assert len(data["conjugators"]) == len(data["curve"])
