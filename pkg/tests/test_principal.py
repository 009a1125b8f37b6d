from fractions import Fraction

import pytest

from glwhit.errors import NotCompatibleError, NotPLError
from glwhit.gln import LieElement, jordan_matrix, neutral_h
from glwhit.principal import (SimpleSystem, is_principal, pl_support,
                              plroot_system, principal_dominator,
                              principal_element)
from glwhit.whittaker import WhittakerPair

E = LieElement.elementary


def test_is_principal():
    assert is_principal(LieElement.diagonal([3, 1, -1, -3])).ordering == \
        (1, 2, 3, 4)
    assert is_principal(LieElement.diagonal([-1, 3, 1, -3])).ordering == \
        (2, 3, 1, 4)
    assert is_principal(LieElement.diagonal([1, 1])) is None
    assert is_principal(LieElement.diagonal([2, -1])) is None


def test_principal_element():
    delta = SimpleSystem((2, 1, 3))
    s = principal_element(delta)
    assert s.diagonal_entries() == (0, 2, -2)
    assert is_principal(s).ordering == (2, 1, 3)


def test_pl_support():
    delta = SimpleSystem((1, 2, 3, 4))
    f = E(4, 2, 1) + E(4, 4, 3)
    assert pl_support(f, delta) == (1, 3)
    with pytest.raises(NotCompatibleError):
        pl_support(E(4, 3, 1), delta)


def test_plroot_system_oracle_gl4():
    s = LieElement.diagonal([3, 1, -1, -3])
    f = E(4, 2, 1) + E(4, 4, 3)
    rs = plroot_system(WhittakerPair(s, f))
    assert rs.epsilon == Fraction(1, 2)
    assert rs.h_eps.diagonal_entries() == (Fraction(13, 4), Fraction(11, 4),
                                           Fraction(-11, 4), Fraction(-13, 4))
    assert rs.all_pass
    s_tilde = principal_dominator(WhittakerPair(s, f))
    assert s_tilde.diagonal_entries() == (3, 1, -1, -3)


def test_plroot_system_oracle_gl3():
    s = LieElement.diagonal([1, -1, 0])
    f = E(3, 2, 1)
    rs = plroot_system(WhittakerPair(s, f))
    assert rs.epsilon == Fraction(1)
    assert rs.all_pass
    assert principal_dominator(WhittakerPair(s, f)).diagonal_entries() == \
        (2, 0, -2)


def test_plroot_system_neutral_case():
    # S = h: the Z-component vanishes and the ordering comes from Z' alone
    f = jordan_matrix([2, 2])
    rs = plroot_system(WhittakerPair(neutral_h([2, 2]), f))
    assert rs.all_pass
    principal_dominator(WhittakerPair(neutral_h([2, 2]), f))


def test_not_pl_entry_patterns():
    from glwhit.principal import _compatible_ordering
    with pytest.raises(NotPLError):
        _compatible_ordering(E(3, 2, 1) + E(3, 3, 1))  # two entries leave 1
    with pytest.raises(NotPLError):
        _compatible_ordering(E(2, 2, 1) + E(2, 1, 2))  # cycle


def test_report_shape():
    f = E(4, 2, 1) + E(4, 4, 3)
    rs = plroot_system(WhittakerPair(neutral_h([2, 2]), f))
    data = rs.to_json()
    assert set(data) == {"h", "delta", "epsilon", "h_eps", "report"}
    assert {"a_support", "b_diagonal", "c_neutral",
            "d_nonpositive_roots"} <= set(data["report"])
