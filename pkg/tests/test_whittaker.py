from fractions import Fraction

import pytest

from glwhit.errors import (HypothesisViolatedError, InvalidPairError,
                           NotInStabilizerError, PerturbationUnverifiedError)
from glwhit.gln import LieElement, is_neutral, jordan_matrix, neutral_h
from glwhit.whittaker import (WhittakerPair, build_chain, choose_m,
                              critical_numbers, levi_relation, lr_at,
                              mw_decompose, omega_value, preorder_geq,
                              search_perturbation, uvw_at)

E = LieElement.elementary


def _glsame():
    h = LieElement.diagonal([1, -1, 1, -1])
    f = E(4, 2, 1) + E(4, 4, 3)
    z = LieElement.diagonal([2, 2, -2, -2])
    return h, f, z


def test_pair_validation():
    with pytest.raises(InvalidPairError):
        WhittakerPair(LieElement.diagonal([1, -1]), E(2, 1, 2))  # wrong weight
    with pytest.raises(InvalidPairError):
        WhittakerPair(E(2, 1, 2), E(2, 2, 1))  # S not diagonal
    with pytest.raises(InvalidPairError):
        WhittakerPair(LieElement.diagonal([1, -1]), LieElement.identity(2))


def test_mw_decompose():
    h, f, z = _glsame()
    dec = mw_decompose(WhittakerPair(h + z, f))
    assert dec.h == h and dec.Z == z
    assert is_neutral(dec.h, f)
    assert dec.Z.bracket(f).is_zero()
    # S already neutral decomposes with Z = 0
    dec0 = mw_decompose(WhittakerPair(h, f))
    assert dec0.h == h and dec0.Z.is_zero()


def test_critical_numbers():
    h, f, z = _glsame()
    assert critical_numbers(h, z) == [Fraction(1, 4), Fraction(3, 4)]
    assert critical_numbers(h, LieElement.zero(4)) == []
    crit = critical_numbers(LieElement.diagonal([1, -1, 1, -1]),
                            LieElement.diagonal([-1, -1, 1, 1]))
    assert crit == [Fraction(1, 2)]


def test_stage_dims_frozen():
    h, f, z = _glsame()
    m = choose_m(h, z, f)
    assert m.dim == 0
    expected = {
        Fraction(0): (4, 4, 0, 4, 4),
        Fraction(1, 4): (6, 3, 3, 5, 5),
        Fraction(3, 4): (6, 5, 1, 6, 6),
        Fraction(1): (6, 6, 0, 6, 6),
    }
    for t, dims in expected.items():
        u, v, w = uvw_at(h, z, f, t)
        l, r, _, _ = lr_at(h, z, f, m, t)
        assert (u.dim, v.dim, w.dim, l.dim, r.dim) == dims
        assert u.contains_subspace(v)
        assert u == v + w
        assert u.contains_subspace(l) and u.contains_subspace(r)


def test_omega_value():
    f = E(4, 2, 1) + E(4, 4, 3)
    x, y = E(4, 1, 3), E(4, 3, 2)
    # omega(x, y) = tr(f [x, y])
    assert omega_value(f, x.to_vector(), y.to_vector()) == \
        f.pair(x.bracket(y))


def test_preorder():
    h = LieElement.diagonal([1, -1, 1, -1])
    f = E(4, 2, 1) + E(4, 4, 3)
    z = LieElement.diagonal([2, 2, -2, -2])
    assert preorder_geq(LieElement.zero(4), z, h, f)
    with pytest.raises(NotInStabilizerError):
        preorder_geq(LieElement.zero(4), LieElement.diagonal([1, 0, 0, 0]),
                     h, f)


def test_levi_relation_cases():
    s = LieElement.diagonal([3, 1, -1, -3])
    x = E(4, 2, 1) + E(4, 4, 3)   # type (2,2)
    y = E(4, 2, 1) + E(4, 3, 2)   # type (3,1)
    full = E(4, 2, 1) + E(4, 3, 2) + E(4, 4, 3)
    assert levi_relation(s, x, x) == "conjugate"
    assert levi_relation(s, x, y) == "incomparable"
    assert levi_relation(s, y, full) == "x_in_closure_only"


def test_search_perturbation():
    h = LieElement.diagonal([1, -1, 1, -1])
    f = E(4, 2, 1) + E(4, 4, 3)
    s_tilde = LieElement.diagonal([0, -2, 2, 0])
    f_tilde = E(4, 1, 3) + E(4, 2, 1) + E(4, 2, 4) + E(4, 4, 3)
    pert = search_perturbation(WhittakerPair(h, f),
                               WhittakerPair(s_tilde, f_tilde))
    assert pert.f_prime == E(4, 1, 3) + E(4, 2, 4)
    assert levi_relation(s_tilde, f + pert.f_prime, f_tilde) == "conjugate"
    # trivial case: identical pairs need no perturbation
    pert0 = search_perturbation(WhittakerPair(h, f), WhittakerPair(h, f))
    assert pert0.f_prime.is_zero()


def test_build_chain_certificates():
    h, f, z = _glsame()
    chain = build_chain(WhittakerPair(h, f), WhittakerPair(h + z, f))
    assert chain.all_certificates_pass
    assert [st.t for st in chain.stages] == \
        [Fraction(0), Fraction(1, 4), Fraction(3, 4), Fraction(1)]
    # consecutive inclusions r_s <= l_t are part of the certificate bundle
    assert chain.certificates["maximal_isotropy"]


def test_build_chain_rejects_bad_target():
    h = LieElement.diagonal([1, -1, 1, -1])
    f = E(4, 2, 1) + E(4, 4, 3)
    f_tilde = E(4, 1, 3) + E(4, 2, 1) + E(4, 2, 4) + E(4, 4, 3)
    s_tilde = LieElement.diagonal([0, -2, 2, 0])
    # without a perturbation phi is not conjugate to phi~
    with pytest.raises(PerturbationUnverifiedError):
        build_chain(WhittakerPair(h, f), WhittakerPair(s_tilde, f_tilde))
    # wrong ambient size
    with pytest.raises(HypothesisViolatedError):
        build_chain(WhittakerPair(h, f),
                    WhittakerPair(LieElement.diagonal([1, -1]), E(2, 2, 1)))
