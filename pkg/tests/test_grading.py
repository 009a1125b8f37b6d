from fractions import Fraction

import pytest

from glwhit.errors import NonCommutingError, ZeroElementError
from glwhit.exactlin import Subspace
from glwhit.gln import LieElement, jordan_matrix, neutral_h
from glwhit.grading import (GradedDecomposition, deligne_eZ_filtration,
                            deligne_filtration, heisenberg_data,
                            weight_filtration, weight_space)
from glwhit.partitions import partitions_of


def _upper(eta):
    return LieElement(jordan_matrix(eta).matrix.transpose())


def _projectors(eta):
    """Diagonal idempotents constant on each Jordan block of eta."""
    out = []
    off = 0
    n = sum(eta.parts)
    for p in eta.parts:
        vals = [Fraction(0)] * n
        for i in range(off, off + p):
            vals[i] = Fraction(1)
        out.append(LieElement.diagonal(vals))
        off += p
    return out


def test_weight_spaces():
    s = LieElement.diagonal([1, -1])
    assert weight_space(s, 2).dim == 1
    assert weight_space(s, 0).dim == 2
    assert weight_filtration(s, 0).dim == 3
    assert weight_filtration(s, 0, strict=True).dim == 1
    dec = GradedDecomposition.of(s)
    assert sum(sp.dim for sp in dec.spaces.values()) == 4


def test_deligne_equals_weight_filtration_small():
    for n in range(1, 5):
        for eta in partitions_of(n):
            e = _upper(eta)
            h = neutral_h(eta)
            for k in range(-2 * n, 2 * n + 1):
                assert deligne_filtration(e, k) == weight_filtration(h, k), \
                    (eta, k)


def test_deligne_ez_filtration():
    eta = next(p for p in partitions_of(4) if list(p.parts) == [2, 2])
    e = _upper(eta)
    z = LieElement.diagonal([1, 1, 0, 0])
    combined = deligne_eZ_filtration(e, z, 1)
    h = neutral_h(eta)
    expected = Subspace.zero(16)
    for i in range(-4, 5):
        expected = expected + weight_space(h, i).intersect(
            weight_filtration(z, 1 - i))
    assert combined == expected
    with pytest.raises(NonCommutingError):
        deligne_eZ_filtration(e, LieElement.diagonal([1, 0, 0, 0]), 1)


def test_heisenberg_plain():
    data = heisenberg_data(jordan_matrix([2, 1]))
    assert data.all_checks_pass()
    assert data.v.dim - data.i_space.dim == 1
    with pytest.raises(ZeroElementError):
        heisenberg_data(LieElement.zero(3))


def test_heisenberg_with_scaled_projectors():
    # with Z a sufficiently dominant multiple of a chain projector, the full
    # check bundle (including the ideal property of J) passes
    for n in range(2, 5):
        for eta in partitions_of(n):
            if eta.parts[0] < 2:
                continue
            e = _upper(eta)
            for proj in _projectors(eta):
                data = heisenberg_data(e, proj.scale(2 * n))
                assert data.all_checks_pass(), (eta, proj.diagonal_entries())


def test_heisenberg_unscaled_projector_partial_checks():
    # the quotient comparison and nondegeneracy checks hold for unscaled
    # projectors too, even where the ideal property fails
    for n in range(2, 5):
        for eta in partitions_of(n):
            if eta.parts[0] < 2:
                continue
            e = _upper(eta)
            for proj in _projectors(eta):
                data = heisenberg_data(e, proj)
                for key in ("quotient_dim", "gram_rank", "e_not_in_J"):
                    assert data.checks[key], (eta, key)


def test_heisenberg_ideal_failure_regression():
    # frozen non-dominant case: the ideal check fails honestly while the
    # quotient checks still pass.  u contains both E14 (Z-weight -1) and E31
    # (Z-weight +1); their bracket pairs nontrivially with the center class.
    e = LieElement.elementary(4, 1, 2) + LieElement.elementary(4, 3, 4)
    z = LieElement.diagonal([0, 0, 1, 1])
    data = heisenberg_data(e, z)
    assert data.checks["J_ideal"] is False
    assert data.checks["quotient_dim"] and data.checks["gram_rank"]
    assert data.checks["e_not_in_J"]
    assert not data.all_checks_pass()
