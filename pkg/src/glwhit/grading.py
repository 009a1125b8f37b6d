"""ad(S)-weight decompositions, Deligne filtrations, and Heisenberg data.

The Deligne filtration attaches to a nilpotent e the canonical filtration

    g_{>=k} = sum_{i >= max(1-k,1)} ( Ker(ad e)^i  intersect  Im(ad e)^{i+k-1} )

without choosing an sl2 triple; for standard triples it coincides with the
h-weight filtration (a tested invariant).  The combined (e,Z)-filtration and
the Heisenberg quotient data u/I (resp. u/J) are computed exactly, with each
structural claim re-verified on the concrete input and reported as a flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import NonCommutingError, NotNilpotentError, ZeroElementError
from .exactlin import QMatrix, Subspace, rat_str
from .gln import LieElement, Sl2Triple, ad_matrix, sl2_complete


# ---------------------------------------------------------------------------
# weight decompositions of diagonal semisimple elements
# ---------------------------------------------------------------------------

def _coordinate_subspace(n, positions):
    """Canonical subspace spanned by unit matrices E_ij, (i,j) 0-based."""
    idx = sorted(i * n + j for (i, j) in positions)
    d = n * n
    rows = tuple(tuple(1 if k == p else 0 for k in range(d)) for p in idx)
    return Subspace._from_canonical(d, rows)


def weight_space(s: LieElement, r) -> Subspace:
    """g^S_r for diagonal S: span of E_ij with S_i - S_j = r."""
    assert s.is_diagonal(), "weight decomposition needs diagonal S"
    r = Fraction(r)
    sv = s.diagonal_entries()
    n = s.n
    pos = [(i, j) for i in range(n) for j in range(n) if sv[i] - sv[j] == r]
    return _coordinate_subspace(n, pos)


def weight_filtration(s: LieElement, r, strict=False) -> Subspace:
    """g^S_{>=r} (or g^S_{>r} when strict) for diagonal S."""
    assert s.is_diagonal(), "weight decomposition needs diagonal S"
    r = Fraction(r)
    sv = s.diagonal_entries()
    n = s.n
    if strict:
        pos = [(i, j) for i in range(n) for j in range(n) if sv[i] - sv[j] > r]
    else:
        pos = [(i, j) for i in range(n) for j in range(n) if sv[i] - sv[j] >= r]
    return _coordinate_subspace(n, pos)


@dataclass(frozen=True)
class GradedDecomposition:
    """The full weight decomposition of gl_n under a diagonal S."""

    weights: tuple
    spaces: dict

    @staticmethod
    def of(s: LieElement) -> "GradedDecomposition":
        assert s.is_diagonal()
        sv = s.diagonal_entries()
        n = s.n
        buckets = {}
        for i in range(n):
            for j in range(n):
                buckets.setdefault(sv[i] - sv[j], []).append((i, j))
        weights = tuple(sorted(buckets))
        spaces = {w: _coordinate_subspace(n, buckets[w]) for w in weights}
        return GradedDecomposition(weights, spaces)

    def to_json(self):
        return {rat_str(w): self.spaces[w].to_json() for w in self.weights}


# ---------------------------------------------------------------------------
# Deligne filtration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _ad_power_data(e: LieElement):
    """Kernels and images of powers of ad(e), up to the nilpotency degree.

    Returns (kernels, images, degree) with kernels[i] = Ker(ad e)^i and
    images[i] = Im(ad e)^i for 0 <= i <= degree, where degree is the least
    exponent with (ad e)^degree = 0.
    """
    n = e.n
    d = n * n
    ad = ad_matrix(e)
    kernels = [Subspace.zero(d)]
    images = [Subspace.full(d)]
    power = QMatrix.identity(d)
    from .exactlin import kernel as _kernel
    while kernels[-1].dim < d:
        power = power * ad
        kernels.append(_kernel(power))
        images.append(Subspace(d, list(zip(*power.entries))))
        if len(kernels) > 2 * n:
            raise NotNilpotentError("ad(e) is not nilpotent")
    return tuple(kernels), tuple(images), len(kernels) - 1


@lru_cache(maxsize=4096)
def deligne_filtration(e: LieElement, k: int) -> Subspace:
    """The Deligne filtration space g_{>=k} of a nilpotent e."""
    kernels, images, degree = _ad_power_data(e)
    d = e.n * e.n
    result = Subspace.zero(d)
    # Kernels saturate at the nilpotency degree and images vanish there, so
    # the infinite sum reduces to i in [max(1-k,1), degree-k].
    for i in range(max(1 - k, 1), max(degree - k, max(1 - k, 1) - 1) + 1):
        j = i + k - 1
        if j >= degree:
            continue  # image of that power is zero
        ker = kernels[min(i, degree)]
        term = ker if j <= 0 else ker.intersect(images[j])
        result = result + term
        if result.dim == d:
            break
    return result


def deligne_eZ_filtration(e: LieElement, z: LieElement, t, strict=False) -> Subspace:
    """The combined filtration g^{e,Z}_{>=t} = sum_i (g_{>=i} n g^Z_{>=t-i})."""
    if not z.is_diagonal():
        raise NonCommutingError("Z must be diagonal")
    if not z.bracket(e).is_zero():
        raise NonCommutingError("[Z, e] != 0")
    t = Fraction(t)
    _, _, degree = _ad_power_data(e)
    d = e.n * e.n
    result = Subspace.zero(d)
    # g_{>=i} is full below -(degree-1) and zero above degree-1
    for i in range(-(degree - 1), degree):
        gi = deligne_filtration(e, i)
        zi = weight_filtration(z, t - i, strict=strict)
        result = result + gi.intersect(zi)
        if result.dim == d:
            break
    return result


# ---------------------------------------------------------------------------
# Heisenberg data
# ---------------------------------------------------------------------------

def _image_of_subspace(op: QMatrix, space: Subspace) -> Subspace:
    """op applied to a subspace of its column domain."""
    d = space.ambient
    out = []
    for row in space.basis_int():
        vec = [sum(op.entries[i][j] * row[j] for j in range(d) if row[j])
               for i in range(op.rows)]
        out.append(vec)
    return Subspace(op.rows, out)


def _trace_perp(e: LieElement, amb: Subspace = None) -> Subspace:
    """Orthogonal complement of e under the trace form, within amb (or gl_n)."""
    n = e.n
    d = n * n
    # tr(e X) = sum_ij e[i][j] X[j][i]: functional row in flattened X coords
    functional = [Fraction(0)] * d
    for i in range(n):
        for j in range(n):
            if e.matrix.entries[i][j]:
                functional[j * n + i] = e.matrix.entries[i][j]
    from .exactlin import kernel as _kernel
    perp = _kernel(QMatrix([functional]))
    if amb is None:
        return perp
    return perp.intersect(amb)


def _pairing_vector(c: LieElement):
    """Flattened functional X -> tr(c X)."""
    n = c.n
    vec = [Fraction(0)] * (n * n)
    for i in range(n):
        for j in range(n):
            if c.matrix.entries[i][j]:
                vec[j * n + i] = c.matrix.entries[i][j]
    return vec


def _gram(c: LieElement, vectors):
    """Gram matrix of omega(a, b) = tr(c [a, b]) on the given flat vectors."""
    n = c.n
    mats = [LieElement.from_vector(v, n) for v in vectors]
    size = len(vectors)
    if size == 0:
        return QMatrix.zeros(1, 1), 0
    g = [[Fraction(0)] * size for _ in range(size)]
    for a in range(size):
        for b in range(a + 1, size):
            val = c.pair(mats[a].bracket(mats[b]))
            g[a][b] = val
            g[b][a] = -val
    gm = QMatrix(g)
    from .exactlin import rank as _rank
    return gm, _rank(gm)


def _nilpositive_triple(e: LieElement) -> Sl2Triple:
    """Complete e as the nil-positive of a triple (f, h, e)."""
    t = sl2_complete(e)  # treats e as nil-negative: (e, h1, e1)
    return Sl2Triple(f=t.e, h=-t.h, e=e)


@dataclass
class HeisenbergData:
    """The data of Lemma-style Heisenberg quotients u/I (and u/J with Z)."""

    u: Subspace
    v: Subspace
    i_space: Subspace
    center_class: tuple
    omega_gram: QMatrix
    j_space: Subspace = None
    checks: dict = field(default_factory=dict)

    def all_checks_pass(self):
        return all(self.checks.values())

    def to_json(self):
        data = {
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "I": self.i_space.to_json(),
            "center_class": [rat_str(x) for x in self.center_class],
            "omega_gram": self.omega_gram.to_json(),
            "checks": dict(self.checks),
        }
        if self.j_space is not None:
            data["J"] = self.j_space.to_json()
        return data


def _ideal_in(sub: Subspace, amb: Subspace, n) -> bool:
    """[amb, sub] contained in sub (bracket of flattened bases)."""
    amb_mats = [LieElement.from_vector(r, n) for r in amb.basis_int()]
    sub_mats = [LieElement.from_vector(r, n) for r in sub.basis_int()]
    for a in amb_mats:
        for b in sub_mats:
            if not sub.contains(a.bracket(b).to_vector()):
                return False
    return True


def _heisenberg_core(e: LieElement, amb: Subspace):
    """The u, v, I construction of e relative to an ad(e)-stable ambient
    subalgebra (g_Z in the relative case, gl_n otherwise)."""
    n = e.n
    d = n * n
    kernels, _, degree = _ad_power_data(e)
    full = amb.dim == d

    def filt(k):
        if full:
            return deligne_filtration(e, k)
        # relative filtration: kernels restrict, images become ad^j(amb)
        ad = ad_matrix(e)
        result = Subspace.zero(d)
        power = QMatrix.identity(d)
        powers = [power]
        for _ in range(degree):
            power = power * ad
            powers.append(power)
        for i in range(max(1 - k, 1), degree + 1):
            j = i + k - 1
            if j >= degree:
                continue
            base = kernels[i].intersect(amb)
            term = base if j <= 0 else base.intersect(
                _image_of_subspace(powers[j], amb))
            result = result + term
        return result

    u = filt(1)
    v = filt(2)
    ad = ad_matrix(e)
    ad2 = ad * ad
    i_space = _image_of_subspace(ad2, _trace_perp(e, None if full else amb)).intersect(v)
    return u, v, i_space


def heisenberg_data(e: LieElement, z: LieElement = None) -> HeisenbergData:
    """Heisenberg quotient data of a nonzero nilpotent e (optionally with Z).

    Without Z: u = g_{>=1}, v = g_{>1}, I = ad(e)^2(e-perp) n v under the
    trace form, plus the symplectic Gram of omega(a,b) = <c, [a,b]> with
    c = f/<f,e> from the completed triple.  All four structural claims
    (I ideal in u; dim v/I = 1; e not in I; omega nondegenerate on u/v) are
    recomputed and reported in .checks.

    With Z (commuting with e): u, v come from the combined (e,Z)-filtration,
    X = e + Z, J = I + ad(X)(u); J is checked to be an ideal of u and u/J is
    compared against the data of e inside g_Z (dimension and Gram rank).
    """
    n = e.n
    d = n * n
    if e.is_zero():
        raise ZeroElementError("e = 0 has no Heisenberg quotient")
    if not e.is_nilpotent():
        raise NotNilpotentError("e is not nilpotent")
    triple = _nilpositive_triple(e)
    pairing = triple.f.pair(e)
    assert pairing != 0
    c = triple.f.scale(Fraction(1, 1) / pairing)

    if z is None:
        u, v, i_space = _heisenberg_core(e, Subspace.full(d))
        checks = {}
        checks["ideal"] = _ideal_in(i_space, u, n)
        checks["codim_one"] = (v.dim - i_space.dim == 1)
        checks["e_not_in_I"] = not i_space.contains(e.to_vector())
        comp = v.complement_basis_in(u)
        gram, grank = _gram(c, comp)
        checks["omega_nondegenerate"] = (grank == len(comp))
        center = tuple(_residue(i_space, e.to_vector()))
        return HeisenbergData(u, v, i_space, center, gram, None, checks)

    if not z.is_diagonal():
        raise NonCommutingError("Z must be diagonal")
    if not z.bracket(e).is_zero():
        raise NonCommutingError("[Z, e] != 0")
    u = deligne_eZ_filtration(e, z, 1)
    v = deligne_eZ_filtration(e, z, 1, strict=True)
    x = e + z
    adx = ad_matrix(x)
    i_space = _image_of_subspace(adx * adx, _trace_perp(e)).intersect(v)
    j_space = i_space + _image_of_subspace(adx, u)
    checks = {}
    checks["J_ideal"] = _ideal_in(j_space, u, n)
    # reference construction: e inside g_Z
    from .gln import centralizer
    gz = centralizer(z)
    u_ref, v_ref, i_ref = _heisenberg_core(e, gz)
    checks["quotient_dim"] = (u.dim - j_space.dim == u_ref.dim - i_ref.dim)
    comp = j_space.complement_basis_in(u + j_space)
    gram, grank = _gram(c, comp)
    comp_ref = i_ref.complement_basis_in(u_ref + i_ref)
    gram_ref, grank_ref = _gram(c, comp_ref)
    checks["gram_rank"] = (grank == grank_ref)
    checks["e_not_in_J"] = not j_space.contains(e.to_vector())
    center = tuple(_residue(j_space, e.to_vector()))
    return HeisenbergData(u, v, i_space, center, gram, j_space, checks)


def _residue(space: Subspace, vec):
    from .exactlin import _reduce_against
    return _reduce_against(space.basis_int(), space.pivots, vec)
