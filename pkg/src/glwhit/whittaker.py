"""Whittaker pairs, neutral decompositions, and the deformation chain.

A Whittaker pair is (S, f) with S diagonal and [S, f] = -2f; f encodes the
functional phi = tr(f .).  The core construction deforms S_t = S + tZ toward
a second pair (S~, f~), tracking at every stage the subalgebras

    u_t = g^{S_t}_{>=1},   l_t = m + (u_t n g^Z_{<0}) + Ker(omega|u_t),
                           r_t = m + (u_t n g^Z_{>0}) + Ker(omega|u_t),

their phi'-kernel variants, and a certificate for each structural condition
the construction relies on (isotropy, inclusions across critical numbers,
radicals, bracket relations).  Everything is exact rational arithmetic; the
critical numbers are solved for, never sampled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    HypothesisViolatedError,
    InvalidPairError,
    NotGradedError,
    NotInStabilizerError,
    PerturbationNotFoundError,
    PerturbationUnverifiedError,
)
from .exactlin import QMatrix, Subspace, rank, rat_str, solve_affine
from .gln import LieElement, ad_matrix, centralizer, is_neutral, _neutral_general
from .grading import weight_filtration, weight_space


# ---------------------------------------------------------------------------
# pairs and neutral decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WhittakerPair:
    """(S, f) with S rational diagonal, f nilpotent, [S, f] = -2f."""

    S: LieElement
    f: LieElement

    def __post_init__(self):
        if self.S.n != self.f.n:
            raise InvalidPairError("S and f live in different gl_n")
        if not self.S.is_diagonal():
            raise InvalidPairError("S must be diagonal")
        if not self.f.is_nilpotent():
            raise InvalidPairError("f must be nilpotent")
        if self.S.bracket(self.f) != self.f.scale(-2):
            raise InvalidPairError("[S, f] != -2f")

    @property
    def n(self):
        return self.S.n

    def to_json(self):
        return {"S": self.S.to_json(), "f": self.f.to_json()}


@dataclass(frozen=True)
class NeutralDecomposition:
    """S = h + Z with h neutral for f, [h, Z] = 0, [Z, f] = 0."""

    h: LieElement
    Z: LieElement

    def to_json(self):
        return {"h": self.h.to_json(), "Z": self.Z.to_json()}


def _eigen_classes(values):
    """Group distinct eigenvalues into classes differing by even integers,
    each class sorted decreasing, classes ordered by decreasing maximum."""
    distinct = sorted(set(values), reverse=True)
    classes = []
    for v in distinct:
        for cls in classes:
            diff = (cls[0] - v) / 2
            if diff.denominator == 1:
                cls.append(v)
                break
        else:
            classes.append([v])
    classes.sort(key=lambda c: c[0], reverse=True)
    return classes


def _graded_chains(pair: WhittakerPair):
    """Jordan chains of f with S-homogeneous tops.

    Eigenvalues are scanned class by class (classes mod 2Z, decreasing), so
    an eigenvalue lambda - 2 always directly follows lambda; within each
    kernel the canonical echelon basis breaks ties.  Each chain is a tuple
    (v, fv, ..., f^{k-1} v) of S-homogeneous vectors, together with the
    eigenvalue of its top.
    """
    n = pair.n
    sv = pair.S.diagonal_entries()
    mat = pair.f.matrix
    eigen_order = [v for cls in _eigen_classes(sv) for v in cls]
    coord_spaces = {}
    for lam in eigen_order:
        pos = [i for i in range(n) if sv[i] == lam]
        rows = tuple(tuple(1 if k == p else 0 for k in range(n)) for p in pos)
        coord_spaces[lam] = Subspace._from_canonical(n, rows)

    kernels = [Subspace.zero(n)]
    power = QMatrix.identity(n)
    while kernels[-1].dim < n:
        power = power * mat
        from .exactlin import kernel as _kernel
        kernels.append(_kernel(power))
    degree = len(kernels) - 1

    chains = []
    for k in range(degree, 0, -1):
        carried = []
        for ch, _lam in chains:
            if len(ch) > k:
                carried.append(ch[len(ch) - k])
        blocked = kernels[k - 1] + Subspace(n, carried)
        target = kernels[k].dim
        for lam in eigen_order:
            graded_part = kernels[k].intersect(coord_spaces[lam])
            for row in graded_part.basis_int():
                if blocked.dim == target:
                    break
                if blocked.contains(row):
                    continue
                vec = tuple(Fraction(x) for x in row)
                chain = [vec]
                for _ in range(k - 1):
                    prev = chain[-1]
                    chain.append(tuple(
                        sum(mat.entries[i][j] * prev[j] for j in range(n))
                        for i in range(n)))
                chains.append((tuple(chain), lam))
                blocked = blocked + Subspace(n, [row])
    assert sum(len(c) for c, _ in chains) == n
    return chains


def mw_decompose(pair: WhittakerPair) -> NeutralDecomposition:
    """Split S = h + Z with h neutral for f and Z commuting with h and f.

    The S-grading makes f a sum of maps between eigenspaces along -2 steps;
    extracting Jordan chains with S-homogeneous tops and assigning the usual
    weights k-1, k-3, ..., 1-k along each chain produces h; Z = S - h is then
    constant on every chain, hence commutes with f.  Deterministic.
    """
    n = pair.n
    chains = _graded_chains(pair)
    cols = []
    h_vals = []
    for ch, _lam in chains:
        k = len(ch)
        cols.extend(ch)
        h_vals.extend(Fraction(k - 1 - 2 * i) for i in range(k))
    p_mat = QMatrix(list(zip(*cols)))
    p_inv = p_mat.inverse()
    h = LieElement(p_mat * QMatrix.diagonal(h_vals) * p_inv)
    z = pair.S - h
    assert h.bracket(z).is_zero()
    assert z.bracket(pair.f).is_zero()
    if h.is_diagonal():
        assert is_neutral(h, pair.f)
    else:
        assert _neutral_general(h, pair.f)
    return NeutralDecomposition(h, z)


# ---------------------------------------------------------------------------
# the symplectic form omega_phi
# ---------------------------------------------------------------------------

def _support(vec):
    """Nonzero coordinates of a vector as (index, value) pairs."""
    return tuple((p, v) for p, v in enumerate(vec) if v)


def _omega_supports(f: LieElement, sx, sy):
    """omega_phi on sparse supports: tr(f [E_ab, E_cd]) expanded via
    delta_bc f_da - delta_da f_bc."""
    n = f.n
    fm = f.matrix.entries
    total = Fraction(0)
    for p, xv in sx:
        a, b = divmod(p, n)
        for q, yv in sy:
            c, d = divmod(q, n)
            val = Fraction(0)
            if b == c:
                val += fm[d][a]
            if d == a:
                val -= fm[b][c]
            if val:
                total += xv * yv * val
    return total


def omega_value(f: LieElement, x, y):
    """omega_phi(X, Y) = tr(f [X, Y]) on coordinate vectors x, y."""
    return _omega_supports(f, _support(x), _support(y))


def _sparse_bracket(n, sx, sy):
    """[X, Y] as a dense coordinate vector, from sparse supports."""
    out = [Fraction(0)] * (n * n)
    for p, xv in sx:
        a, b = divmod(p, n)
        for q, yv in sy:
            c, d = divmod(q, n)
            if b == c:
                out[a * n + d] += xv * yv
            if d == a:
                out[c * n + b] -= xv * yv
    return tuple(out)


def _gram_and_radical(f: LieElement, space: Subspace):
    """Gram matrix of omega_phi on the canonical basis of space, and the
    radical {x in space : omega(x, space) = 0} as a Subspace."""
    basis = space.basis
    k = len(basis)
    if k == 0:
        return QMatrix([[]]), space
    sups = [_support(b) for b in basis]
    gram = QMatrix([[_omega_supports(f, sups[i], sups[j]) for j in range(k)]
                    for i in range(k)])
    from .exactlin import kernel as _kernel
    combos = _kernel(gram)
    d = space.ambient
    rad_rows = []
    for combo in combos.basis:
        vec = [Fraction(0)] * d
        for c, bvec in zip(combo, basis):
            if c:
                for idx, bv in enumerate(bvec):
                    if bv:
                        vec[idx] += c * bv
        rad_rows.append(tuple(vec))
    return gram, Subspace(d, rad_rows)


from functools import lru_cache


@lru_cache(maxsize=256)
def _omega_radical_full(f: LieElement) -> Subspace:
    """Radical of omega_phi on all of gl_n (equals g_phi; cached per f)."""
    _, radical = _gram_and_radical(f, Subspace.full(f.n * f.n))
    return radical


def greedy_lagrangian(f_or_omega, pool, seed_done=None):
    """Greedy maximal isotropic subspace from an ordered pool of vectors.

    Takes the first vector, discards its first symplectic partner from the
    rest of the pool (orthogonalizing the remainder against the pair), and
    repeats; partnerless vectors are radical and always kept.  The omega
    argument is either a LieElement f (form tr(f[.,.])) or a callable.
    """
    omega = f_or_omega if callable(f_or_omega) else \
        (lambda x, y, _f=f_or_omega: omega_value(_f, x, y))
    pool = [tuple(Fraction(c) for c in v) for v in pool]
    kept = []
    while pool:
        v = pool.pop(0)
        if all(c == 0 for c in v):
            continue
        partner = None
        for idx, w in enumerate(pool):
            if omega(v, w) != 0:
                partner = idx
                break
        kept.append(v)
        if partner is None:
            continue
        p = pool.pop(partner)
        vp = omega(v, p)
        rest = []
        for w in pool:
            a = omega(v, w) / vp
            b = omega(p, w) / vp
            rest.append(tuple(wc - a * pc + b * vc
                              for wc, pc, vc in zip(w, p, v)))
        pool = rest
    return kept


# ---------------------------------------------------------------------------
# critical numbers and stage subspaces
# ---------------------------------------------------------------------------

def critical_numbers(h: LieElement, z: LieElement):
    """All t in (0,1) where the weight-1 space of h + tZ leaves g_Z.

    Solves (h_i - h_j) + t (Z_i - Z_j) = 1 over all coordinate pairs with
    Z_i != Z_j; returns the sorted distinct solutions inside (0, 1).
    """
    assert h.is_diagonal() and z.is_diagonal()
    hv = h.diagonal_entries()
    zv = z.diagonal_entries()
    n = h.n
    found = set()
    for i in range(n):
        for j in range(n):
            dz = zv[i] - zv[j]
            if dz == 0:
                continue
            t = (1 - (hv[i] - hv[j])) / dz
            if 0 < t < 1:
                found.add(t)
    return sorted(found)


def uvw_at(h: LieElement, z: LieElement, f: LieElement, t):
    """(u_t, v_t, w_t): the >=1, >1 and exactly-1 weight spaces of h + tZ."""
    s_t = h + z.scale(Fraction(t))
    u = weight_filtration(s_t, 1)
    v = weight_filtration(s_t, 1, strict=True)
    w = weight_space(s_t, 1)
    return u, v, w


def choose_m(h: LieElement, z: LieElement, f: LieElement) -> Subspace:
    """A Lagrangian of (g^Z_0 n g^S_1, omega_phi) at the start of the chain.

    Deterministic: the elementary-matrix basis of the intersection is taken
    in lexicographic position order and reduced greedily.
    """
    assert h.is_diagonal() and z.is_diagonal()
    hv = h.diagonal_entries()
    zv = z.diagonal_entries()
    n = h.n
    d = n * n
    pool = []
    for i in range(n):
        for j in range(n):
            if zv[i] == zv[j] and hv[i] - hv[j] == 1:
                vec = [Fraction(0)] * d
                vec[i * n + j] = Fraction(1)
                pool.append(tuple(vec))
    return Subspace(d, greedy_lagrangian(f, pool))


def _kernel_functional(space: Subspace, f_prime: LieElement) -> Subspace:
    """space n Ker(tr(f' .))."""
    if f_prime is None or f_prime.is_zero():
        return space
    n = f_prime.n
    fm = f_prime.matrix.entries
    rows = []
    for bvec in space.basis:
        # tr(f' X) for X with coordinates bvec
        val = sum(fm[j][i] * bvec[i * n + j]
                  for i in range(n) for j in range(n) if bvec[i * n + j])
        rows.append((bvec, val))
    nonzero = [(bv, val) for bv, val in rows if val != 0]
    kept = [bv for bv, val in rows if val == 0]
    if nonzero:
        b0, v0 = nonzero[0]
        for bv, val in nonzero[1:]:
            kept.append(tuple(x - (val / v0) * y for x, y in zip(bv, b0)))
    return Subspace(space.ambient, kept)


def lr_at(h: LieElement, z: LieElement, f: LieElement, m: Subspace, t,
          f_prime: LieElement = None):
    """(l_t, r_t, l'_t, r'_t) at deformation time t.

    l_t = m + (u_t n g^Z_{<0}) + Ker(omega|u_t), r_t the same with positive
    Z-weights; the primed spaces intersect with Ker(phi').
    """
    u, v, w = uvw_at(h, z, f, t)
    zv = z.diagonal_entries()
    n = h.n
    s_t = h + z.scale(Fraction(t))
    sv = s_t.diagonal_entries()
    d = n * n

    def coord(pred):
        rows = []
        for i in range(n):
            for j in range(n):
                if pred(sv[i] - sv[j], zv[i] - zv[j]):
                    vec = [Fraction(0)] * d
                    vec[i * n + j] = Fraction(1)
                    rows.append(tuple(vec))
        return Subspace(d, rows)

    _, radical = _gram_and_radical(f, u)
    l = m + coord(lambda sw, zw: sw >= 1 and zw < 0) + radical
    r = m + coord(lambda sw, zw: sw >= 1 and zw > 0) + radical
    l_p = _kernel_functional(l, f_prime)
    r_p = _kernel_functional(r, f_prime)
    return l, r, l_p, r_p


# ---------------------------------------------------------------------------
# preorder and Levi-orbit oracle
# ---------------------------------------------------------------------------

def preorder_geq(x: LieElement, y: LieElement, h: LieElement,
                 f: LieElement) -> bool:
    """X >=_phi Y: every root alpha with alpha(h) <= 0 and
    alpha(X) >= 1 - alpha(h) also has alpha(Y) >= 1 - alpha(h)."""
    if not x.bracket(f).is_zero() or not y.bracket(f).is_zero():
        raise NotInStabilizerError("preorder arguments must commute with f")
    assert x.is_diagonal() and y.is_diagonal() and h.is_diagonal()
    xv, yv, hv = x.diagonal_entries(), y.diagonal_entries(), h.diagonal_entries()
    n = h.n
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            ah = hv[i] - hv[j]
            if ah > 0:
                continue
            if xv[i] - xv[j] >= 1 - ah and not (yv[i] - yv[j] >= 1 - ah):
                return False
    return True


def _composite_ranks(s_vals, x: LieElement):
    """Ranks of all composite maps V_lam -> V_{lam-2k} induced by a
    weight(-2) graded x, keyed by (lam, k)."""
    n = x.n
    coords = {}
    for i, v in enumerate(s_vals):
        coords.setdefault(v, []).append(i)
    values = set(coords)
    out = {}
    power = QMatrix.identity(n)
    kmax = 0
    if values:
        spread = max(values) - min(values)
        kmax = int(spread // 2)
    for k in range(1, kmax + 1):
        power = power * x.matrix
        for lam in values:
            if lam - 2 * k not in values:
                continue
            rows = coords[lam - 2 * k]
            cols = coords[lam]
            sub = QMatrix([[power.entries[r][c] for c in cols] for r in rows])
            out[(lam, k)] = rank(sub)
    return out


def levi_relation(s: LieElement, x: LieElement, y: LieElement) -> str:
    """Relation of the G_S-orbits of two ad(S)-weight(-2) elements.

    Coordinates grouped by S-eigenvalue turn x and y into chains of linear
    maps along -2 steps; the ranks of all composite maps classify the orbit
    and its closure order.  Returns one of "conjugate", "x_in_closure_only",
    "y_in_closure_only", "incomparable".
    """
    assert s.is_diagonal()
    if s.bracket(x) != x.scale(-2):
        raise NotGradedError("x is not of ad(S)-weight -2")
    if s.bracket(y) != y.scale(-2):
        raise NotGradedError("y is not of ad(S)-weight -2")
    sv = s.diagonal_entries()
    rx = _composite_ranks(sv, x)
    ry = _composite_ranks(sv, y)
    keys = set(rx) | set(ry)
    x_le = all(rx.get(k, 0) <= ry.get(k, 0) for k in keys)
    y_le = all(ry.get(k, 0) <= rx.get(k, 0) for k in keys)
    if x_le and y_le:
        return "conjugate"
    if x_le:
        return "x_in_closure_only"
    if y_le:
        return "y_in_closure_only"
    return "incomparable"


# ---------------------------------------------------------------------------
# perturbation search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PerturbationData:
    """phi' = tr(f' .) moving phi into the G_S~ orbit of phi~, with the
    witness data of the radical lemma."""

    f_prime: LieElement
    K: LieElement
    z: LieElement
    i: int
    X_witness: LieElement = None

    def to_json(self):
        data = {"f_prime": self.f_prime.to_json(), "K": self.K.to_json(),
                "z": self.z.to_json(), "i": self.i}
        if self.X_witness is not None:
            data["X_witness"] = self.X_witness.to_json()
        return data


def _weight_subspace(op: QMatrix, weight, within: Subspace = None) -> Subspace:
    """Kernel of (op - weight id), optionally intersected with a subspace."""
    from .exactlin import kernel as _kernel
    d = op.rows
    shifted = QMatrix([[op.entries[i][j] - (Fraction(weight) if i == j else 0)
                        for j in range(d)] for i in range(d)])
    space = _kernel(shifted)
    return space if within is None else space.intersect(within)


def _nilpositive_for(h: LieElement, f: LieElement) -> LieElement:
    """The unique e with [h, e] = 2e and [e, f] = h."""
    n = h.n
    d = n * n
    adh = ad_matrix(h)
    adf = ad_matrix(f)
    # [h,e] - 2e = 0  and  -[f,e] = h
    rows = []
    rhs = []
    for i in range(d):
        rows.append([adh.entries[i][j] - (2 if i == j else 0) for j in range(d)])
        rhs.append(Fraction(0))
    hvec = h.to_vector()
    for i in range(d):
        rows.append([-adf.entries[i][j] for j in range(d)])
        rhs.append(hvec[i])
    sol = solve_affine(QMatrix(rows), rhs)
    assert sol is not None, "no nil-positive completion; h is not neutral for f"
    return LieElement.from_vector(sol, n)


def _min_h_weight(h: LieElement, x: LieElement):
    """Smallest ad(h)-weight present in x (x != 0), h with integer spectrum."""
    n = h.n
    if h.is_diagonal():
        hv = h.diagonal_entries()
        xm = x.matrix.entries
        weights = [hv[i] - hv[j] for i in range(n) for j in range(n)
                   if xm[i][j]]
        return min(weights)
    # project onto ad(h)-eigenspaces via Lagrange interpolation over the
    # integer candidate range
    adh = ad_matrix(h)
    vec = x.to_vector()
    candidates = range(2 - 2 * n, 2 * n - 1)
    present = []
    for w in candidates:
        proj = list(vec)
        for w2 in candidates:
            if w2 == w:
                continue
            scaled = [Fraction(0)] * len(proj)
            for i, row in enumerate(adh.entries):
                scaled[i] = sum(row[j] * proj[j] for j in range(len(proj)))
            proj = [(s - w2 * p) / (w - w2) for s, p in zip(scaled, proj)]
        if any(c != 0 for c in proj):
            present.append(w)
    return min(present)


def _admissible_space(e: LieElement, k_elt: LieElement,
                      z: LieElement) -> Subspace:
    """Matrices f' with [z,f'] = 0, [e,f'] = 0 and [K,f'] = -2f'
    (the trace-form picture of ((a*)^e)^K_{-2} for a = g_z)."""
    from .exactlin import kernel as _kernel
    gz = _kernel(ad_matrix(z))
    ce = _kernel(ad_matrix(e))
    wk = _weight_subspace(ad_matrix(k_elt), -2)
    return gz.intersect(ce).intersect(wk)


def _witness_for(f_prime, h, k_elt, z, f):
    """X in g_z n g_f with [K,X] = 2X, [h,X] = -iX and tr(f' X) = 1."""
    i = _min_h_weight(h, f_prime)
    space = _weight_subspace(ad_matrix(k_elt), 2,
                             centralizer(f).intersect(
                                 _weight_subspace(ad_matrix(z), 0)))
    space = _weight_subspace(ad_matrix(h), -i, space)
    n = h.n
    fm = f_prime.matrix.entries
    for bvec in space.basis:
        val = sum(fm[j][a] * bvec[a * n + j]
                  for a in range(n) for j in range(n) if bvec[a * n + j])
        if val != 0:
            return int(i), LieElement.from_vector(
                tuple(c / val for c in bvec), n)
    return int(i), None


def search_perturbation(pair: WhittakerPair, pair_tilde: WhittakerPair,
                        bound: int = 2,
                        max_candidates: int = 500000) -> PerturbationData:
    """Bounded search for phi' with phi + phi' G_S~-conjugate to phi~.

    Coefficients over {0, +-1, ..., +-bound} on the echelon basis of the
    admissible space, scanned smallest-first; the first candidate passing the
    levi_relation conjugacy test wins.  Exhaustion raises PerturbationNotFound
    (which is not a proof of nonexistence).
    """
    h, z, k_elt, z_big = _chain_hypotheses(pair, pair_tilde,
                                           check_closure=False)
    f, f_t = pair.f, pair_tilde.f
    n = pair.n
    if levi_relation(pair_tilde.S, f, f_t) == "conjugate":
        return PerturbationData(LieElement.zero(n), k_elt, z, 0, None)
    e = _nilpositive_for(h, f)
    space = _admissible_space(e, k_elt, z)
    basis = [LieElement.from_vector(v, n) for v in space.basis]
    if basis:
        coeff_order = [0]
        for c in range(1, bound + 1):
            coeff_order.extend([c, -c])
        count = 0
        for coeffs in itertools.product(coeff_order, repeat=len(basis)):
            if all(c == 0 for c in coeffs):
                continue
            count += 1
            if count > max_candidates:
                break
            f_prime = LieElement.zero(n)
            for c, b in zip(coeffs, basis):
                if c:
                    f_prime = f_prime + b.scale(c)
            if levi_relation(pair_tilde.S, f + f_prime, f_t) == "conjugate":
                i, witness = _witness_for(f_prime, h, k_elt, z, f)
                return PerturbationData(f_prime, k_elt, z, i, witness)
    raise PerturbationNotFoundError(
        "no perturbation found with coefficient bound %d" % bound)


# ---------------------------------------------------------------------------
# the deformation chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainStage:
    t: Fraction
    u: Subspace
    v: Subspace
    w: Subspace
    l: Subspace
    r: Subspace
    l_prime: Subspace
    r_prime: Subspace

    def to_json(self):
        def rows(space):
            return [[rat_str(c) for c in b] for b in space.basis]
        return {"t": rat_str(self.t), "u": rows(self.u), "v": rows(self.v),
                "w": rows(self.w), "l": rows(self.l), "r": rows(self.r),
                "l_prime": rows(self.l_prime), "r_prime": rows(self.r_prime)}


@dataclass(frozen=True)
class DeformationChain:
    critical_ts: tuple
    stages: tuple
    m: Subspace
    q_final: Subspace
    certificates: dict
    diagnostics: dict
    perturbation: PerturbationData

    @property
    def all_certificates_pass(self):
        return all(self.certificates.values())

    def to_json(self):
        def rows(space):
            return [[rat_str(c) for c in b] for b in space.basis]
        return {
            "critical": [rat_str(t) for t in self.critical_ts],
            "stages": [st.to_json() for st in self.stages],
            "certificates": dict(self.certificates),
            "m": rows(self.m),
            "q_final": rows(self.q_final),
        }


def _chain_hypotheses(pair: WhittakerPair, pair_tilde: WhittakerPair,
                      check_closure=True):
    """Verify the deformation hypotheses; return (h, z, K, Z)."""
    if pair.n != pair_tilde.n:
        raise HypothesisViolatedError("ambient", "pairs in different gl_n")
    dec = mw_decompose(pair)
    h = dec.h
    z = dec.Z
    s_t = pair_tilde.S
    if not h.bracket(s_t).is_zero():
        raise HypothesisViolatedError(
            "h_commutes", "neutral h of (S,phi) does not commute with S~")
    if not z.bracket(pair_tilde.f).is_zero():
        raise HypothesisViolatedError(
            "z_commutes", "S - h does not commute with phi~")
    z_big = pair_tilde.S - pair.S
    if not z_big.bracket(pair.f).is_zero():
        raise HypothesisViolatedError("Z_stabilizes", "[S~ - S, f] != 0")
    # g_phi n g^S_{>=1} subset g^{S~}_{>=1}
    lhs = centralizer(pair.f).intersect(weight_filtration(pair.S, 1))
    if not weight_filtration(pair_tilde.S, 1).contains_subspace(lhs):
        raise HypothesisViolatedError(
            "stabilizer_inclusion", "g_phi n g^S_{>=1} not inside g^{S~}_{>=1}")
    if check_closure:
        rel = levi_relation(pair_tilde.S, pair.f, pair_tilde.f)
        if rel not in ("conjugate", "x_in_closure_only"):
            raise HypothesisViolatedError(
                "orbit_closure",
                "phi not in the closure of the G_S~ orbit of phi~"
                " (levi relation: %s)" % rel)
    k_elt = pair_tilde.S - z
    return h, z, k_elt, z_big


def build_chain(pair: WhittakerPair, pair_tilde: WhittakerPair,
                f_prime: LieElement = None) -> DeformationChain:
    """The full deformation chain from (S, phi) to (S~, phi~).

    Verifies the hypotheses, resolves the perturbation phi', computes every
    stage at t in {0} u criticals u {1} and evaluates the certificate bundle.
    A supplied f_prime is verified against the conjugacy test; omitted
    f_prime is taken to be 0 and must then already satisfy conjugacy.
    """
    h, z, k_elt, z_big = _chain_hypotheses(pair, pair_tilde)
    f = pair.f
    n = pair.n
    d = n * n
    rel = levi_relation(pair_tilde.S, f, pair_tilde.f)

    if f_prime is not None and not f_prime.is_zero():
        if levi_relation(pair_tilde.S, f + f_prime, pair_tilde.f) != "conjugate":
            raise PerturbationUnverifiedError(
                "phi + phi' is not G_S~-conjugate to phi~")
        if not z.bracket(f_prime).is_zero() or \
                k_elt.bracket(f_prime) != f_prime.scale(-2):
            raise PerturbationUnverifiedError(
                "phi' is not in ((a*)^e)^K_{-2}: wrong z- or K-weight")
        i_val, witness = _witness_for(f_prime, h, k_elt, z, f)
        pert = PerturbationData(f_prime, k_elt, z, i_val, witness)
    else:
        if rel != "conjugate":
            raise PerturbationUnverifiedError(
                "phi is not G_S~-conjugate to phi~ and no phi' was supplied; "
                "use search_perturbation")
        pert = PerturbationData(LieElement.zero(n), k_elt, z, 0, None)
    fp = None if pert.f_prime.is_zero() else pert.f_prime

    criticals = critical_numbers(pair.S, z_big)
    ts = [Fraction(0)] + list(criticals) + [Fraction(1)]
    m = choose_m(pair.S, z_big, f)

    stages = []
    for t in ts:
        u, v, w = uvw_at(pair.S, z_big, f, t)
        l, r, l_p, r_p = lr_at(pair.S, z_big, f, m, t, fp)
        stages.append(ChainStage(Fraction(t), u, v, w, l, r, l_p, r_p))

    certificates = {}
    diagnostics = {}

    def record(name, ok, detail=""):
        certificates[name] = bool(ok)
        if not ok:
            diagnostics[name] = detail

    # omega is ad(Z)-invariant: omega([Z,a],b) + omega(a,[Z,b]) = 0
    z_sup = _support(z_big.to_vector())
    ok = True
    for st in stages:
        sups = [_support(b) for b in st.u.basis]
        z_sups = [_support(_sparse_bracket(n, z_sup, s)) for s in sups]
        for sa, za in zip(sups, z_sups):
            for sb, zb in zip(sups, z_sups):
                if _omega_supports(f, za, sb) + _omega_supports(f, sa, zb):
                    ok = False
    record("omega_ad_z_invariant", ok)

    record("kernel_is_centralizer", _omega_radical_full(f) == centralizer(f),
           "radical of omega on gl_n differs from g_phi")

    def isotropic(space):
        sups = [_support(b) for b in space.basis]
        return all(_omega_supports(f, sups[i], sups[j]) == 0
                   for i in range(len(sups)) for j in range(i + 1, len(sups)))

    ok = True
    for st in stages:
        _, rad = _gram_and_radical(f, st.u)
        half = Fraction(st.u.dim + rad.dim, 2)
        for space in (st.l, st.r):
            if not isotropic(space) or Fraction(space.dim) != half:
                ok = False
    record("maximal_isotropy", ok)

    ok = all(stages[i + 1].l.contains_subspace(stages[i].r)
             for i in range(len(stages) - 1))
    ok_p = all(stages[i + 1].l_prime.contains_subspace(stages[i].r_prime)
               for i in range(len(stages) - 1))
    record("stage_inclusions", ok and ok_p)

    def bracket_into(a_space, b_space, target):
        a_sups = [_support(a) for a in a_space.basis]
        b_sups = [_support(b) for b in b_space.basis]
        for sa in a_sups:
            for sb in b_sups:
                if not target.contains(_sparse_bracket(n, sa, sb)):
                    return False
        return True

    ok = all(bracket_into(st.l, st.r, st.l.intersect(st.r)) and
             bracket_into(st.l_prime, st.r_prime,
                          st.l_prime.intersect(st.r_prime))
             for st in stages[:-1])
    record("bracket_condition", ok)

    ok = True
    for st in stages:
        lr = st.l_prime + st.r_prime
        _, rad = _gram_and_radical(f, lr)
        if rad != st.l_prime.intersect(st.r_prime):
            ok = False
    record("radical_condition", ok)

    threshold = Fraction(pert.i + 1, pert.i + 2)
    ok = all(st.l_prime == st.l and st.r_prime == st.r
             for st in stages if st.t < threshold)
    record("threshold", ok)

    if fp is not None:
        record("x_witness", pert.X_witness is not None,
               "no X with phi'(X) = 1 in the prescribed weight space")

    # final stage: r'_{t_n} isotropic for both forms; q maximal isotropic
    # for omega_{phi+phi'} containing v_1 and r'_{t_n}
    f_total = f if fp is None else f + fp
    last_r = stages[-2].r_prime if len(stages) > 1 else stages[-1].r_prime
    u1 = stages[-1].u
    v1 = stages[-1].v

    def isotropic_for(g, space):
        sups = [_support(b) for b in space.basis]
        return all(_omega_supports(g, sups[i], sups[j]) == 0
                   for i in range(len(sups)) for j in range(i + 1, len(sups)))

    record("final_isotropy",
           isotropic_for(f, last_r) and isotropic_for(f_total, last_r),
           "r'_{t_n} is not isotropic in u_1")

    pool = list(v1.basis) + list(last_r.basis) + list(u1.basis)
    q_final = Subspace(d, greedy_lagrangian(f_total, pool)).intersect(u1)
    _, rad1 = _gram_and_radical(f_total, u1)
    q_ok = (q_final.contains_subspace(v1)
            and q_final.contains_subspace(last_r.intersect(u1))
            and isotropic_for(f_total, q_final)
            and Fraction(q_final.dim) == Fraction(u1.dim + rad1.dim, 2))
    record("q_final", q_ok)

    return DeformationChain(tuple(criticals), tuple(stages), m, q_final,
                            certificates, diagnostics, pert)
