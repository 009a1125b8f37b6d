"""Principal diagonal elements and simple systems compatible with a nilpotent.

For gl_n every simple system of the diagonal torus is an ordering w of the
coordinates, with simple roots alpha_{w(i), w(i+1)}.  A diagonal S is
principal for Delta_w when alpha(S) = 2 on every simple root, i.e. the
entries of S form a strictly decreasing arithmetic progression with step 2
along w.  A nilpotent f is principal-in-a-Levi when some ordering puts all
of its entries on the simple negative root spaces; the root-system
construction below produces such an ordering from a regular element
h_eps = Z + eps Z' + eps^2 h, with eps an exact power of 1/2 chosen so the
lexicographic comparison (Z first, then Z', then h) is realized by a single
linear functional.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (NotCompatibleError, NotPLError, RegularityFailureError)
from .gln import LieElement, is_neutral
from .whittaker import WhittakerPair, mw_decompose, preorder_geq


@dataclass(frozen=True)
class SimpleSystem:
    """An ordering w of {1..n}; simple roots are alpha_{w(i), w(i+1)}."""

    ordering: tuple

    def __post_init__(self):
        n = len(self.ordering)
        assert sorted(self.ordering) == list(range(1, n + 1)), \
            "ordering must be a permutation of 1..n"

    @property
    def n(self):
        return len(self.ordering)

    def simple_roots(self):
        """Simple roots as (i, j) pairs meaning eps_i - eps_j, 1-based."""
        w = self.ordering
        return tuple((w[k], w[k + 1]) for k in range(len(w) - 1))

    def to_json(self):
        return {"ordering": list(self.ordering)}


def is_principal(s: LieElement):
    """The SimpleSystem for which alpha(S) = 2 on all simple roots, if any.

    Exists iff the entries of S are pairwise distinct and, sorted
    descending, form an arithmetic progression with step 2.
    """
    assert s.is_diagonal(), "is_principal expects a diagonal element"
    vals = s.diagonal_entries()
    n = s.n
    order = sorted(range(1, n + 1), key=lambda i: (-vals[i - 1], i))
    ranked = [vals[i - 1] for i in order]
    for k in range(n - 1):
        if ranked[k] - ranked[k + 1] != 2:
            return None
    return SimpleSystem(tuple(order))


def principal_element(delta: SimpleSystem) -> LieElement:
    """The traceless diagonal S_Delta with alpha(S_Delta) = 2 on Delta."""
    n = delta.n
    vals = [Fraction(0)] * n
    for k, i in enumerate(delta.ordering, start=1):
        vals[i - 1] = Fraction(n + 1 - 2 * k)
    return LieElement.diagonal(vals)


def pl_support(f: LieElement, delta: SimpleSystem):
    """Indices k (1-based) of the simple roots alpha_{w(k),w(k+1)} whose
    negative root space carries a nonzero component of f.

    Raises NotCompatibleError unless every nonzero entry of f sits at a
    simple negative position (w(k+1), w(k)) of delta.
    """
    n = f.n
    assert delta.n == n
    allowed = {}
    w = delta.ordering
    for k in range(n - 1):
        allowed[(w[k + 1], w[k])] = k + 1
    support = set()
    ent = f.matrix.entries
    for i in range(n):
        for j in range(n):
            if not ent[i][j]:
                continue
            pos = (i + 1, j + 1)
            if pos not in allowed:
                raise NotCompatibleError(
                    f"entry at {pos} is not a simple negative position")
            support.add(allowed[pos])
    return tuple(sorted(support))


def _compatible_ordering(f: LieElement) -> SimpleSystem:
    """An ordering whose simple negatives support f, from the chain graph.

    Each nonzero entry (a, b) of f demands that b immediately precede a;
    the entries must therefore form vertex-disjoint acyclic paths, which
    are concatenated longest-first (ties by smallest starting coordinate).
    Raises NotPLError when the entries do not form such paths.
    """
    n = f.n
    ent = f.matrix.entries
    succ = {}
    pred = {}
    for i in range(n):
        if ent[i][i]:
            raise NotPLError("nonzero diagonal entry")
        for j in range(n):
            if i != j and ent[i][j]:
                if j + 1 in succ or i + 1 in pred:
                    raise NotPLError(
                        "entries do not form disjoint coordinate chains")
                succ[j + 1] = i + 1
                pred[i + 1] = j + 1
    paths = []
    for start in range(1, n + 1):
        if start in pred:
            continue
        path = [start]
        seen = {start}
        while path[-1] in succ:
            nxt = succ[path[-1]]
            if nxt in seen:
                raise NotPLError("cycle in the entry graph")
            path.append(nxt)
            seen.add(nxt)
        paths.append(path)
    if sum(len(p) for p in paths) != n:
        raise NotPLError("cycle in the entry graph")
    paths.sort(key=lambda p: (-len(p), p[0]))
    return SimpleSystem(tuple(i for p in paths for i in p))


@dataclass(frozen=True)
class PLRootSystem:
    """The regularized simple system for a pair, with the (a)-(d) report."""

    h: LieElement
    delta: SimpleSystem
    positive_roots: tuple  # of (i, j) pairs, 1-based, meaning eps_i - eps_j
    epsilon: Fraction
    h_eps: LieElement
    report: dict

    @property
    def all_pass(self):
        return all(v for k, v in self.report.items() if isinstance(v, bool))

    def to_json(self):
        from .exactlin import rat_str
        rep = {}
        for k, v in self.report.items():
            rep[k] = v
        return {
            "h": [rat_str(x) for x in self.h.diagonal_entries()],
            "delta": self.delta.to_json(),
            "epsilon": rat_str(self.epsilon),
            "h_eps": [rat_str(x) for x in self.h_eps.diagonal_entries()],
            "report": rep,
        }


def _choose_epsilon(zv, z2v, hv, n):
    """Largest eps = 2^-k making h_eps = Z + eps Z' + eps^2 h realize the
    lexicographic sign of (alpha(Z), alpha(Z'), alpha(h)) on every root."""
    eps = Fraction(1)
    for _ in range(128):
        ok = True
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                az = zv[i] - zv[j]
                az2 = z2v[i] - z2v[j]
                ah = hv[i] - hv[j]
                if az:
                    if not abs(az) > eps * abs(az2) + eps * eps * abs(ah):
                        ok = False
                elif az2:
                    if not abs(az2) > eps * abs(ah):
                        ok = False
                elif not ah:
                    raise RegularityFailureError(
                        f"root ({i + 1},{j + 1}) vanishes on Z, Z' and h")
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return eps
        eps = eps / 2
    raise AssertionError("epsilon search did not terminate")


def plroot_system(pair: WhittakerPair) -> PLRootSystem:
    """Simple system Delta with supp(f) inside Delta and the compatibility
    report for the pair.

    Writes S = h + Z with h neutral, picks a coordinate-chain ordering
    Delta' supporting f, sets Z' = S_{Delta'} - h, regularizes with
    h_eps = Z + eps Z' + eps^2 h and reads Delta off the descending order
    of h_eps.  Report entries: (a) f is supported on simple negatives of
    Delta, (b) S is diagonal, (c) h is neutral for f, (d) every root alpha
    with alpha(h) <= 0 and alpha(S) > 0 is h_eps-positive.
    """
    f = pair.f
    n = pair.n
    delta_prime = _compatible_ordering(f)
    dec = mw_decompose(pair)
    h = dec.h
    assert h.is_diagonal(), \
        "neutral element is not diagonal in these coordinates"
    z = dec.Z
    assert z.is_diagonal()
    z_prime = principal_element(delta_prime) - h

    hv = h.diagonal_entries()
    zv = z.diagonal_entries()
    z2v = z_prime.diagonal_entries()
    eps = _choose_epsilon(zv, z2v, hv, n)
    he_vals = [zv[i] + eps * z2v[i] + eps * eps * hv[i] for i in range(n)]
    h_eps = LieElement.diagonal(he_vals)

    for i in range(n):
        for j in range(i + 1, n):
            if he_vals[i] == he_vals[j]:
                raise RegularityFailureError(
                    f"h_eps is not regular: coordinates {i + 1}, {j + 1}")

    order = sorted(range(1, n + 1), key=lambda i: (-he_vals[i - 1], i))
    delta = SimpleSystem(tuple(order))
    positive = tuple((i + 1, j + 1) for i in range(n) for j in range(n)
                     if i != j and he_vals[i] > he_vals[j])
    positive_set = set(positive)

    report = {}
    try:
        support = pl_support(f, delta)
        report["a_support"] = True
        report["support"] = list(support)
    except NotCompatibleError as exc:
        report["a_support"] = False
        report["support"] = str(exc)
    report["b_diagonal"] = pair.S.is_diagonal()
    report["c_neutral"] = is_neutral(h, f)
    sv = pair.S.diagonal_entries()
    d_ok = True
    d_roots = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            ah = hv[i] - hv[j]
            a_s = sv[i] - sv[j]
            if ah <= 0 and a_s > 0:
                inside = (i + 1, j + 1) in positive_set
                d_roots.append({"root": [i + 1, j + 1], "positive": inside})
                d_ok = d_ok and inside
    report["d_nonpositive_roots"] = d_ok
    report["d_diagnostics"] = d_roots
    return PLRootSystem(h, delta, positive, eps, h_eps, report)


def principal_dominator(pair: WhittakerPair) -> LieElement:
    """The principal diagonal S~ = S_Delta dominating the pair.

    alpha(S~) = 2 on the constructed Delta and the preorder certificate
    S - h >=_phi S~ - h holds (verified before returning).
    """
    rs = plroot_system(pair)
    s_tilde = principal_element(rs.delta)
    assert is_principal(s_tilde) is not None
    h = rs.h
    assert preorder_geq(pair.S - h, s_tilde - h, h, pair.f), \
        "preorder certificate failed for the principal dominator"
    return s_tilde
