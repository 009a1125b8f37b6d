"""Constructive degenerations between nilpotent orbits inside a Levi slice.

Given partitions mu <= lam (dominance), build an integer diagonal S with
[S, J_lam] = -2 J_lam together with an explicit curve in the centralizer G_S
-- unipotent conjugations alternating with diagonal one-parameter scalings --
whose t -> 0 limit is a nilpotent Y of Jordan type mu.  The curve is checked
symbolically: every matrix entry along the way is a Laurent polynomial in t,
all exponents must be nonnegative, and the constant terms must assemble to Y.

The two-block step follows the explicit lemma (S = diag(h_{p+q}, h_r +
(r+q-p) Id_r), g a product of r elementary unipotents); the general case
recurses through the split index of the partition pair and merges the
sub-answers with a scalar shift on the shared block.  Note the printed form
of the lemma states Ad(g)F = F + E_{p+1,m} while the stated g produces the
opposite sign; nothing here depends on that sign -- the witness is verified
through Jordan types, commutation and the rank oracle, never entrywise
against a printed matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NotDominatedError
from .exactlin import QMatrix, jordan_type
from .gln import LieElement, jordan_matrix, neutral_h
from .partitions import Partition, dominance_leq, split_index
from .whittaker import levi_relation


# ---------------------------------------------------------------------------
# Laurent-polynomial matrices (entries are dicts exponent -> coefficient)
# ---------------------------------------------------------------------------

def _lent(c):
    return {0: Fraction(c)} if c else {}


def _lmat(m: QMatrix):
    return [[_lent(x) for x in row] for row in m.entries]


def _lmul(a, b):
    n, k, m2 = len(a), len(b), len(b[0]) if b else 0
    out = [[{} for _ in range(m2)] for _ in range(n)]
    for i in range(n):
        for l in range(k):
            cell = a[i][l]
            if not cell:
                continue
            for j in range(m2):
                other = b[l][j]
                if not other:
                    continue
                acc = out[i][j]
                for e1, c1 in cell.items():
                    for e2, c2 in other.items():
                        e = e1 + e2
                        v = acc.get(e, Fraction(0)) + c1 * c2
                        if v:
                            acc[e] = v
                        elif e in acc:
                            del acc[e]
    return out


def _lshift(mat, exps):
    """Conjugation by diag(t^{e_1}, ..., t^{e_n}): entry (i,j) shifts by
    e_i - e_j."""
    n = len(mat)
    return [[{e + exps[i] - exps[j]: c for e, c in mat[i][j].items()}
             for j in range(n)] for i in range(n)]


def _llimit(mat):
    """t -> 0 limit; requires every exponent >= 0."""
    n = len(mat)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            assert all(e >= 0 for e in mat[i][j]), \
                "degeneration curve has a pole at t = 0"
            row.append(mat[i][j].get(0, Fraction(0)))
        out.append(tuple(row))
    return QMatrix(out)


def _run_curve(start: QMatrix, stages):
    """Apply (conjugator, exponent-vector) stages to start, symbolically."""
    current = start
    for conj, exps in stages:
        c_mat = conj.matrix
        lm = _lmul(_lmat(c_mat), _lmul(_lmat(current), _lmat(c_mat.inverse())))
        current = _llimit(_lshift(lm, exps))
    return current


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegenerationWitness:
    """S plus the concrete curve in G_S degenerating J_lam to Y."""

    lam: Partition
    mu: Partition
    S: LieElement
    Y: LieElement
    stages: tuple  # of (conjugator: LieElement, exponents: tuple of int)
    checks: dict

    @property
    def conjugators(self):
        return tuple(c for c, _ in self.stages)

    @property
    def curve_spec(self):
        return tuple(e for _, e in self.stages)

    @property
    def all_checks_pass(self):
        return all(self.checks.values())

    def to_json(self):
        return {
            "S": [int(x) for x in self.S.diagonal_entries()],
            "Y": self.Y.to_json(),
            "conjugators": [c.to_json() for c in self.conjugators],
            "curve": [list(e) for e in self.curve_spec],
            "checks": dict(self.checks),
        }


def _verify(lam, mu, s, y, stages) -> dict:
    f = jordan_matrix(lam)
    checks = {}
    checks["grading"] = s.bracket(f) == f.scale(-2)
    checks["integer_s"] = all(x.denominator == 1 for x in s.diagonal_entries())
    checks["conjugators_in_G_S"] = all(
        (c.matrix * s.matrix) == (s.matrix * c.matrix) for c, _ in stages)
    checks["jordan_type"] = jordan_type(y.matrix) == mu
    checks["curve_limit"] = _run_curve(f.matrix, stages) == y.matrix
    rel = levi_relation(s, y, f)
    checks["closure"] = rel in ("conjugate", "x_in_closure_only")
    return checks


def two_blocks(p: int, q: int, r: int) -> DegenerationWitness:
    """Degenerate J_(p+q, r) to diag(J_p, X) with X regular in gl_{q+r}.

    Torus-only branch for r = 0 or q = 0; otherwise the explicit unipotent g
    followed by the scaling diag(1^p, t^{m-p}).
    """
    p, q, r = int(p), int(q), int(r)
    if p < 0 or q < 0 or r < 0 or p < r or p + q + r == 0:
        raise DomainError("two_blocks needs p >= r >= 0, q >= 0, m > 0")
    m = p + q + r
    lam = Partition([x for x in (p + q, r) if x] or [p + q])
    mu = Partition(sorted((x for x in (p, q + r) if x), reverse=True))
    exps = tuple([0] * p + [1] * (m - p))
    if r == 0 or q == 0:
        s = neutral_h(lam)
        stages = ((LieElement.identity(m), exps),)
    else:
        s_vals = [Fraction(p + q - (2 * i - 1)) for i in range(1, p + q + 1)]
        s_vals += [Fraction(2 * r + 3 * q + p - (2 * i - 1))
                   for i in range(p + q + 1, m + 1)]
        s = LieElement.diagonal(s_vals)
        g = QMatrix.identity(m)
        for j in range(1, r + 1):
            g = g * (QMatrix.identity(m) + QMatrix.elementary(m, p - r + j,
                                                              m - r + j))
        stages = ((LieElement(g), exps),)
    y = LieElement(_run_curve(jordan_matrix(lam).matrix, stages))
    checks = _verify(lam, mu, s, y, stages)
    assert all(checks.values()), ("two_blocks self-check failed", p, q, r,
                                  checks)
    return DegenerationWitness(lam, mu, s, y, stages, checks)


def _embed_vector(vals, positions, n, fill=Fraction(0)):
    out = [fill] * n
    for v, pos in zip(vals, positions):
        out[pos] = v
    return out


def _embed_matrix(m: QMatrix, positions, n) -> QMatrix:
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = Fraction(1)
    ent = m.entries
    for i, pi in enumerate(positions):
        for j, pj in enumerate(positions):
            out[pi][pj] = ent[i][j]
    return QMatrix(out)


def _embed_nilpotent(m: QMatrix, positions, n) -> QMatrix:
    out = [[Fraction(0)] * n for _ in range(n)]
    ent = m.entries
    for i, pi in enumerate(positions):
        for j, pj in enumerate(positions):
            out[pi][pj] = ent[i][j]
    return QMatrix(out)


def construct(lam: Partition, mu: Partition) -> DegenerationWitness:
    """The full recursive witness for a dominated pair mu <= lam.

    Splits at the index i with lam_i >= mu_i >= lam_{i+1}, runs the two-block
    degeneration on the merged block of size lam_i + lam_{i+1}, recurses on
    the reduced pair, and glues through the two centralizer-preserving
    embeddings, shifting the sub-answer by a scalar to align the shared
    block.  All invariants are re-verified on the assembled witness.
    """
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    if not dominance_leq(mu, lam):
        raise NotDominatedError(f"{mu} is not dominated by {lam}")
    n = lam.total
    if lam == mu:
        s = neutral_h(lam)
        y = jordan_matrix(lam)
        stages = ()
        checks = _verify(lam, mu, s, y, stages)
        assert all(checks.values())
        return DegenerationWitness(lam, mu, s, y, stages, checks)

    i = split_index(lam, mu)
    r = lam.part(i + 1)
    q = mu.part(i) - r
    p = lam.part(i) + r - mu.part(i)
    m = lam.part(i) + r
    mu_i = mu.part(i)
    a = sum(lam.parts[:i - 1])

    level1 = two_blocks(p, q, r)
    lam_next = Partition([x for x in
                          lam.parts[:i - 1] + (p,) + lam.parts[i + 1:] if x])
    mu_next = Partition(mu.parts[:i - 1] + mu.parts[i:])
    sub = construct(lam_next, mu_next)

    # scalar shift aligning the shared p-block of the two diagonals (the
    # sub-answer is shifted; brackets are unaffected by central shifts)
    s1 = list(level1.S.diagonal_entries())
    s2 = list(sub.S.diagonal_entries())
    if p:
        diffs = {s2[a + j] - s1[j] for j in range(p)}
        assert len(diffs) == 1, "shared block mismatch"
        c = diffs.pop()
        s2 = [v - c for v in s2]

    # coordinate positions (0-based) of the two embeddings in gl_n
    pos1 = list(range(a, a + m))                      # iota_1: gl_m
    pos2 = list(range(a + p)) + list(range(a + p + mu_i, n))  # iota_2

    s_vals = [Fraction(0)] * n
    for v, pos in zip(s2, pos2):
        s_vals[pos] = v
    for v, pos in zip(s1, pos1):
        s_vals[pos] = v
    s = LieElement.diagonal(s_vals)

    x_block = QMatrix([[level1.Y.matrix.entries[p + ii][p + jj]
                        for jj in range(mu_i)] for ii in range(mu_i)])
    y_mat = (_embed_nilpotent(sub.Y.matrix, pos2, n)
             + _embed_nilpotent(x_block, list(range(a + p, a + p + mu_i)), n))
    y = LieElement(y_mat)

    stages = []
    for conj, exps in level1.stages:
        stages.append((LieElement(_embed_matrix(conj.matrix, pos1, n)),
                       tuple(_embed_vector(exps, pos1, n, 0))))
    for conj, exps in sub.stages:
        stages.append((LieElement(_embed_matrix(conj.matrix, pos2, n)),
                       tuple(_embed_vector(exps, pos2, n, 0))))
    stages = tuple(stages)

    checks = _verify(lam, mu, s, y, stages)
    assert all(checks.values()), ("construct self-check failed", lam, mu,
                                  checks)
    return DegenerationWitness(lam, mu, s, y, stages, checks)
