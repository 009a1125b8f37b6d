"""Structure of gl_n over Q: brackets, trace pairing, Jordan data, sl2 triples.

Coordinates on gl_n are always the fixed ordered basis E_11, E_12, ..., E_nn
(row-major), so a matrix flattens to a vector of length n^2 and every module
sees byte-identical Subspace values.

Conventions: J_k is the lower-triangular Jordan block (ones on the
subdiagonal), h_k = diag(k-1, k-3, ..., 1-k), and the coadjoint sign is
(ad*(Y)phi)(X) = -phi([Y,X]); under the trace identification phi = tr(f .)
the weight condition ad*(S)phi = -2 phi becomes [S, f] = -2 f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotNilpotentError
from .exactlin import QMatrix, Subspace, kernel
from .partitions import Composition


class LieElement:
    """An element of gl_n (or, via the trace form, a functional on it)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        if isinstance(matrix, LieElement):
            matrix = matrix.matrix
        if not isinstance(matrix, QMatrix):
            matrix = QMatrix(matrix)
        assert matrix.is_square(), "Lie elements are square matrices"
        self.matrix = matrix

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n):
        return LieElement(QMatrix.zeros(n))

    @staticmethod
    def identity(n):
        return LieElement(QMatrix.identity(n))

    @staticmethod
    def diagonal(values):
        return LieElement(QMatrix.diagonal(values))

    @staticmethod
    def elementary(n, i, j):
        """E_ij with 1-based indices."""
        return LieElement(QMatrix.elementary(n, i, j))

    @staticmethod
    def from_vector(vec, n):
        """Unflatten a length-n^2 row-major coordinate vector."""
        vec = list(vec)
        assert len(vec) == n * n
        return LieElement(QMatrix([vec[i * n:(i + 1) * n] for i in range(n)]))

    # -- structure ---------------------------------------------------------

    @property
    def n(self):
        return self.matrix.rows

    def __getitem__(self, ij):
        return self.matrix[ij]

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(("LieElement", self.matrix))

    def __repr__(self):
        return f"LieElement({self.matrix.to_json()})"

    def is_zero(self):
        return self.matrix.is_zero()

    def is_diagonal(self):
        return self.matrix.is_diagonal()

    def diagonal_entries(self):
        return self.matrix.diagonal_entries()

    def is_nilpotent(self):
        return self.matrix.power(self.n).is_zero()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        return LieElement(self.matrix + other.matrix)

    def __sub__(self, other):
        return LieElement(self.matrix - other.matrix)

    def __neg__(self):
        return LieElement(-self.matrix)

    def scale(self, c):
        return LieElement(self.matrix.scale(c))

    def bracket(self, other):
        a, b = self.matrix, other.matrix
        return LieElement(a * b - b * a)

    def pair(self, other):
        """Trace form <x, y> = tr(xy)."""
        return (self.matrix * other.matrix).trace()

    def to_vector(self):
        """Row-major flattening to a coordinate vector of length n^2."""
        return tuple(x for row in self.matrix.entries for x in row)

    def to_json(self):
        return self.matrix.to_json()

    @staticmethod
    def from_json(data):
        return LieElement(QMatrix.from_json(data))


def bracket(x: LieElement, y: LieElement) -> LieElement:
    return x.bracket(y)


def ad_matrix(x: LieElement) -> QMatrix:
    """Matrix of ad(x) = [x, .] on gl_n in the flattened E_ij coordinates."""
    n = x.n
    d = n * n
    m = [[Fraction(0)] * d for _ in range(d)]
    ent = x.matrix.entries
    for k in range(n):
        for l in range(n):
            b = k * n + l  # column index of E_{k+1,l+1}
            for i in range(n):
                if ent[i][k]:
                    m[i * n + l][b] += ent[i][k]
            for j in range(n):
                if ent[l][j]:
                    m[k * n + j][b] -= ent[l][j]
    return QMatrix(m)


@lru_cache(maxsize=1024)
def centralizer(x: LieElement) -> Subspace:
    """{Y in gl_n : [x, Y] = 0} as a Subspace of Q^(n^2)."""
    return kernel(ad_matrix(x))


@dataclass(frozen=True)
class Sl2Triple:
    """An sl2 triple (f, h, e): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""

    f: LieElement
    h: LieElement
    e: LieElement

    def verify(self) -> bool:
        two_e = self.e.scale(2)
        two_f = self.f.scale(2)
        return (self.h.bracket(self.e) == two_e
                and self.h.bracket(self.f) == -two_f
                and self.e.bracket(self.f) == self.h)

    def to_json(self):
        return {"f": self.f.to_json(), "h": self.h.to_json(), "e": self.e.to_json()}


def _as_parts(eta):
    if isinstance(eta, Composition):
        return eta.parts
    return tuple(int(p) for p in eta)


def jordan_matrix(eta) -> LieElement:
    """J_eta = diag(J_{eta_1}, ..., J_{eta_k}), lower-triangular blocks."""
    parts = _as_parts(eta)
    n = sum(parts)
    assert n > 0, "empty composition has no Jordan matrix"
    m = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for p in parts:
        for i in range(p - 1):
            m[off + i + 1][off + i] = Fraction(1)
        off += p
    return LieElement(QMatrix(m))


def neutral_h(eta) -> LieElement:
    """h_eta = diag(h_{eta_1}, ..., h_{eta_k}) with h_k = diag(k-1, ..., 1-k)."""
    parts = _as_parts(eta)
    values = []
    for p in parts:
        values.extend(Fraction(p - 1 - 2 * i) for i in range(p))
    return LieElement.diagonal(values)


# ---------------------------------------------------------------------------
# Jordan chains and sl2 completion
# ---------------------------------------------------------------------------

def jordan_chains(f: LieElement):
    """Deterministic Jordan chain basis of a nilpotent f.

    Chains are extracted greedily from the highest nilpotency degree down;
    candidate tops are scanned in the order of the canonical echelon basis of
    Ker f^k, which breaks ties by smallest pivot column.  Each chain is the
    tuple (v, f v, ..., f^{len-1} v).
    """
    n = f.n
    mat = f.matrix
    kernels = [Subspace.zero(n)]
    power = QMatrix.identity(n)
    while kernels[-1].dim < n:
        power = power * mat
        kernels.append(kernel(power))
        if len(kernels) > n + 1:
            raise NotNilpotentError("matrix is not nilpotent")
    degree = len(kernels) - 1
    chains = []
    for k in range(degree, 0, -1):
        carried = []
        for ch in chains:
            if len(ch) > k:
                carried.append(ch[len(ch) - k])
        blocked = kernels[k - 1] + Subspace(n, carried)
        target = kernels[k].dim
        for row in kernels[k].basis_int():
            if blocked.dim == target:
                break
            if blocked.contains(row):
                continue
            vec = tuple(Fraction(x) for x in row)
            chain = [vec]
            for _ in range(k - 1):
                prev = chain[-1]
                nxt = tuple(sum(mat.entries[i][j] * prev[j] for j in range(n))
                            for i in range(n))
                chain.append(nxt)
            chains.append(tuple(chain))
            blocked = blocked + Subspace(n, [row])
    assert sum(len(c) for c in chains) == n
    return chains


def sl2_complete(f: LieElement) -> Sl2Triple:
    """Complete a nilpotent f (as nil-negative) to an sl2 triple (f, h, e).

    A Jordan basis for f is computed, the standard triple of the Jordan form
    is pulled back through the basis change, yielding exact h and e with
    [h,e] = 2e, [h,f] = -2f, [e,f] = h.  Deterministic via jordan_chains.
    """
    n = f.n
    if f.is_zero():
        z = LieElement.zero(n)
        return Sl2Triple(f, z, z)
    chains = jordan_chains(f)
    # columns of the basis change: chain vectors in order
    cols = [v for ch in chains for v in ch]
    p_mat = QMatrix(list(zip(*cols)))
    h_vals = []
    e_model = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for ch in chains:
        k = len(ch)
        h_vals.extend(Fraction(k - 1 - 2 * i) for i in range(k))
        for i in range(1, k):
            # standard nil-positive for a lower Jordan block of size k
            e_model[off + i - 1][off + i] = Fraction(i * (k - i))
        off += k
    p_inv = p_mat.inverse()
    h = LieElement(p_mat * QMatrix.diagonal(h_vals) * p_inv)
    e = LieElement(p_mat * QMatrix(e_model) * p_inv)
    triple = Sl2Triple(f, h, e)
    assert triple.verify()
    return triple


def is_neutral(h: LieElement, f: LieElement) -> bool:
    """Whether h is a neutral element for the functional tr(f .).

    For diagonal h: [h,f] = -2f and X |-> [X,f] maps the zero-weight space
    g^h_0 onto the (-2)-weight space g^h_{-2}.
    """
    assert h.is_diagonal(), "is_neutral expects diagonal h"
    if h.bracket(f) != -f.scale(2):
        return False
    n = h.n
    hv = h.diagonal_entries()
    image_vectors = []
    dim_minus2 = 0
    for i in range(n):
        for j in range(n):
            w = hv[i] - hv[j]
            if w == -2:
                dim_minus2 += 1
            if w == 0:
                x = LieElement.elementary(n, i + 1, j + 1)
                br = x.bracket(f)
                if not br.is_zero():
                    image_vectors.append(br.to_vector())
    image = Subspace(n * n, image_vectors)
    return image.dim == dim_minus2


def _neutral_general(h: LieElement, f: LieElement) -> bool:
    """Neutrality test valid for any semisimple h: [h,f] = -2f and
    h in Im(ad f) (the standard equivalent characterization)."""
    if h.bracket(f) != -f.scale(2):
        return False
    n = h.n
    image = Subspace(n * n, list(zip(*ad_matrix(f).entries)))
    return image.contains(h.to_vector())
