"""Exact rational linear algebra: dense matrices over Q and subspace lattices.

Everything is exact: rationals are `fractions.Fraction`, matrices are dense
grids of them, and subspaces are canonical reduced-row-echelon bases.  For
speed the echelon engine works on primitive integer rows (a subspace basis
vector can always be rescaled to a primitive integer vector without changing
the subspace); the public `Subspace.basis` re-normalizes pivots to 1 so the
serialized form is literal RREF over Q.  Arbitrary-precision integers are
essential here: chain computations multiply many pivots.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import AmbientMismatchError, NotNilpotentError
from .partitions import Partition

Rational = Fraction


def rat_str(x) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    """Inverse of rat_str (also accepts plain integer strings)."""
    return Fraction(s)


# ---------------------------------------------------------------------------
# integer row engine
# ---------------------------------------------------------------------------

def _row_gcd(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, abs(x))
            if g == 1:
                return 1
    return g


def _primitive(row):
    """Scale an integer row to content 1 with positive leading entry."""
    g = _row_gcd(row)
    if g == 0:
        return None
    lead = next(x for x in row if x)
    if lead < 0:
        g = -g
    if g == 1:
        return tuple(row)
    return tuple(x // g for x in row)


def _int_row(vec):
    """Rescale a rational vector to a primitive integer row (None if zero)."""
    fracs = [Fraction(x) for x in vec]
    if all(x == 0 for x in fracs):
        return None
    den = 1
    for x in fracs:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fracs]
    return _primitive(ints)


def _rref_int(rows, ncols):
    """Canonical reduced echelon of integer rows.

    Returns (rows, pivots): primitive integer rows with positive pivots,
    strictly increasing pivot columns, and zeros above and below each pivot.
    This form is unique per row space, so equality of subspaces is equality
    of row tuples.
    """
    work = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        a = work[r][c]
        for j in range(len(work)):
            if j == r:
                continue
            b = work[j][c]
            if not b:
                continue
            g = gcd(a, b)
            fa, fb = a // g, b // g
            rowj, rowr = work[j], work[r]
            # rowr is zero left of c, so the update below is the full row
            # operation rowj <- fa*rowj - fb*rowr.
            for k in range(ncols):
                rowj[k] = rowj[k] * fa - rowr[k] * fb
            gj = _row_gcd(rowj)
            if gj > 1:
                work[j] = [x // gj for x in rowj]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    out = []
    for i in range(r):
        prim = _primitive(work[i])
        out.append(prim)
    return tuple(out), tuple(pivots)


def _kernel_int(rows, ncols):
    """Canonical basis rows of the right null space of the given row matrix."""
    rr, pivots = _rref_int(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, pc in zip(rr, pivots):
            if row[free]:
                vec[pc] = Fraction(-row[free], row[pc])
        basis.append(_int_row(vec))
    rows2, _ = _rref_int([b for b in basis if b is not None], ncols)
    return rows2


def _reduce_against(rows, pivots, vec):
    """Reduce a rational vector against canonical rows; returns the residue."""
    vec = [Fraction(x) for x in vec]
    for row, pc in zip(rows, pivots):
        if vec[pc]:
            coef = vec[pc] / row[pc]
            for k in range(pc, len(vec)):
                if row[k]:
                    vec[k] -= coef * row[k]
    return vec


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class QMatrix:
    """A dense rows x cols matrix of exact rationals.  Immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(Fraction(x) for x in row) for row in entries)
        assert entries, "matrix needs at least one row"
        cols = len(entries[0])
        assert all(len(row) == cols for row in entries), "ragged rows"
        self.entries = entries
        self.rows = len(entries)
        self.cols = cols

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zeros(rows, cols=None):
        cols = rows if cols is None else cols
        return QMatrix([[0] * cols for _ in range(rows)])

    @staticmethod
    def identity(n):
        return QMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def diagonal(values):
        values = list(values)
        n = len(values)
        return QMatrix([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def elementary(n, i, j):
        """E_ij (1-based), the matrix unit."""
        assert 1 <= i <= n and 1 <= j <= n
        return QMatrix([[1 if (r == i - 1 and c == j - 1) else 0
                         for c in range(n)] for r in range(n)])

    # -- basic structure ---------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"QMatrix({[[str(x) for x in row] for row in self.entries]})"

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def is_square(self):
        return self.rows == self.cols

    def is_diagonal(self):
        return self.is_square() and all(
            self.entries[i][j] == 0
            for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal_entries(self):
        assert self.is_square()
        return tuple(self.entries[i][i] for i in range(self.rows))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        return QMatrix([[a + b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        return QMatrix([[a - b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return QMatrix([[-a for a in row] for row in self.entries])

    def scale(self, c):
        c = Fraction(c)
        return QMatrix([[c * a for a in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            assert self.cols == other.rows, "shape mismatch"
            bt = list(zip(*other.entries))
            return QMatrix([[sum(a * b for a, b in zip(row, col) if a and b)
                             for col in bt] for row in self.entries])
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def transpose(self):
        return QMatrix(list(zip(*self.entries)))

    def trace(self):
        assert self.is_square()
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def power(self, k):
        assert self.is_square() and k >= 0
        result = QMatrix.identity(self.rows)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self):
        """Exact inverse via Gauss-Jordan on the augmented system."""
        assert self.is_square()
        n = self.rows
        aug = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
               for i, row in enumerate(self.entries)]
        for c in range(n):
            piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = Fraction(1) / aug[c][c]
            aug[c] = [x * inv for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return QMatrix([row[n:] for row in aug])

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return [[rat_str(x) for x in row] for row in self.entries]

    @staticmethod
    def from_json(data):
        return QMatrix([[parse_rat(x) for x in row] for row in data])


def rank(m: QMatrix) -> int:
    """Exact row rank over Q."""
    int_rows = [r for r in (_int_row(row) for row in m.entries) if r is not None]
    rr, pivots = _rref_int(int_rows, m.cols)
    return len(pivots)


def kernel(m: QMatrix) -> "Subspace":
    """Null space {x : Mx = 0} as a canonical Subspace of Q^cols."""
    int_rows = [r for r in (_int_row(row) for row in m.entries) if r is not None]
    rows = _kernel_int(int_rows, m.cols)
    return Subspace._from_canonical(m.cols, rows)


def solve_affine(m: QMatrix, rhs):
    """One solution x of Mx = b, or None.

    Computed from the kernel of the augmented map (x, s) -> Mx - s b: any
    kernel vector with s != 0 rescales to a solution.
    """
    rhs = list(rhs)
    assert len(rhs) == m.rows
    aug = QMatrix([list(row) + [-rhs[i]] for i, row in enumerate(m.entries)])
    for row in kernel(aug).basis:
        if row[-1] != 0:
            s = row[-1]
            return tuple(x / s for x in row[:-1])
    return None


def jordan_type(n_mat: QMatrix) -> Partition:
    """Jordan type of a nilpotent matrix from its rank sequence.

    The number of parts >= j is rank(N^{j-1}) - rank(N^j); the result is the
    partition sorted in decreasing order.
    """
    assert n_mat.is_square()
    n = n_mat.rows
    ranks = [n]  # rank of N^0
    power = QMatrix.identity(n)
    while not power.is_zero():
        power = power * n_mat
        ranks.append(rank(power))
        if len(ranks) > n + 1:
            raise NotNilpotentError("matrix is not nilpotent")
    if ranks[-1] != 0:
        raise NotNilpotentError("matrix is not nilpotent")
    # counts[j-1] = number of parts >= j
    counts = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    out = []
    for size in range(len(counts), 0, -1):
        exact = counts[size - 1] - (counts[size] if size < len(counts) else 0)
        out.extend([size] * exact)
    return Partition(out)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """A subspace of Q^ambient with a canonical reduced-echelon basis.

    Internally the basis rows are primitive integer vectors in canonical
    reduced echelon position; two Subspace values are equal iff they are the
    same subspace.
    """

    __slots__ = ("ambient", "_rows", "pivots")

    def __init__(self, ambient, vectors=()):
        rows = [r for r in (_int_row(v) for v in vectors) if r is not None]
        self._rows, self.pivots = _rref_int(rows, ambient)
        self.ambient = ambient

    @classmethod
    def _from_canonical(cls, ambient, rows):
        self = object.__new__(cls)
        self.ambient = ambient
        self._rows = tuple(rows)
        self.pivots = tuple(next(i for i, x in enumerate(r) if x) for r in rows)
        return self

    @classmethod
    def zero(cls, ambient):
        return cls._from_canonical(ambient, ())

    @classmethod
    def full(cls, ambient):
        rows = tuple(tuple(1 if i == j else 0 for j in range(ambient))
                     for i in range(ambient))
        return cls._from_canonical(ambient, rows)

    # -- structure ---------------------------------------------------------

    @property
    def dim(self):
        return len(self._rows)

    @property
    def basis(self):
        """RREF basis over Q (pivot entries normalized to 1)."""
        return tuple(tuple(Fraction(x, row[pc]) for x in row)
                     for row, pc in zip(self._rows, self.pivots))

    def basis_int(self):
        """The primitive integer form of the canonical basis."""
        return self._rows

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self._rows == other._rows)

    def __hash__(self):
        return hash((self.ambient, self._rows))

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"

    def _check_ambient(self, other):
        if self.ambient != other.ambient:
            raise AmbientMismatchError(
                f"ambient {self.ambient} vs {other.ambient}")

    # -- lattice operations ------------------------------------------------

    def contains(self, vec) -> bool:
        residue = _reduce_against(self._rows, self.pivots, vec)
        return all(x == 0 for x in residue)

    def contains_subspace(self, other) -> bool:
        self._check_ambient(other)
        return all(self.contains(row) for row in other._rows)

    def sum(self, other) -> "Subspace":
        self._check_ambient(other)
        rows, _ = _rref_int(list(self._rows) + list(other._rows), self.ambient)
        return Subspace._from_canonical(self.ambient, rows)

    def __add__(self, other):
        return self.sum(other)

    def intersect(self, other) -> "Subspace":
        """Exact intersection (Zassenhaus double-block elimination)."""
        self._check_ambient(other)
        d = self.ambient
        block = [tuple(r) + tuple(r) for r in self._rows]
        block += [tuple(r) + (0,) * d for r in other._rows]
        rr, _ = _rref_int(block, 2 * d)
        inter = [row[d:] for row in rr if all(x == 0 for x in row[:d])]
        rows, _ = _rref_int(inter, d)
        return Subspace._from_canonical(d, rows)

    def complement_basis_in(self, other):
        """Rows of `other` completing this subspace's basis (self <= other).

        Returns the canonical rows of `other` whose pivot columns are not
        pivot columns of self; their classes form a basis of other/self.
        """
        self._check_ambient(other)
        mine = set(self.pivots)
        return tuple(row for row, pc in zip(other._rows, other.pivots)
                     if pc not in mine)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        return {"ambient": self.ambient,
                "basis": [[rat_str(x) for x in row] for row in self.basis]}

    @staticmethod
    def from_json(data):
        return Subspace(data["ambient"],
                        [[parse_rat(x) for x in row] for row in data["basis"]])


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def contains(a: Subspace, v) -> bool:
    return a.contains(v)
