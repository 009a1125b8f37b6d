"""Partitions and compositions of n, dominance order, and the split index.

A composition is any sequence of positive integers; a partition is a weakly
decreasing one.  Dominance (prefix-sum) order on partitions of the same n is
the closure order on nilpotent orbit labels, and the split index is the
recursion anchor consumed by the two-block degeneration construction.
"""

from __future__ import annotations

from .errors import NotDominatedError


class Composition:
    """A finite sequence of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        assert all(p > 0 for p in parts), "composition parts must be positive"
        self.parts = parts

    @property
    def total(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        return isinstance(other, (Composition,)) and self.parts == other.parts

    def __hash__(self):
        return hash((type(self).__name__, self.parts))

    def __repr__(self):
        return f"{type(self).__name__}{self.parts}"

    def sorted_decreasing(self) -> "Partition":
        """The decreasing reordering (a partition of the same total)."""
        return Partition(sorted(self.parts, reverse=True))


class Partition(Composition):
    """A weakly decreasing composition.  The empty partition (n = 0) is legal."""

    def __init__(self, parts):
        super().__init__(parts)
        assert all(self.parts[i] >= self.parts[i + 1] for i in range(len(self.parts) - 1)), \
            "partition parts must be weakly decreasing"

    def __eq__(self, other):
        # A partition equals a composition with the same parts; ordering of
        # parts is already canonical here.
        return isinstance(other, Composition) and self.parts == other.parts

    def __hash__(self):
        return hash(("Partition", self.parts))

    def part(self, i):
        """1-based part access; parts past the end are 0."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        cols = [0] * self.parts[0]
        for p in self.parts:
            for i in range(p):
                cols[i] += 1
        return Partition(cols)

    def to_json(self):
        return list(self.parts)


def partitions_of(n):
    """All partitions of n in reverse-lexicographic order."""
    if n == 0:
        yield Partition(())
        return

    def gen(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    for parts in gen(n, n):
        yield Partition(parts)


def compositions_of(n):
    """All compositions of n (2^(n-1) of them), lexicographic by parts."""
    if n == 0:
        yield Composition(())
        return

    def gen(remaining):
        if remaining == 0:
            yield ()
            return
        for first in range(1, remaining + 1):
            for rest in gen(remaining - first):
                yield (first,) + rest

    for parts in gen(n):
        yield Composition(parts)


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """True iff mu <= lam in dominance order (all prefix sums of lam dominate).

    Equivalently the mu-orbit lies in the closure of the lam-orbit.
    """
    if mu.total != lam.total:
        raise NotDominatedError(
            f"partitions of different totals: {mu.total} vs {lam.total}")
    acc_mu = acc_lam = 0
    for j in range(1, max(len(mu), len(lam)) + 1):
        acc_mu += mu.part(j)
        acc_lam += lam.part(j)
        if acc_lam < acc_mu:
            return False
    return True


def split_index(lam: Partition, mu: Partition) -> int:
    """The recursion-defined index i with lam_i >= mu_i >= lam_{i+1}.

    Computed by the recursion: if mu_1 >= lam_2 the index is 1; otherwise
    recurse on lam' = (lam_1 + lam_2 - mu_1, lam_3, ...), mu' = (mu_2, ...)
    and shift the returned index by one.  This particular index (not merely
    the smallest valid one) is what the degeneration construction consumes.
    """
    if not dominance_leq(mu, lam):
        raise NotDominatedError(f"{mu} is not dominated by {lam}")
    if mu.part(1) >= lam.part(2):
        return 1
    lam_next = Partition((lam.part(1) + lam.part(2) - mu.part(1),) + lam.parts[2:])
    mu_next = Partition(mu.parts[1:])
    return split_index(lam_next, mu_next) + 1
