"""Binomial coefficients, colexicographic subset ranking, and intersection-size ranges.

Ground sets are always {0, ..., n-1}; callers that work with named ground
sets (a base vertex and its complement, say) relabel before ranking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import ParameterError


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer, zero whenever k < 0, n < 0 or k > n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class SubsetIndex:
    """Colexicographic bijection between k-subsets of {0..n-1} and 0..C(n,k)-1."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 0 or self.k < 0 or self.k > self.n:
            raise ParameterError(f"no {self.k}-subsets of a {self.n}-set")

    @property
    def count(self) -> int:
        return binomial(self.n, self.k)

    def rank(self, subset) -> int:
        """Colex rank of a strictly increasing k-tuple of elements of {0..n-1}."""
        s = tuple(subset)
        if len(s) != self.k:
            raise ParameterError(f"expected {self.k} elements, got {len(s)}")
        prev = -1
        for e in s:
            if not prev < e < self.n:
                raise ParameterError(f"malformed subset {s!r} for n={self.n}")
            prev = e
        return sum(comb(e, t + 1) for t, e in enumerate(s))

    def unrank(self, r: int) -> tuple[int, ...]:
        """Inverse of rank: greedy colex decoding, largest element first."""
        if not 0 <= r < self.count:
            raise ParameterError(f"rank {r} out of range 0..{self.count - 1}")
        out = []
        bound = self.n
        for t in range(self.k, 0, -1):
            c = bound - 1
            while comb(c, t) > r:
                c -= 1
            out.append(c)
            r -= comb(c, t)
            bound = c
        return tuple(reversed(out))

    def subsets(self) -> list[tuple[int, ...]]:
        """All k-subsets in colex order (index in this list == rank)."""
        return sorted(itertools.combinations(range(self.n), self.k), key=lambda s: s[::-1])


@dataclass(frozen=True)
class IntersectionRange:
    """Closed interval of feasible |y ∩ z| for an i-subset y and j-subset z of a v-set."""

    i: int
    j: int
    v: int
    lo: int
    hi: int

    def __len__(self) -> int:
        return self.hi - self.lo + 1 if self.hi >= self.lo else 0

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __contains__(self, g) -> bool:
        return self.lo <= g <= self.hi


def intersection_range(i: int, j: int, v: int) -> IntersectionRange:
    """Feasible intersection sizes [max(0, i+j-v), min(i, j)].

    Nonempty for every 0 <= i, j <= v.
    """
    return IntersectionRange(i, j, v, max(0, i + j - v), min(i, j))
