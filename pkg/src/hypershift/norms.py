"""Stirling numbers of the second kind and (t,k)-norms, in exact integer arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

from .hypergraph import Hypergraph, HypergraphError, degrees
from .sunflower import count_sunflowers


def stirling2(k: int, m: int) -> int:
    """S(k, m) from the alternating-sum formula."""
    if k < 0 or m < 0:
        raise ValueError(f"Stirling numbers need non-negative arguments, got ({k}, {m})")
    if m > k:
        return 0
    if m == 0:
        return 1 if k == 0 else 0
    total = sum((-1) ** (m - i) * comb(m, i) * i**k for i in range(m + 1))
    q, rem = divmod(total, factorial(m))
    assert rem == 0
    return q


@lru_cache(maxsize=None)
def stirling2_recurrence(k: int, m: int) -> int:
    """S(k, m) via S(k, m) = m S(k-1, m) + S(k-1, m-1)."""
    if k < 0 or m < 0:
        raise ValueError(f"Stirling numbers need non-negative arguments, got ({k}, {m})")
    if k == m:
        return 1
    if m == 0 or m > k:
        return 0
    return m * stirling2_recurrence(k - 1, m) + stirling2_recurrence(k - 1, m - 1)


@dataclass(frozen=True)
class StirlingTable:
    k: int
    values: tuple[int, ...]  # values[m - 1] == S(k, m)

    def __getitem__(self, m: int) -> int:
        if not 1 <= m <= self.k:
            raise IndexError(m)
        return self.values[m - 1]


def stirling_table(k: int) -> StirlingTable:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return StirlingTable(k, tuple(stirling2(k, m) for m in range(1, k + 1)))


def newton_expand_check(d: int, k: int) -> bool:
    """d^k == sum_m m! S(k, m) C(d, m)."""
    if d < 0 or k < 1:
        raise ValueError(f"need d >= 0 and k >= 1, got d={d}, k={k}")
    return d**k == sum(factorial(m) * stirling2(k, m) * comb(d, m) for m in range(1, k + 1))


def norm_direct(H: Hypergraph, t: int, k: int) -> int:
    """Sum of d(T)^k over all t-subsets T of [n]."""
    if not 1 <= t <= H.r - 1:
        raise HypergraphError(f"kernel size must satisfy 1 <= t <= r-1, got t={t}, r={H.r}")
    if k < 1:
        raise HypergraphError(f"power k must be a positive integer, got {k}")
    # zero-degree sets contribute nothing for k >= 1
    return sum(d**k for d in degrees(H, t).values())


def norm_brute(H: Hypergraph, t: int, k: int) -> int:
    """Same value as norm_direct, scanning every t-subset of [n] against every edge."""
    total = 0
    for T in combinations(range(1, H.n + 1), t):
        tm = sum(1 << (v - 1) for v in T)
        d = sum(1 for e in H.masks if e & tm == tm)
        total += d**k
    return total


def norm_via_identity(H: Hypergraph, k: int) -> int:
    """The (r-1, k)-norm assembled from sunflower counts.

    r e(H) + sum_{i=2}^{k-1} i! S(k, i) N(S_{r-1,i}) + k! N(S_{r-1,k}).
    """
    if k < 2:
        raise HypergraphError(f"identity form needs k >= 2, got {k}")
    t = H.r - 1
    value = H.r * len(H)
    for i in range(2, k + 1):
        value += factorial(i) * stirling2(k, i) * count_sunflowers(H, t, i)
    return value
