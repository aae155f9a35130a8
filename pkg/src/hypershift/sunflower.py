"""Counting and enumerating sunflowers S_{t,k}^r (k edges meeting pairwise in a fixed t-set).

A copy is an unordered set of k edges.  For k >= 2 the kernel is forced
(it is the common pairwise intersection), so copies are grouped by kernel.
For k = 1 a copy is just an edge, so ``count_sunflowers(H, t, 1) == e(H)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator

from .hypergraph import (
    Hypergraph,
    HypergraphError,
    degrees,
    delete_vertices,
    link,
    mask_of,
    vertices_of,
)


@dataclass(frozen=True)
class Sunflower:
    """Kernel plus petal edges, petals sorted lexicographically.

    For a single-edge copy the kernel is taken to be the first t vertices of
    the edge; nothing downstream depends on that choice.
    """

    core: tuple[int, ...]
    petals: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.petals)

    @property
    def core_mask(self) -> int:
        return mask_of(self.core)

    @property
    def petal_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(p) for p in self.petals)

    def petal_vertices(self) -> tuple[int, ...]:
        c = set(self.core)
        return tuple(sorted({v for p in self.petals for v in p} - c))

    def vertex_set(self) -> tuple[int, ...]:
        return tuple(sorted({v for p in self.petals for v in p} | set(self.core)))

    @classmethod
    def from_masks(cls, core: int, petals) -> "Sunflower":
        return cls(vertices_of(core), tuple(sorted(vertices_of(p) for p in petals)))


@dataclass(frozen=True)
class CountBreakdown:
    not_containing_i: int
    core_at_i: int
    petal_at_i: int

    @property
    def total(self) -> int:
        return self.not_containing_i + self.core_at_i + self.petal_at_i


def is_sunflower_masks(core: int, petals, t: int) -> bool:
    """Pairwise distinct petals of a common size that meet pairwise in exactly ``core``."""
    petals = list(petals)
    if core.bit_count() != t or len(set(petals)) != len(petals):
        return False
    if len(petals) == 1:
        return petals[0] & core == core
    for a, b in combinations(petals, 2):
        if a & b != core:
            return False
    return True


def is_copy_in(F: Sunflower, H: Hypergraph, t: int | None = None) -> bool:
    t = len(F.core) if t is None else t
    petals = F.petal_masks
    return (
        all(len(p) == H.r for p in F.petals)
        and all(p in H.maskset for p in petals)
        and is_sunflower_masks(F.core_mask, petals, t)
    )


def _check_params(H: Hypergraph, t: int, k: int) -> None:
    if k < 1:
        raise HypergraphError(f"petal count k must be >= 1, got {k}")
    if not 0 <= t <= H.r - 1:
        raise HypergraphError(f"kernel size t must satisfy 0 <= t <= r-1={H.r - 1}, got {t}")


def _petal_families(H: Hypergraph, t: int) -> dict[int, list[int]]:
    fam: dict[int, list[int]] = {}
    for m in H.masks:
        for sub in combinations(vertices_of(m), t):
            key = mask_of(sub)
            fam.setdefault(key, []).append(m ^ key)
    return fam


def _count_disjoint(petals: list[int], k: int, start: int = 0, used: int = 0) -> int:
    if k == 0:
        return 1
    total = 0
    for idx in range(start, len(petals) - k + 1):
        p = petals[idx]
        if not p & used:
            total += _count_disjoint(petals, k - 1, idx + 1, used | p)
    return total


def _iter_disjoint(petals: list[int], k: int, start: int = 0, used: int = 0, acc=()):
    if k == 0:
        yield acc
        return
    for idx in range(start, len(petals) - k + 1):
        p = petals[idx]
        if not p & used:
            yield from _iter_disjoint(petals, k - 1, idx + 1, used | p, acc + (p,))


def count_sunflowers(H: Hypergraph, t: int, k: int) -> int:
    """Number of copies of S_{t,k}^r in H."""
    _check_params(H, t, k)
    if k == 1:
        return len(H)
    # kernel-by-kernel k-matching count; deliberately not the degree shortcut,
    # which count_via_degrees provides as a second route
    total = 0
    for petals in _petal_families(H, t).values():
        if len(petals) >= k:
            total += _count_disjoint(petals, k)
    return total


def enumerate_sunflowers(H: Hypergraph, t: int, k: int) -> Iterator[Sunflower]:
    """Yield every copy once: by kernel in lex order, then petal sets in lex order."""
    _check_params(H, t, k)
    if k == 1:
        for e in H.edges:
            yield Sunflower(e[:t], (e,))
        return
    fam = _petal_families(H, t)
    for core in sorted(fam, key=vertices_of):
        petals = sorted(fam[core], key=vertices_of)
        if len(petals) < k:
            continue
        for combo in _iter_disjoint(petals, k):
            yield Sunflower.from_masks(core, (core | p for p in combo))


def count_via_degrees(H: Hypergraph, k: int) -> int:
    """Sum of C(d(T), k) over all (r-1)-sets T."""
    if k < 1:
        raise HypergraphError(f"k must be >= 1, got {k}")
    if H.r < 1:
        raise HypergraphError("needs r >= 1")
    return sum(comb(d, k) for d in degrees(H, H.r - 1).values())


def count_cliques(H: Hypergraph, size: int) -> int:
    """Number of vertex sets of the given size spanning a complete r-graph in H."""
    if size < H.r:
        raise HypergraphError(f"clique size must be >= r={H.r}")
    edges = H.maskset
    count = 0
    for S in combinations(vertices_of(H.vertex_mask()), size):
        if all(mask_of(e) in edges for e in combinations(S, H.r)):
            count += 1
    return count


# -- the vertex-splitting recursion -----------------------------------------

def count_breakdown(H: Hypergraph, i: int, k: int) -> CountBreakdown:
    """Classify every S_{r-1,k}^r copy by the role vertex ``i`` plays in it."""
    if k < 2:
        raise HypergraphError("breakdown needs k >= 2; for k = 1 use the edge identity")
    if not 1 <= i <= H.n:
        raise HypergraphError(f"vertex {i} outside [1, {H.n}]")
    b = 1 << (i - 1)
    absent = core = petal = 0
    for F in enumerate_sunflowers(H, H.r - 1, k):
        if F.core_mask & b:
            core += 1
        elif any(p & b for p in F.petal_masks):
            petal += 1
        else:
            absent += 1
    return CountBreakdown(absent, core, petal)


def petal_overcount(H: Hypergraph, i: int, k: int) -> int:
    """Valid picks of (edge avoiding i, kernel inside it, k-2 extra petal vertices).

    Each picked triple is kept only if it actually spans an S_{r-1,k}^r copy in
    H with i as a petal vertex; every such copy is produced k-1 times.
    """
    if k < 2:
        raise HypergraphError("needs k >= 2")
    edges = H.maskset
    b = 1 << (i - 1)
    others = [v for v in range(1, H.n + 1) if v != i]
    hits = 0
    for e in H.masks:
        if e & b:
            continue
        rest = [v for v in others if not e >> (v - 1) & 1]
        for v_out in vertices_of(e):
            T = e ^ (1 << (v_out - 1))
            if T | b not in edges:
                continue
            for extra in combinations(rest, k - 2):
                if all(T | (1 << (w - 1)) in edges for w in extra):
                    hits += 1
    return hits


def vertex_split_bound(H: Hypergraph, i: int, k: int) -> Fraction:
    """Right-hand side of the vertex-splitting estimate for kernel r-1.

    k = 1 gives the exact split e(H - i) + e(L_i); k >= 2 adds the petal term
    e(H - i) * r / (k - 1) * C(n - r - 1, k - 2).
    """
    r, n = H.r, H.n
    rest = delete_vertices(H, [i])
    lk = link(H, i)
    base = count_sunflowers(rest, r - 1, k) + count_sunflowers(lk, r - 2, k)
    if k == 1:
        return Fraction(base)
    tail = n - r - 1
    petal_choices = comb(tail, k - 2) if tail >= k - 2 >= 0 else 0
    return base + Fraction(len(rest) * r * petal_choices, k - 1)


def vertex_split_check(H: Hypergraph, i: int, k: int) -> bool:
    total = count_sunflowers(H, H.r - 1, k)
    bound = vertex_split_bound(H, i, k)
    if k == 1:
        return total == bound
    return total <= bound
