"""Exact matching number by branch and bound, plus subhypergraph containment.

Expansion patterns (paths, cycles, stars, triangles, matchings blown up to
r-uniform by padding each edge with r-2 fresh vertices) live here too since
containment is the only thing that consumes them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypergraph import Hypergraph, HypergraphError, mask_of, vertices_of

MAX_PATTERN_EDGES = 6


@dataclass(frozen=True)
class MatchingResult:
    size: int
    witness: tuple[tuple[int, ...], ...]


def _lowest_bit(x: int) -> int:
    return x & -x


def max_matching_masks(masks, r: int, target: int | None = None) -> list[int]:
    """Lexicographically least maximum matching among ``masks``.

    Branches on the lowest vertex still covered by a remaining edge: take one
    of its edges (in lex order) or drop the vertex.  With ``target`` set the
    search stops as soon as a matching of that size is found.
    """
    masks = sorted(set(masks), key=vertices_of)
    best: list[int] = []
    stop = [False]
    cur: list[int] = []

    def rec(remaining: list[int]) -> None:
        if stop[0]:
            return
        if len(cur) > len(best):
            best[:] = cur
            if target is not None and len(best) >= target:
                stop[0] = True
                return
        if not remaining:
            return
        union = 0
        for m in remaining:
            union |= m
        bound = len(cur) + min(len(remaining), union.bit_count() // r if r else len(remaining))
        if bound <= len(best):
            return
        low = _lowest_bit(union)
        for m in remaining:
            if m & low:
                cur.append(m)
                rec([x for x in remaining if not x & m])
                cur.pop()
                if stop[0]:
                    return
        rec([x for x in remaining if not x & low])

    rec(masks)
    return best


def matching_number(H: Hypergraph) -> MatchingResult:
    best = max_matching_masks(H.masks, H.r)
    witness = tuple(sorted(vertices_of(m) for m in best))
    return MatchingResult(len(witness), witness)


def has_matching_of_size(masks, r: int, s: int) -> bool:
    if s <= 0:
        return True
    # cheap greedy first; exact search only if greedy falls short
    used = 0
    got = 0
    for m in masks:
        if not m & used:
            used |= m
            got += 1
            if got >= s:
                return True
    return len(max_matching_masks(masks, r, target=s)) >= s


def is_Ms_free(H: Hypergraph, s: int) -> bool:
    """True iff H has no s pairwise disjoint edges."""
    if s < 1:
        raise HypergraphError(f"s must be >= 1, got {s}")
    return not has_matching_of_size(H.masks, H.r, s)


# -- expansions -------------------------------------------------------------

def expansion(graph_edges, r: int) -> Hypergraph:
    """Pad every edge of a graph (or smaller-uniform family) with fresh vertices up to size r."""
    graph_edges = [tuple(e) for e in graph_edges]
    base = sorted({v for e in graph_edges for v in e})
    relabel = {v: i + 1 for i, v in enumerate(base)}
    nxt = len(base) + 1
    edges = []
    for e in graph_edges:
        if len(e) > r:
            raise HypergraphError(f"edge {e} larger than target uniformity {r}")
        new = [relabel[v] for v in e]
        for _ in range(r - len(e)):
            new.append(nxt)
            nxt += 1
        edges.append(new)
    return Hypergraph(nxt - 1, r, edges)


def path_pattern(length: int, r: int) -> Hypergraph:
    return expansion([(v, v + 1) for v in range(1, length + 1)], r)


def cycle_pattern(length: int, r: int) -> Hypergraph:
    if length < 3:
        raise HypergraphError("a cycle needs at least 3 edges")
    return expansion([(v, v % length + 1) for v in range(1, length + 1)], r)


def star_pattern(size: int, r: int) -> Hypergraph:
    return expansion([(1, v) for v in range(2, size + 2)], r)


def triangle_pattern(r: int) -> Hypergraph:
    return expansion([(1, 2), (2, 3), (1, 3)], r)


def matching_pattern(size: int, r: int) -> Hypergraph:
    return expansion([(2 * v - 1, 2 * v) for v in range(1, size + 1)], r)


def contains_subhypergraph(H: Hypergraph, pattern: Hypergraph) -> bool:
    """Is there an injective vertex map sending every pattern edge onto an edge of H?"""
    if pattern.r != H.r:
        raise HypergraphError(f"uniformity mismatch: pattern r={pattern.r}, host r={H.r}")
    if len(pattern) > MAX_PATTERN_EDGES:
        raise HypergraphError(f"pattern has {len(pattern)} edges; limit is {MAX_PATTERN_EDGES}")
    if not pattern.masks:
        return True
    if len(pattern) > len(H):
        return False

    # visit pattern vertices edge by edge so constraints close early
    order: list[int] = []
    for e in pattern.edges:
        for v in e:
            if v not in order:
                order.append(v)
    pos = {v: i for i, v in enumerate(order)}
    closing: list[list[tuple[int, ...]]] = [[] for _ in order]
    for e in pattern.edges:
        closing[max(pos[v] for v in e)].append(e)
    host = H.maskset
    host_vertices = vertices_of(H.vertex_mask())
    image: dict[int, int] = {}

    def rec(idx: int, taken: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        for u in host_vertices:
            b = 1 << (u - 1)
            if taken & b:
                continue
            image[v] = u
            if all(mask_of(image[x] for x in e) in host for e in closing[idx]):
                if rec(idx + 1, taken | b):
                    return True
        image.pop(v, None)
        return False

    return rec(0, 0)
