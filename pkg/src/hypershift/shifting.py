"""The shifting operator S_ij, stabilisation, and the sunflower injection under a shift.

``shift(H, (i, j))`` replaces j by i in every edge where that is possible
without colliding with an existing edge.  ``shift_injection`` maps each
S_{r-1,k}^r copy of H to a copy in the shifted family, injectively; it is
the explicit witness that shifting never loses such copies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .hypergraph import Hypergraph, HypergraphError, mask_of
from .sunflower import Sunflower, enumerate_sunflowers, is_copy_in


class InvariantViolation(AssertionError):
    """An internally checked mathematical invariant failed."""


@dataclass(frozen=True, order=True)
class ShiftPair:
    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise HypergraphError(f"shift pair needs 1 <= i < j, got ({self.i}, {self.j})")

    def check(self, n: int) -> "ShiftPair":
        if self.j > n:
            raise HypergraphError(f"shift pair ({self.i}, {self.j}) outside [1, {n}]")
        return self


def _pair(p) -> ShiftPair:
    return p if isinstance(p, ShiftPair) else ShiftPair(*p)


@dataclass
class ShiftTrace:
    steps: list[tuple[ShiftPair, int]] = field(default_factory=list)

    @property
    def moves(self) -> int:
        return sum(moved for _, moved in self.steps)

    def __len__(self) -> int:
        return len(self.steps)


def _shift_mask(m: int, bi: int, bj: int, edges) -> int:
    if m & bj and not m & bi:
        cand = m ^ bj | bi
        if cand not in edges:
            return cand
    return m


def shift_edge(H: Hypergraph, p, e: Iterable[int]) -> tuple[int, ...]:
    p = _pair(p).check(H.n)
    m = mask_of(e)
    if m not in H.maskset:
        raise HypergraphError(f"edge {tuple(e)} is not in H")
    out = _shift_mask(m, 1 << (p.i - 1), 1 << (p.j - 1), H.maskset)
    return tuple(v for v in range(1, H.n + 1) if out >> (v - 1) & 1)


def shift_masks(masks, edges, i: int, j: int) -> tuple[list[int], int]:
    """Shift a family given as masks; returns (new masks, number moved)."""
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    out = []
    moved = 0
    for m in masks:
        s = _shift_mask(m, bi, bj, edges)
        moved += s != m
        out.append(s)
    return out, moved


def shift(H: Hypergraph, p) -> Hypergraph:
    p = _pair(p).check(H.n)
    out, _ = shift_masks(H.masks, H.maskset, p.i, p.j)
    return H.with_edges(out)


def all_pairs(n: int):
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            yield ShiftPair(i, j)


def is_shifted(H: Hypergraph) -> bool:
    edges = H.maskset
    for p in all_pairs(H.n):
        bi, bj = 1 << (p.i - 1), 1 << (p.j - 1)
        for m in H.masks:
            if m & bj and not m & bi and (m ^ bj | bi) not in edges:
                return False
    return True


def potential(H: Hypergraph) -> int:
    """Total vertex-label sum over edges; strictly drops whenever an edge moves."""
    return sum(v for e in H.edges for v in e)


def shift_to_stable(H: Hypergraph) -> tuple[Hypergraph, ShiftTrace]:
    """Shift until fixed, sweeping pairs in lex order and restarting after each move."""
    trace = ShiftTrace()
    masks = list(H.masks)
    edges = set(masks)
    n = H.n
    while True:
        for p in all_pairs(n):
            new, moved = shift_masks(masks, edges, p.i, p.j)
            if moved:
                trace.steps.append((p, moved))
                masks = new
                edges = set(new)
                break
        else:
            break
    return H.with_edges(masks), trace


def replay(H: Hypergraph, trace: ShiftTrace) -> list[Hypergraph]:
    """Every intermediate family of a trace, starting with H."""
    states = [H]
    for p, _ in trace.steps:
        states.append(shift(states[-1], p))
    return states


# -- the injection on S_{r-1,k}^r copies -------------------------------------

def shift_injection(H: Hypergraph, p, F: Sunflower, *, shifted: Hypergraph | None = None,
                    validate: bool = True) -> Sunflower:
    """Image of a copy F of S_{r-1,k}^r in H under the shift S_ij.

    Identity unless one of three situations forces edges through j to be
    rerouted through i:

    * j in the kernel, i a petal vertex of petal e_x, and some other petal's
      shift is missing from H: keep e_x, shift every other petal;
    * j in the kernel, i outside F, some petal's shift missing: shift every petal;
    * j the petal vertex of e_x, i outside F, shift of e_x missing: shift e_x only.

    ``shifted`` may pass a precomputed S_ij(H).  The output is checked to be
    a copy in S_ij(H); a failure raises InvariantViolation.
    """
    p = _pair(p).check(H.n)
    r = H.r
    k = F.k
    if not is_copy_in(F, H, r - 1):
        raise HypergraphError(f"{F} is not a copy of S_(r-1,k)^r in H")
    bi, bj = 1 << (p.i - 1), 1 << (p.j - 1)
    edges = H.maskset
    core = F.core_mask
    petals = list(F.petal_masks)

    def moved(m: int) -> int:
        return m ^ bj | bi

    if k == 1:
        # a single edge: the shift itself is the bijection on edges
        image = [_shift_mask(petals[0], bi, bj, edges)]
    else:
        support = core
        for m in petals:
            support |= m
        image = petals
        if not support & bj:
            pass
        elif core & bj:
            if core & bi:
                pass
            elif support & bi:
                x = next(idx for idx, m in enumerate(petals) if m & bi)
                rest = [m for idx, m in enumerate(petals) if idx != x]
                if not all(moved(m) in edges for m in rest):
                    image = [petals[x]] + [moved(m) for m in rest]
            else:
                if not all(moved(m) in edges for m in petals):
                    image = [moved(m) for m in petals]
        else:
            # j is a petal vertex
            if support & bi:
                pass
            else:
                x = next(idx for idx, m in enumerate(petals) if m & bj)
                if moved(petals[x]) not in edges:
                    image = [moved(petals[x])] + [m for idx, m in enumerate(petals) if idx != x]

    if k == 1:
        out_core = _first_bits(image[0], r - 1)
    else:
        out_core = image[0] & image[1]
    result = Sunflower.from_masks(out_core, image)
    if validate:
        target = shifted if shifted is not None else shift(H, p)
        if not is_copy_in(result, target, r - 1):
            raise InvariantViolation(f"image {result} of {F} is not a copy in S_{p.i}{p.j}(H)")
    return result


def _first_bits(m: int, t: int) -> int:
    out = 0
    while t and m:
        low = m & -m
        out |= low
        m ^= low
        t -= 1
    return out


def verify_injection(H: Hypergraph, p, k: int) -> bool:
    """Map every S_{r-1,k}^r copy of H through shift_injection; images valid and distinct?"""
    p = _pair(p).check(H.n)
    target = shift(H, p)
    seen = set()
    for F in enumerate_sunflowers(H, H.r - 1, k):
        try:
            img = shift_injection(H, p, F, shifted=target)
        except InvariantViolation:
            return False
        key = frozenset(img.petals)
        if key in seen:
            return False
        seen.add(key)
    return True
