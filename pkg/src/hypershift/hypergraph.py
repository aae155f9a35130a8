"""Immutable r-uniform hypergraphs on the labeled vertex set 1..n.

Edges are stored as integer bitmasks (vertex ``v`` lives at bit ``v - 1``),
which keeps every operation used by the search code down to a few integer
ops per edge.  The public surface speaks in sorted vertex tuples.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from math import comb
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64
CANONICAL_MAX_VERTICES = 10


class HypergraphError(ValueError):
    """Invalid hypergraph data (bad edge, bad label, bad parameters)."""


class ParseError(HypergraphError):
    """Malformed hypergraph text."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _lex_key(mask: int) -> tuple[int, ...]:
    return vertices_of(mask)


class Hypergraph:
    """An r-uniform hypergraph on ``[n]``.

    >>> H = Hypergraph(3, 2, [[1, 2], [2, 3], [1, 2]])
    >>> H.edges
    ((1, 2), (2, 3))
    """

    __slots__ = ("n", "r", "masks", "_maskset")

    def __init__(self, n: int, r: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise HypergraphError(f"vertex count must be non-negative, got {n}")
        if r < 0:
            raise HypergraphError(f"uniformity must be non-negative, got {r}")
        if n > MAX_VERTICES:
            raise HypergraphError(f"n={n} exceeds the {MAX_VERTICES}-vertex bitmask limit")
        masks = set()
        for edge in edges:
            edge = list(edge)
            if len(set(edge)) != len(edge) or len(edge) != r:
                raise HypergraphError(f"edge {edge} is not a set of {r} distinct vertices")
            for v in edge:
                if not isinstance(v, int) or not 1 <= v <= n:
                    raise HypergraphError(f"vertex {v!r} of edge {edge} outside [1, {n}]")
            masks.add(mask_of(edge))
        self._init(n, r, masks)

    def _init(self, n: int, r: int, masks: Iterable[int]) -> None:
        self.n = n
        self.r = r
        self._maskset = frozenset(masks)
        self.masks = tuple(sorted(self._maskset, key=_lex_key))

    @classmethod
    def from_masks(cls, n: int, r: int, masks: Iterable[int]) -> "Hypergraph":
        """Build from edge bitmasks without per-vertex validation (internal fast path)."""
        if n > MAX_VERTICES:
            raise HypergraphError(f"n={n} exceeds the {MAX_VERTICES}-vertex bitmask limit")
        obj = cls.__new__(cls)
        obj._init(n, r, masks)
        return obj

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(vertices_of(m) for m in self.masks)

    @property
    def maskset(self) -> frozenset[int]:
        return self._maskset

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.edges)

    def __contains__(self, edge) -> bool:
        if isinstance(edge, int):
            return edge in self._maskset
        return mask_of(edge) in self._maskset

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.r, self._maskset) == (other.n, other.r, other._maskset)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self._maskset))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, r={self.r}, edges={list(self.edges)})"

    def __reduce__(self):
        return (Hypergraph.from_masks, (self.n, self.r, self.masks))

    def num_edges(self) -> int:
        return len(self.masks)

    def vertex_mask(self) -> int:
        u = 0
        for m in self.masks:
            u |= m
        return u

    def with_edges(self, masks: Iterable[int]) -> "Hypergraph":
        return Hypergraph.from_masks(self.n, self.r, masks)


# -- constructions ----------------------------------------------------------

def complete(n: int, r: int) -> Hypergraph:
    if not 0 <= r <= n:
        raise HypergraphError(f"complete graph needs 0 <= r <= n, got r={r}, n={n}")
    return Hypergraph.from_masks(n, r, (mask_of(c) for c in combinations(range(1, n + 1), r)))


def star_extremal(n: int, r: int, s: int) -> Hypergraph:
    """All r-subsets of [n] that meet [s-1]."""
    if not n >= r >= 1 or s < 1:
        raise HypergraphError(f"need n >= r >= 1 and s >= 1, got n={n}, r={r}, s={s}")
    hub = mask_of(range(1, s))
    return Hypergraph.from_masks(
        n, r, (m for m in (mask_of(c) for c in combinations(range(1, n + 1), r)) if m & hub)
    )


def cover2_extremal(n: int, r: int, s: int) -> Hypergraph:
    """All r-subsets of [n] meeting the window [(s-1)r+1] in at least two vertices."""
    w = (s - 1) * r + 1
    if r < 2 or s < 1 or n < w:
        raise HypergraphError(f"need r >= 2, s >= 1 and n >= (s-1)r+1={w}, got n={n}")
    window = mask_of(range(1, w + 1))
    return Hypergraph.from_masks(
        n,
        r,
        (m for m in (mask_of(c) for c in combinations(range(1, n + 1), r))
         if (m & window).bit_count() >= 2),
    )


# -- primitive queries ------------------------------------------------------

def delete_vertices(H: Hypergraph, U: Iterable[int]) -> Hypergraph:
    """H - U on the same label space; edges touching U are dropped."""
    u = mask_of(U)
    return H.with_edges(m for m in H.masks if not m & u)


def link(H: Hypergraph, v: int) -> Hypergraph:
    if H.r < 1:
        raise HypergraphError("link needs r >= 1")
    if H.r == 1:
        raise HypergraphError("link of a 1-uniform hypergraph is not defined here")
    if not 1 <= v <= H.n:
        raise HypergraphError(f"vertex {v} outside [1, {H.n}]")
    b = 1 << (v - 1)
    return Hypergraph.from_masks(H.n, H.r - 1, (m ^ b for m in H.masks if m & b))


def degree(H: Hypergraph, T: Iterable[int]) -> int:
    t = mask_of(T)
    return sum(1 for m in H.masks if m & t == t)


def degrees(H: Hypergraph, t: int) -> dict[int, int]:
    """Map every t-subset mask with positive degree to its degree."""
    out: dict[int, int] = {}
    for m in H.masks:
        for sub in combinations(vertices_of(m), t):
            key = mask_of(sub)
            out[key] = out.get(key, 0) + 1
    return out


def relabel(H: Hypergraph, perm: Sequence[int] | dict[int, int]) -> Hypergraph:
    """Apply ``v -> perm[v]``; a sequence is read as ``perm[v - 1]``."""
    if isinstance(perm, dict):
        image = [perm.get(v) for v in range(1, H.n + 1)]
    else:
        image = list(perm)
    if sorted(image) != list(range(1, H.n + 1)):
        raise HypergraphError(f"{perm!r} is not a permutation of [1, {H.n}]")
    return H.with_edges(_apply(m, image) for m in H.masks)


def _apply(mask: int, image: Sequence[int]) -> int:
    out = 0
    v = 0
    while mask:
        if mask & 1:
            out |= 1 << (image[v] - 1)
        mask >>= 1
        v += 1
    return out


def _refined_classes(H: Hypergraph) -> list[list[int]]:
    """Partition vertices by an isomorphism-invariant colour, two refinement rounds."""
    colour = {v: 0 for v in range(1, H.n + 1)}
    incident = {v: [m for m in H.masks if m >> (v - 1) & 1] for v in colour}
    for _ in range(3):
        sig = {}
        for v in colour:
            neigh = sorted(
                tuple(sorted(colour[u] for u in vertices_of(m) if u != v)) for m in incident[v]
            )
            sig[v] = (colour[v], len(incident[v]), tuple(neigh))
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in colour}
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    classes: dict[int, list[int]] = {}
    for v in sorted(colour):
        classes.setdefault(colour[v], []).append(v)
    return [classes[c] for c in sorted(classes)]


def canonical_form(H: Hypergraph) -> tuple:
    """Minimum edge encoding over colour-respecting relabelings.

    Two hypergraphs get the same form iff they are isomorphic.  Exhaustive
    within colour classes, so only meant for n <= 10.
    """
    if H.n > CANONICAL_MAX_VERTICES:
        raise HypergraphError(
            f"canonical_form is exhaustive; n={H.n} exceeds {CANONICAL_MAX_VERTICES}"
        )
    classes = _refined_classes(H)
    # label blocks are assigned in class order; isolated vertices need no permuting
    blocks = []
    start = 1
    for cls in classes:
        blocks.append((cls, list(range(start, start + len(cls)))))
        start += len(cls)
    used = H.vertex_mask()
    chunks = []
    for cls, labels in blocks:
        if not any(used >> (v - 1) & 1 for v in cls):
            chunks.append([tuple(labels)])
        else:
            chunks.append(list(permutations(labels)))
    best = None
    image = [0] * H.n
    for choice in product(*chunks):
        for (cls, _), labs in zip(blocks, choice):
            for v, lab in zip(cls, labs):
                image[v - 1] = lab
        enc = tuple(sorted(_apply(m, image) for m in H.masks))
        if best is None or enc < best:
            best = enc
    return (H.n, H.r, best if best is not None else ())


def is_isomorphic(G: Hypergraph, H: Hypergraph) -> bool:
    if (G.n, G.r, len(G)) != (H.n, H.r, len(H)):
        return False
    return canonical_form(G) == canonical_form(H)


# -- text format ------------------------------------------------------------

def parse(text: str) -> Hypergraph:
    """Read ``n r`` then one edge per line; ``#`` comments and blank lines skipped."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer token in {raw!r}") from None
        if header is None:
            if len(nums) != 2 or nums[0] < 0 or nums[1] < 0:
                raise ParseError(f"line {lineno}: header must be 'n r', got {raw!r}")
            header = nums
            continue
        n, r = header
        if len(nums) != r:
            raise ParseError(f"line {lineno}: expected {r} vertices, got {len(nums)}")
        if any(not 1 <= v <= n for v in nums):
            raise ParseError(f"line {lineno}: vertex label outside [1, {n}]")
        if len(set(nums)) != r:
            raise ParseError(f"line {lineno}: repeated vertex in edge")
        edges.append(nums)
    if header is None:
        raise ParseError("missing 'n r' header")
    try:
        return Hypergraph(header[0], header[1], edges)
    except HypergraphError as exc:
        raise ParseError(str(exc)) from None


def serialize(H: Hypergraph) -> str:
    lines = [f"{H.n} {H.r}"]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def num_r_subsets(n: int, r: int) -> int:
    return comb(n, r) if 0 <= r <= n else 0
