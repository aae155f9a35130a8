"""Closed-form extremal counts and exhaustive desk-scale maximisation.

Families on [n] with matching number below s are generated by depth-first
edge inclusion.  Having a matching of size s is monotone under adding
edges, so a branch is cut as soon as an included edge would complete one;
every family with nu < s is still visited exactly once.  The shifted-only
mode walks down-sets of the shift order on r-sets instead, which reaches
larger n.
"""

from __future__ import annotations

import csv
import io
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Iterator, Optional

from .hypergraph import (
    Hypergraph,
    HypergraphError,
    ParseError,
    canonical_form,
    mask_of,
    parse,
    serialize,
    star_extremal,
    vertices_of,
)
from .matching import (
    contains_subhypergraph,
    cycle_pattern,
    has_matching_of_size,
    path_pattern,
    star_pattern,
    triangle_pattern,
)
from .shifting import ShiftPair, all_pairs, shift
from .sunflower import count_sunflowers

UNRESTRICTED_MAX_EDGES = 25
SHIFTED_MAX_EDGES = 84
OBJECTIVES = ("sunflower-count", "norm", "edge-count")
CSV_FIELDS = ("objective", "n", "r", "s", "k", "max_value", "witness_count", "explored", "seed")


class GuardExceeded(ValueError):
    """Requested search is outside the exhaustive-enumeration budget."""


def binom(a: int, b: int) -> int:
    """C(a, b) with C(a, b) = 0 whenever a < b or either side is negative."""
    if b < 0 or a < 0 or a < b:
        return 0
    return comb(a, b)


# -- closed forms -----------------------------------------------------------

def frankl_bound(n: int, r: int, s: int) -> int:
    return binom(n, r) - binom(n - s + 1, r)


def emc_bound(n: int, r: int, s: int) -> int:
    return max(binom(s * r - 1, r), frankl_bound(n, r, s))


def star_count_formula(n: int, r: int, s: int, k: int) -> int:
    """S_{r-1,k}^r copies in the family of r-sets meeting [s-1].

    (r-1)-sets meeting [s-1] have degree n-r+1, the rest have degree s-1.
    """
    if not (n >= r >= 2 and s >= 1 and k >= 1):
        raise HypergraphError(f"need n >= r >= 2, s >= 1, k >= 1; got {(n, r, s, k)}")
    if k == 1:
        return frankl_bound(n, r, s)
    outside = binom(n - s + 1, r - 1)
    return (binom(n, r - 1) - outside) * binom(n - r + 1, k) + outside * binom(s - 1, k)


def cover2_count_formula(n: int, r: int, s: int, k: int) -> int:
    """S_{r-1,k}^r copies in the family of r-sets meeting W = [(s-1)r+1] twice.

    An (r-1)-set with a >= 2 points in W has degree n-r+1; with a = 1 its
    degree is |W| - 1 (the added vertex must land in W); with a = 0 it is 0.
    """
    w = (s - 1) * r + 1
    if r < 3 or s < 1 or k < 1 or n < w:
        raise HypergraphError(f"need r >= 3, s >= 1, k >= 1, n >= (s-1)r+1; got {(n, r, s, k)}")
    if k == 1:
        return sum(binom(w, a) * binom(n - w, r - a) for a in range(2, r + 1))
    full = sum(binom(w, a) * binom(n - w, r - 1 - a) for a in range(2, r))
    return full * binom(n - r + 1, k) + w * binom(n - w, r - 2) * binom(w - 1, k)


# -- objectives -------------------------------------------------------------

def _objective(name: str, r: int, k: Optional[int]) -> Callable[[tuple[int, ...]], int]:
    if name not in OBJECTIVES:
        raise HypergraphError(f"unknown objective {name!r}; choose from {OBJECTIVES}")
    if name == "edge-count":
        return len
    if k is None or k < 1:
        raise HypergraphError(f"objective {name!r} needs k >= 1")
    t = r - 1

    def degs(masks):
        d: dict[int, int] = {}
        for m in masks:
            for sub in combinations(vertices_of(m), t):
                key = mask_of(sub)
                d[key] = d.get(key, 0) + 1
        return d.values()

    if name == "norm":
        return lambda masks: sum(x**k for x in degs(masks))
    if k == 1:
        return len
    return lambda masks: sum(comb(x, k) for x in degs(masks))


def evaluate(H: Hypergraph, objective: str, k: Optional[int] = None) -> int:
    return _objective(objective, H.r, k)(H.masks)


# -- family enumeration -----------------------------------------------------

def _edge_order(n: int, r: int, shifted: bool) -> list[int]:
    subsets = list(combinations(range(1, n + 1), r))
    if shifted:
        subsets.sort(key=lambda e: (sum(e), e))
    return [mask_of(e) for e in subsets]


def _covers(m: int) -> list[int]:
    """Edges one elementary left-move above m in the shift order."""
    out = []
    v = 2
    x = m >> 1
    while x:
        if x & 1 and not m >> (v - 2) & 1:
            out.append(m ^ (1 << (v - 1)) | (1 << (v - 2)))
        x >>= 1
        v += 1
    return out


@dataclass
class _Plan:
    order: list[int]
    r: int
    s: int
    shifted: bool
    preds: list[list[int]]


def _plan(n: int, r: int, s: int, shifted: bool) -> _Plan:
    order = _edge_order(n, r, shifted)
    preds = [_covers(m) for m in order] if shifted else [[] for _ in order]
    return _Plan(order, r, s, shifted, preds)


def _can_add(plan: _Plan, chosen: list[int], chosen_set: set, idx: int) -> bool:
    m = plan.order[idx]
    if plan.shifted and not all(p in chosen_set for p in plan.preds[idx]):
        return False
    return not has_matching_of_size([c for c in chosen if not c & m], plan.r, plan.s - 1)


def _walk(plan: _Plan, idx: int, chosen: list[int], stop: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """DFS over include/exclude decisions for edges idx..stop-1 (include first)."""
    chosen_set = set(chosen)

    def rec(i: int):
        if i == stop:
            yield i, tuple(chosen)
            return
        if plan.s >= 1 and _can_add(plan, chosen, chosen_set, i):
            m = plan.order[i]
            chosen.append(m)
            chosen_set.add(m)
            yield from rec(i + 1)
            chosen.pop()
            chosen_set.discard(m)
        yield from rec(i + 1)

    yield from rec(idx)


def iter_families(n: int, r: int, s: int, restrict_shifted: bool = False) -> Iterator[Hypergraph]:
    """Every r-graph on [n] with nu < s (optionally only shifted ones), each once."""
    plan = _plan(n, r, s, restrict_shifted)
    for _, masks in _walk(plan, 0, [], len(plan.order)):
        yield Hypergraph.from_masks(n, r, masks)


def _explore(args):
    n, r, s, k, objective, shifted, prefix = args
    plan = _plan(n, r, s, shifted)
    f = _objective(objective, r, k)
    best = None
    keep: list[tuple[int, ...]] = []
    explored = 0
    start, chosen = prefix
    for _, masks in _walk(plan, start, list(chosen), len(plan.order)):
        explored += 1
        v = f(masks)
        if best is None or v > best:
            best, keep = v, [masks]
        elif v == best:
            keep.append(masks)
    return best, keep, explored


def _prefixes(plan: _Plan, depth: int):
    depth = min(depth, len(plan.order))
    return [(i, masks) for i, masks in _walk(plan, 0, [], depth)]


# -- reports ----------------------------------------------------------------

@dataclass
class SearchReport:
    objective: str
    n: int
    r: int
    s: int
    k: Optional[int]
    max_value: int
    extremal_witnesses: list[Hypergraph]
    explored: int
    restricted_to_shifted: bool
    seed: Optional[int] = None

    @property
    def witness_count(self) -> int:
        return len(self.extremal_witnesses)

    def csv_row(self) -> dict:
        return {
            "objective": self.objective, "n": self.n, "r": self.r, "s": self.s,
            "k": "" if self.k is None else self.k, "max_value": self.max_value,
            "witness_count": self.witness_count, "explored": self.explored,
            "seed": "" if self.seed is None else self.seed,
        }

    def to_text(self) -> str:
        head = [
            ("objective", self.objective), ("n", self.n), ("r", self.r), ("s", self.s),
            ("k", "" if self.k is None else self.k), ("max_value", self.max_value),
            ("witness_count", self.witness_count), ("explored", self.explored),
            ("restricted_to_shifted", str(self.restricted_to_shifted).lower()),
            ("seed", "" if self.seed is None else self.seed),
        ]
        out = [f"{key}: {val}".rstrip() for key, val in head]
        for idx, W in enumerate(self.extremal_witnesses, 1):
            out.append(f"# witness {idx}")
            out.append(serialize(W).rstrip("\n"))
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SearchReport":
        header: dict[str, str] = {}
        blocks: list[list[str]] = []
        for line in text.splitlines():
            if line.startswith("# witness"):
                blocks.append([])
            elif blocks:
                blocks[-1].append(line)
            elif ":" in line:
                key, _, val = line.partition(":")
                header[key.strip()] = val.strip()
        try:
            witnesses = [parse("\n".join(b)) for b in blocks]
            report = cls(
                objective=header["objective"],
                n=int(header["n"]), r=int(header["r"]), s=int(header["s"]),
                k=int(header["k"]) if header.get("k") else None,
                max_value=int(header["max_value"]),
                extremal_witnesses=witnesses,
                explored=int(header["explored"]),
                restricted_to_shifted=header["restricted_to_shifted"] == "true",
                seed=int(header["seed"]) if header.get("seed") else None,
            )
        except (KeyError, ValueError) as exc:
            raise ParseError(f"malformed search report: {exc}") from None
        if report.witness_count != int(header.get("witness_count", report.witness_count)):
            raise ParseError("witness_count does not match the witness blocks")
        return report


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for rep in reports:
        w.writerow(rep.csv_row())
    return buf.getvalue()


def brute_force_max(n: int, r: int, s: int, k: Optional[int] = None,
                    objective: str = "sunflower-count", restrict_shifted: bool = False,
                    jobs: int = 1, max_edges: Optional[int] = None) -> SearchReport:
    """Exact maximum of the objective over r-graphs on [n] with nu < s.

    Witnesses are all maximisers up to isomorphism, each represented by its
    lex-least member.  ``jobs > 1`` splits the decision tree by prefix over
    worker processes; the report is identical either way.
    """
    if not 1 <= r <= n:
        raise HypergraphError(f"need 1 <= r <= n, got r={r}, n={n}")
    if s < 1:
        raise HypergraphError(f"s must be >= 1, got {s}")
    _objective(objective, r, k)
    limit = max_edges if max_edges is not None else (
        SHIFTED_MAX_EDGES if restrict_shifted else UNRESTRICTED_MAX_EDGES)
    if comb(n, r) > limit:
        mode = "shifted-only" if restrict_shifted else "unrestricted"
        raise GuardExceeded(f"C({n},{r})={comb(n, r)} edges exceeds the {mode} guard of {limit}")

    plan = _plan(n, r, s, restrict_shifted)
    if jobs > 1:
        tasks = [(n, r, s, k, objective, restrict_shifted, pre) for pre in _prefixes(plan, 6)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_explore, tasks))
    else:
        parts = [_explore((n, r, s, k, objective, restrict_shifted, (0, ())))]

    best = max(p[0] for p in parts if p[0] is not None)
    explored = sum(p[2] for p in parts)
    classes: dict[tuple, tuple[tuple[int, ...], ...]] = {}
    for value, keep, _ in parts:
        if value != best:
            continue
        for masks in keep:
            H = Hypergraph.from_masks(n, r, masks)
            key = canonical_form(H)
            if key not in classes or H.edges < classes[key]:
                classes[key] = H.edges
    witnesses = [Hypergraph(n, r, edges) for edges in sorted(classes.values())]
    return SearchReport(objective, n, r, s, k if objective != "edge-count" else None,
                        best, witnesses, explored, restrict_shifted)


# -- extremal characterisation checks ---------------------------------------

@dataclass
class ExtremalOutcome:
    """How the star family fared against the exhaustive maximum.

    status is "holds" (star value is the maximum and the star is the only
    maximiser), "tie" (star value reached but other maximisers exist) or
    "exceeded" (some family beats the star).  Ties and exceedances are
    expected for small n, below the unknown threshold, and are recorded,
    not raised.
    """

    status: str
    star_value: int
    report: SearchReport

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def __bool__(self) -> bool:
        return self.holds


def extremal_check(n: int, r: int, s: int, k: Optional[int], objective: str,
                   restrict_shifted: bool = False, jobs: int = 1) -> ExtremalOutcome:
    report = brute_force_max(n, r, s, k, objective, restrict_shifted, jobs)
    star = star_extremal(n, r, s)
    star_value = evaluate(star, objective, k)
    star_key = canonical_form(star)
    if report.max_value > star_value:
        status = "exceeded"
    elif (report.witness_count == 1
          and canonical_form(report.extremal_witnesses[0]) == star_key):
        status = "holds"
    else:
        status = "tie"
    return ExtremalOutcome(status, star_value, report)


def sunflower_extremal_check(n, r, s, k, **kw) -> ExtremalOutcome:
    return extremal_check(n, r, s, k, "sunflower-count", **kw)


def norm_extremal_check(n, r, s, k, **kw) -> ExtremalOutcome:
    """Is the star family the unique maximiser of the (r-1,k)-norm among nu < s?"""
    return extremal_check(n, r, s, k, "norm", **kw)


# -- counterexamples to preservation under shifting --------------------------

@dataclass(frozen=True)
class ShiftTarget:
    label: str
    kind: str  # "sunflower" or "freeness"
    kernel: int = 0
    petals: int = 0
    pattern: Optional[Hypergraph] = None

    def value(self, H: Hypergraph):
        if self.kind == "sunflower":
            return count_sunflowers(H, self.kernel, self.petals)
        return not contains_subhypergraph(H, self.pattern)

    def violated(self, before, after) -> bool:
        if self.kind == "sunflower":
            return after < before
        return before and not after


_SUNFLOWER_RE = re.compile(r"^(?:sunflower:|S_?\{?)(\d+),(\d+)\}?(?:\^\d+)?(?:-decrease)?$")
_PATTERN_RE = re.compile(r"^(path|cycle|star|P|C|S)[:_]?\{?(\d+)\}?(?:\^\d+)?(?:-freeness)?$")


def parse_target(label: str, r: int) -> ShiftTarget:
    """Read 'sunflower:a,k' / 'S_{a,k}^r-decrease' or 'path:l' / 'P_l^r-freeness' style labels."""
    text = label.strip().replace(" ", "")
    m = _SUNFLOWER_RE.match(text)
    if m:
        a, k = int(m.group(1)), int(m.group(2))
        if not 0 <= a <= r - 1 or k < 1:
            raise HypergraphError(f"sunflower target needs 0 <= a <= r-1 and k >= 1: {label!r}")
        return ShiftTarget(f"S_{{{a},{k}}}^{r}-decrease", "sunflower", a, k)
    if re.match(r"^(triangle|K_?\{?3\}?(\^\d+)?)(-freeness)?$", text):
        return ShiftTarget(f"K_3^{r}-freeness", "freeness", pattern=triangle_pattern(r))
    m = _PATTERN_RE.match(text)
    if m:
        kind, size = m.group(1), int(m.group(2))
        build, sym = {
            "path": (path_pattern, "P"), "P": (path_pattern, "P"),
            "cycle": (cycle_pattern, "C"), "C": (cycle_pattern, "C"),
            "star": (star_pattern, "S"), "S": (star_pattern, "S"),
        }[kind]
        return ShiftTarget(f"{sym}_{size}^{r}-freeness", "freeness", pattern=build(size, r))
    raise HypergraphError(f"unrecognised counterexample target {label!r}")


@dataclass
class CounterexampleReport:
    H: Hypergraph
    pair: ShiftPair
    target: ShiftTarget
    before: object
    after: object
    seed: int

    @property
    def property(self) -> str:
        return self.target.label

    def verify(self) -> bool:
        before = self.target.value(self.H)
        after = self.target.value(shift(self.H, self.pair))
        return (before, after) == (self.before, self.after) and self.target.violated(before, after)

    def to_text(self) -> str:
        def fmt(v):
            return str(v).lower() if isinstance(v, bool) else str(v)

        head = [
            f"property: {self.target.label}",
            f"pair: {self.pair.i} {self.pair.j}",
            f"before: {fmt(self.before)}",
            f"after: {fmt(self.after)}",
            f"seed: {self.seed}",
            "# instance",
        ]
        return "\n".join(head) + "\n" + serialize(self.H)


def _random_family(rng: random.Random, n: int, r: int, target: ShiftTarget) -> Hypergraph:
    edges = [mask_of(e) for e in combinations(range(1, n + 1), r)]
    if target.kind == "sunflower":
        p = rng.random()
        return Hypergraph.from_masks(n, r, [m for m in edges if rng.random() < p])
    # grow a random pattern-free family edge by edge up to a random size
    rng.shuffle(edges)
    size = rng.randint(1, len(edges))
    chosen: list[int] = []
    for m in edges:
        if len(chosen) >= size:
            break
        cand = Hypergraph.from_masks(n, r, chosen + [m])
        if not contains_subhypergraph(cand, target.pattern):
            chosen.append(m)
    return Hypergraph.from_masks(n, r, chosen)


def _probe(H: Hypergraph, target: ShiftTarget, seed: int) -> Optional[CounterexampleReport]:
    before = target.value(H)
    if target.kind == "freeness" and not before:
        return None
    for p in all_pairs(H.n):
        after = target.value(shift(H, p))
        if target.violated(before, after):
            return CounterexampleReport(H, p, target, before, after, seed)
    return None


def find_shift_counterexample(r: int, n_max: int, target, seed: int = 0,
                              trials: int = 300, exhaustive_edges: int = 10
                              ) -> Optional[CounterexampleReport]:
    """Search small r-graphs for a shift that breaks the target property.

    For each n from r+1 to n_max: every family when C(n, r) <= exhaustive_edges,
    otherwise ``trials`` seeded random families.  Returns a re-verified report
    or None.
    """
    if not isinstance(target, ShiftTarget):
        target = parse_target(target, r)
    rng = random.Random(seed)
    for n in range(r + 1, n_max + 1):
        m = comb(n, r)
        if m <= exhaustive_edges:
            all_edges = [mask_of(e) for e in combinations(range(1, n + 1), r)]
            candidates = (
                Hypergraph.from_masks(n, r, [all_edges[b] for b in range(m) if bits >> b & 1])
                for bits in range(1 << m)
            )
        else:
            candidates = (_random_family(rng, n, r, target) for _ in range(trials))
        for H in candidates:
            found = _probe(H, target, seed)
            if found is not None:
                if not found.verify():
                    raise AssertionError(f"counterexample failed re-verification: {found}")
                return found
    return None
