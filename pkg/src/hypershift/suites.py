"""Seeded randomized property suites, shared by the CLI ``verify`` command and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .hypergraph import (
    Hypergraph,
    cover2_extremal,
    delete_vertices,
    link,
    mask_of,
    star_extremal,
)
from .matching import matching_number
from .norms import norm_direct, norm_via_identity
from .search import cover2_count_formula, star_count_formula
from .shifting import ShiftPair, is_shifted, replay, shift, shift_to_stable, verify_injection
from .sunflower import (
    count_breakdown,
    count_sunflowers,
    count_via_degrees,
    petal_overcount,
    vertex_split_check,
)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, detail=None) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(detail)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def random_hypergraph(rng: random.Random, n: int, r: int, density: float | None = None) -> Hypergraph:
    p = rng.random() if density is None else density
    return Hypergraph.from_masks(
        n, r, [mask_of(e) for e in combinations(range(1, n + 1), r) if rng.random() < p]
    )


def random_instance(rng: random.Random, n_max: int = 10, k_max: int = 4):
    """(H, pair, k) with r in {2,3,4}, r+1 <= n <= n_max, random density and pair."""
    r = rng.choice((2, 3, 4))
    n = rng.randint(r + 1, max(r + 1, n_max))
    k = rng.randint(1, k_max)
    H = random_hypergraph(rng, n, r)
    i = rng.randint(1, n - 1)
    j = rng.randint(i + 1, n)
    return H, ShiftPair(i, j), k


def sunflower_monotone(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("lemma24")
    rng = random.Random(seed)
    for _ in range(trials):
        H, p, k = random_instance(rng)
        before = count_via_degrees(H, k) if k >= 2 else len(H)
        S = shift(H, p)
        after = count_via_degrees(S, k) if k >= 2 else len(S)
        res.record(after >= before, (H, p, k, before, after))
    return res


def matching_monotone(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("lemma21")
    rng = random.Random(seed)
    for _ in range(trials):
        H, p, _ = random_instance(rng)
        a = matching_number(H).size
        b = matching_number(shift(H, p)).size
        res.record(b <= a, (H, p, a, b))
    return res


def injection(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("phi-injective")
    rng = random.Random(seed)
    for _ in range(trials):
        H, p, k = random_instance(rng, n_max=8)
        res.record(verify_injection(H, p, k), (H, p, k))
    return res


def norm_identity(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("identity11")
    rng = random.Random(seed)
    for _ in range(trials):
        H, _, _ = random_instance(rng)
        k = rng.randint(2, 5)
        a = norm_via_identity(H, k)
        b = norm_direct(H, H.r - 1, k)
        res.record(a == b, (H, k, a, b))
    return res


def vertex_split(seed: int, trials: int) -> SuiteResult:
    """Exact k=1 split, k>=2 bound, partition sums, and the (k-1)-fold petal overcount."""
    res = SuiteResult("lemma31")
    rng = random.Random(seed)
    for _ in range(trials):
        H, _, _ = random_instance(rng, n_max=9)
        i = rng.randint(1, H.n)
        k = rng.choice((2, 3))
        ok = vertex_split_check(H, i, 1) and vertex_split_check(H, i, k)
        parts = count_breakdown(H, i, k)
        ok = ok and parts.total == count_sunflowers(H, H.r - 1, k)
        ok = ok and parts.not_containing_i == count_sunflowers(delete_vertices(H, [i]), H.r - 1, k)
        ok = ok and parts.core_at_i == count_sunflowers(link(H, i), H.r - 2, k)
        ok = ok and petal_overcount(H, i, k) == (k - 1) * parts.petal_at_i
        res.record(ok, (H, i, k, parts))
    return res


def closed_forms(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("formulas")
    rng = random.Random(seed)
    for _ in range(trials):
        if rng.random() < 0.5:
            r = rng.choice((2, 3, 4))
            n = rng.randint(r, 10)
            s, k = rng.randint(1, 3), rng.randint(1, 3)
            got = star_count_formula(n, r, s, k)
            want = count_sunflowers(star_extremal(n, r, s), r - 1, k)
            res.record(got == want, ("star", n, r, s, k, got, want))
        else:
            s, k = rng.choice((2, 3)), rng.choice((2, 3))
            n = rng.randint((s - 1) * 3 + 1, 10)
            got = cover2_count_formula(n, 3, s, k)
            want = count_sunflowers(cover2_extremal(n, 3, s), 2, k)
            res.record(got == want, ("cover2", n, s, k, got, want))
    return res


def stabilize(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("stabilize")
    rng = random.Random(seed)
    for _ in range(trials):
        H, _, k = random_instance(rng, n_max=8)
        final, trace = shift_to_stable(H)
        states = replay(H, trace)
        ok = states[-1] == final and is_shifted(final)
        nus = [matching_number(G).size for G in states]
        counts = [count_sunflowers(G, H.r - 1, k) for G in states]
        ok = ok and all(len(G) == len(H) for G in states)
        ok = ok and all(b <= a for a, b in zip(nus, nus[1:]))
        ok = ok and all(b >= a for a, b in zip(counts, counts[1:]))
        res.record(ok, (H, k, trace))
    return res


SUITES: dict[str, Callable[[int, int], SuiteResult]] = {
    "lemma21": matching_monotone,
    "lemma24": sunflower_monotone,
    "phi-injective": injection,
    "identity11": norm_identity,
    "lemma31": vertex_split,
    "formulas": closed_forms,
    "stabilize": stabilize,
}
