import pytest
from hypothesis import given, settings, strategies as st

from hypershift import (
    Hypergraph,
    HypergraphError,
    ShiftPair,
    Sunflower,
    complete,
    count_sunflowers,
    enumerate_sunflowers,
    is_shifted,
    matching_number,
    shift,
    shift_edge,
    shift_injection,
    shift_to_stable,
    star_extremal,
    verify_injection,
)
from hypershift.shifting import InvariantViolation, potential, replay
from hypershift.sunflower import count_cliques, is_copy_in

from conftest import random_graph
from oracles import shift_by_definition


def test_shift_pair_validation():
    with pytest.raises(HypergraphError):
        ShiftPair(2, 2)
    with pytest.raises(HypergraphError):
        ShiftPair(0, 3)
    with pytest.raises(HypergraphError):
        shift(complete(3, 2), (1, 4))


def test_shift_edge_cases():
    H = Hypergraph(3, 2, [[2, 3]])
    assert shift_edge(H, (1, 2), (2, 3)) == (1, 3)
    H = Hypergraph(3, 2, [[1, 2], [2, 3]])
    assert shift_edge(H, (1, 2), (1, 2)) == (1, 2)
    H = Hypergraph(3, 2, [[1, 3], [2, 3]])
    assert shift_edge(H, (1, 2), (2, 3)) == (2, 3)
    with pytest.raises(HypergraphError):
        shift_edge(H, (1, 2), (1, 2))


def test_shift_matches_definition(rng):
    for _ in range(500):
        r = rng.choice((2, 3, 4))
        n = rng.randint(r + 1, 9)
        H = random_graph(rng, n, r)
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        S = shift(H, (i, j))
        assert {frozenset(e) for e in S.edges} == shift_by_definition(H, i, j)
        assert len(S) == len(H)


def test_shift_star():
    H = Hypergraph(4, 2, [[2, 1], [2, 3], [2, 4]])
    assert shift(H, (1, 2)).edges == ((1, 2), (1, 3), (1, 4))


def test_is_shifted():
    for n, r, s in [(6, 3, 2), (7, 3, 3), (8, 2, 3), (6, 4, 2)]:
        H = star_extremal(n, r, s)
        assert is_shifted(H)
        assert all(shift(H, (i, j)) == H for i in range(1, n) for j in range(i + 1, n + 1))
    assert is_shifted(complete(6, 3))
    assert not is_shifted(Hypergraph(3, 2, [[2, 3]]))


def test_is_shifted_agrees_with_all_pairs(rng):
    for _ in range(300):
        H = random_graph(rng, rng.randint(3, 7), rng.choice((2, 3)))
        fixed = all(
            shift(H, (i, j)) == H for i in range(1, H.n) for j in range(i + 1, H.n + 1)
        )
        assert is_shifted(H) == fixed


def test_stabilize_examples():
    H = star_extremal(6, 3, 2)
    final, trace = shift_to_stable(H)
    assert final == H and len(trace) == 0
    H = Hypergraph(5, 2, [[4, 5], [3, 5]])
    final, trace = shift_to_stable(H)
    assert final.edges == ((1, 2), (1, 3))
    assert trace.steps[0][0] == ShiftPair(1, 3)


def test_stabilize_trace(rng):
    for _ in range(200):
        r = rng.choice((2, 3))
        H = random_graph(rng, rng.randint(r + 1, 8), r)
        final, trace = shift_to_stable(H)
        assert is_shifted(final)
        states = replay(H, trace)
        assert states[-1] == final
        pots = [potential(G) for G in states]
        assert all(b < a for a, b in zip(pots, pots[1:]))
        assert len(trace) <= pots[0]
        nus = [matching_number(G).size for G in states]
        assert all(b <= a for a, b in zip(nus, nus[1:]))
        assert all(len(G) == len(H) for G in states)


def test_clique_count_monotone(rng):
    for _ in range(150):
        r = rng.choice((2, 3))
        n = rng.randint(r + 1, 7)
        H = random_graph(rng, n, r)
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        S = shift(H, (i, j))
        for size in range(r, min(n, r + 2) + 1):
            assert count_cliques(S, size) >= count_cliques(H, size)


def test_sunflower_count_monotone(rng):
    for _ in range(1000):
        r = rng.choice((2, 3, 4))
        n = rng.randint(r + 1, 9)
        H = random_graph(rng, n, r)
        k = rng.randint(1, 4)
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        assert count_sunflowers(shift(H, (i, j)), r - 1, k) >= count_sunflowers(H, r - 1, k)


# -- injection branches on hand-built 3-graphs -------------------------------

def F(core, *petals):
    return Sunflower(tuple(core), tuple(sorted(tuple(sorted(p)) for p in petals)))


def test_injection_j_outside():
    H = Hypergraph(6, 3, [[1, 2, 3], [1, 2, 4]])
    f = F((1, 2), (1, 2, 3), (1, 2, 4))
    assert shift_injection(H, (5, 6), f) == f


def test_injection_both_in_core():
    H = Hypergraph(6, 3, [[1, 2, 3], [1, 2, 4]])
    f = F((1, 2), (1, 2, 3), (1, 2, 4))
    assert shift_injection(H, (1, 2), f) == f


def test_injection_j_core_i_outside_shifts_all():
    # kernel {2,3}, j=3, i=1 outside: shifted petals {1,2,4},{1,2,5} absent
    H = Hypergraph(5, 3, [[2, 3, 4], [2, 3, 5]])
    f = F((2, 3), (2, 3, 4), (2, 3, 5))
    img = shift_injection(H, (1, 3), f)
    assert img == F((1, 2), (1, 2, 4), (1, 2, 5))
    S = shift(H, (1, 3))
    assert is_copy_in(img, S)
    assert img in list(enumerate_sunflowers(S, 2, 2))


def test_injection_j_core_i_outside_all_present_is_identity():
    H = Hypergraph(5, 3, [[2, 3, 4], [2, 3, 5], [1, 2, 4], [1, 2, 5]])
    f = F((2, 3), (2, 3, 4), (2, 3, 5))
    assert shift_injection(H, (1, 3), f) == f


def test_injection_j_core_i_petal():
    # kernel {2,3}, petals at 1 and 4; j=3 in kernel, i=1 petal of e_x={1,2,3}
    H = Hypergraph(5, 3, [[1, 2, 3], [2, 3, 4]])
    f = F((2, 3), (1, 2, 3), (2, 3, 4))
    img = shift_injection(H, (1, 3), f)
    assert img == F((1, 2), (1, 2, 3), (1, 2, 4))
    assert is_copy_in(img, shift(H, (1, 3)))
    H2 = H.with_edges(H.masks + (0b1011,))  # add {1,2,4}
    assert shift_injection(H2, (1, 3), f) == f


def test_injection_j_petal_i_outside():
    H = Hypergraph(5, 3, [[2, 3, 4], [2, 3, 5]])
    f = F((2, 3), (2, 3, 4), (2, 3, 5))
    img = shift_injection(H, (1, 4), f)
    assert img == F((2, 3), (1, 2, 3), (2, 3, 5))
    H2 = Hypergraph(5, 3, [[2, 3, 4], [2, 3, 5], [1, 2, 3]])
    assert shift_injection(H2, (1, 4), f) == f


def test_injection_petal_cases_identity():
    H = Hypergraph(5, 3, [[1, 2, 3], [1, 2, 4], [1, 2, 5]])
    f = F((1, 2), (1, 2, 3), (1, 2, 4))
    assert shift_injection(H, (1, 4), f) == f     # i in kernel, j petal
    assert shift_injection(H, (3, 4), f) == f     # i, j both petal vertices


def test_injection_rejects_non_copy():
    H = Hypergraph(5, 3, [[1, 2, 3]])
    with pytest.raises(HypergraphError):
        shift_injection(H, (1, 2), F((1, 2), (1, 2, 3), (1, 2, 4)))


def test_injection_detects_bad_target():
    H = Hypergraph(5, 3, [[2, 3, 4], [2, 3, 5]])
    f = F((2, 3), (2, 3, 4), (2, 3, 5))
    with pytest.raises(InvariantViolation):
        shift_injection(H, (1, 3), f, shifted=H)


def test_injection_random(rng):
    for _ in range(400):
        r = rng.choice((2, 3, 4))
        n = rng.randint(r + 1, 8)
        H = random_graph(rng, n, r)
        k = rng.randint(1, 4)
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        assert verify_injection(H, (i, j), k)


def test_injection_identity_on_shifted(rng):
    for n, r, s in [(6, 3, 2), (7, 3, 3), (7, 2, 3)]:
        H = star_extremal(n, r, s)
        for k in (2, 3):
            for F_ in enumerate_sunflowers(H, r - 1, k):
                assert shift_injection(H, (1, n), F_) == F_
            assert verify_injection(H, (1, n), k)
