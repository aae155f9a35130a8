import random
from itertools import combinations

import pytest

from hypershift import Hypergraph
from hypershift.hypergraph import mask_of

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return random.Random(20261014)


def random_graph(rng, n, r, p=None):
    p = rng.random() if p is None else p
    return Hypergraph.from_masks(
        n, r, [mask_of(e) for e in combinations(range(1, n + 1), r) if rng.random() < p]
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
