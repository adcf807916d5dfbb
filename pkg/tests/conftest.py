import itertools

import numpy as np
import pytest

from plclique.graph import Graph
from plclique.weights import WeightVector


def gnp(n, p, rng, weights=None):
    """Erdos-Renyi graph built without the package samplers."""
    i, j = np.triu_indices(n, 1)
    hit = rng.random(i.size) < p
    return Graph.from_pairs(n, i[hit], j[hit], weights)


def brute_omega(g):
    """Clique number by exhaustive subset enumeration."""
    if g.n == 0:
        return 0
    adj = g.neighbor_sets()
    best = 1
    for k in range(2, g.n + 1):
        found = any(all(b in adj[a] for a, b in itertools.combinations(s, 2))
                    for s in itertools.combinations(range(g.n), k))
        if not found:
            break
        best = k
    return best


def brute_count(g, k):
    adj = g.neighbor_sets()
    return sum(all(b in adj[a] for a, b in itertools.combinations(s, 2))
               for s in itertools.combinations(range(g.n), k))


@pytest.fixture
def worked_example():
    """Vertices a,b,c,d = 0..3 in decreasing weight; edges a-c, a-d, c-d, b-d."""
    w = WeightVector(np.array([4.0, 3.0, 2.0, 1.0]))
    return Graph.from_pairs(4, [0, 0, 2, 1], [2, 3, 3, 3], w)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one "PASS/FAIL criterion k: ..." line per acceptance check, echoed at session end
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
