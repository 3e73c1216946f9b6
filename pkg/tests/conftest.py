"""Shared fixtures: the karate benchmark, expected communities, random graphs."""

from __future__ import annotations

import itertools
import random

import pytest

from nodecut import Graph, karate_graph, run_all_seeds

# Expected karate communities, keyed by their conventional names (ascending
# cut value). Node sets pinned by the benchmark's boundary facts; link counts
# and cut values are recomputed from the fixture in the tests that use them.
KARATE_NODES = {
    "C1": frozenset(str(i) for i in range(1, 35) if i not in (5, 6, 7, 11, 17)),
    "C2": frozenset(
        "3 9 10 14 15 16 19 20 21 23 24 25 26 27 28 29 30 31 32 33 34".split()
    ),
    "C3": frozenset("1 2 3 4 5 6 7 8 9 11 12 13 14 17 18 20 22 31 32".split()),
    "C4": frozenset("1 5 6 7 11 17".split()),
    "C5": frozenset("24 25 26 28 32".split()),
    "C6": frozenset("3 10 34".split()),
    "C7": frozenset("1 12".split()),
}

KARATE_PSI = {
    "C1": 0.022,
    "C2": 0.077,
    "C3": 0.091,
    "C4": 0.150,
    "C5": 0.294,
    "C6": 0.460,
    "C7": 0.469,
}

KARATE_SEED_COUNTS = {"C1": 68, "C2": 40, "C3": 10, "C4": 10, "C5": 7, "C6": 2, "C7": 1}

TWO_TRIANGLES = "1 2\n1 3\n2 3\n3 4\n4 5\n4 6\n5 6\n"
PATH3 = "1 2\n2 3\n"


@pytest.fixture(scope="session")
def karate() -> Graph:
    return karate_graph()


@pytest.fixture(scope="session")
def karate_result(karate):
    """Deterministic all-seeds detection on karate, shared across tests."""
    return run_all_seeds(karate)


@pytest.fixture(scope="session")
def karate_named(karate, karate_result):
    """name -> Community for the deterministic karate detection."""
    by_nodes = {
        frozenset(karate.labels[i] for i in c.nodes): c for c in karate_result.communities
    }
    assert set(by_nodes) == set(KARATE_NODES.values())
    return {name: by_nodes[nodes] for name, nodes in KARATE_NODES.items()}


def labels_of(g: Graph, indices) -> frozenset[str]:
    return frozenset(g.labels[i] for i in indices)


def indices_of(g: Graph, labels) -> frozenset[int]:
    return frozenset(g.index_of(lab) for lab in labels)


def random_connected_graph(rng: random.Random, n: int, extra: int) -> Graph:
    """Random spanning tree on n nodes plus `extra` random additional links."""
    links = []
    seen = set()
    for i in range(1, n):
        j = rng.randrange(i)
        links.append((j, i, 1.0))
        seen.add((j, i))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in seen]
    rng.shuffle(pairs)
    for a, b in pairs[:extra]:
        links.append((a, b, 1.0))
    return Graph([str(i + 1) for i in range(n)], links)


def random_weighted_graph(rng: random.Random, n: int, extra: int) -> Graph:
    g = random_connected_graph(rng, n, extra)
    links = [
        (u, v, 0.25 + 2.0 * rng.random()) for (u, v) in g.link_ends
    ]
    return Graph(list(g.labels), links)


def brute_force_connected_sets(g: Graph) -> set[frozenset[int]]:
    """All connected node sets with >= 2 nodes, by filtering every subset."""
    from nodecut import is_connected

    out = set()
    for r in range(2, g.n + 1):
        for sub in itertools.combinations(range(g.n), r):
            if is_connected(g, set(sub)):
                out.add(frozenset(sub))
    return out


def random_connected_subgraph(rng: random.Random, g: Graph, size: int) -> set[int]:
    """Grow a connected node set of the requested size by random expansion."""
    start = rng.randrange(g.n)
    current = {start}
    while len(current) < size:
        frontier = sorted(
            {j for i in current for j, _, _ in g.adj[i]} - current
        )
        if not frontier:
            break
        current.add(frontier[rng.randrange(len(frontier))])
    return current
