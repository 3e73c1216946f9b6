"""Exhaustive enumeration, exact minima, Jaccard distance, and stability."""

import random

import pytest

from nodecut import (
    EmptyUnion,
    NoLowerCommunity,
    TooLarge,
    enumerate_connected_subgraphs,
    exact_local_minima,
    jaccard_distance,
    load_edge_list,
    psi,
    run_all_seeds,
    stability,
    verify_local_minimum,
)
from conftest import (
    KARATE_NODES,
    PATH3,
    TWO_TRIANGLES,
    brute_force_connected_sets,
    indices_of,
    labels_of,
    random_connected_graph,
)


def test_enumerate_path3():
    g = load_edge_list(PATH3)
    got = {labels_of(g, s) for s in enumerate_connected_subgraphs(g)}
    assert got == {frozenset("12"), frozenset("23"), frozenset("123")}


def test_enumerate_triangle():
    g = load_edge_list("1 2\n2 3\n1 3")
    assert len(list(enumerate_connected_subgraphs(g))) == 4


def test_enumerate_matches_subset_filter_oracle():
    rng = random.Random(23)
    for trial in range(6):
        g = random_connected_graph(rng, rng.randrange(5, 11), rng.randrange(0, 12))
        enumerated = list(enumerate_connected_subgraphs(g))
        assert len(enumerated) == len(set(enumerated)), "no duplicates"
        assert set(enumerated) == brute_force_connected_sets(g)


def test_enumeration_cap():
    g = load_edge_list(PATH3)
    with pytest.raises(TooLarge):
        list(enumerate_connected_subgraphs(g, max_nodes=2))
    assert len(list(enumerate_connected_subgraphs(g, max_nodes=2, force=True))) == 3


def test_exact_minima_path3_empty():
    # both 2-node sets sit above the whole graph, which is the ground state
    assert exact_local_minima(load_edge_list(PATH3)) == []


def test_exact_minima_two_triangles():
    g = load_edge_list(TWO_TRIANGLES)
    minima = {labels_of(g, s) for s in exact_local_minima(g)}
    assert minima == {frozenset("1234"), frozenset("3456")}
    for s in minima:
        assert psi(g, indices_of(g, s)) == pytest.approx(1 / 12, abs=1e-12)


def test_greedy_minima_subset_of_exact():
    rng = random.Random(41)
    for trial in range(8):
        g = random_connected_graph(rng, rng.randrange(5, 12), rng.randrange(0, 8))
        exact = set(exact_local_minima(g))
        for c in run_all_seeds(g).communities:
            assert c.nodes in exact


def test_verify_karate_communities(karate):
    for nodes in KARATE_NODES.values():
        assert verify_local_minimum(karate, indices_of(karate, nodes))


def test_verify_rejects_perturbed_c1(karate):
    c1 = set(indices_of(karate, KARATE_NODES["C1"]))
    outside = karate.index_of("5")
    assert not verify_local_minimum(karate, c1 | {outside})


def test_whole_graph_is_a_minimum(karate):
    assert verify_local_minimum(karate, set(range(karate.n)))


def test_jaccard_basics():
    assert jaccard_distance({1, 2, 3}, {2, 3, 4}) == pytest.approx(0.5)
    assert jaccard_distance({1, 2}, {1, 2}) == 0.0
    assert jaccard_distance({1}, {2}) == 1.0
    with pytest.raises(EmptyUnion):
        jaccard_distance(set(), set())


def test_jaccard_is_a_metric():
    rng = random.Random(8)
    universe = list(range(12))
    for _ in range(200):
        a, b, c = (
            frozenset(x for x in universe if rng.random() < 0.5) or frozenset({0})
            for _ in range(3)
        )
        dab = jaccard_distance(a, b)
        dbc = jaccard_distance(b, c)
        dac = jaccard_distance(a, c)
        assert dab == jaccard_distance(b, a)
        assert dac <= dab + dbc + 1e-12
        assert (dab == 0.0) == (a == b)


def test_stability_definition(karate, karate_result):
    communities = karate_result.communities
    pool = [(c.nodes, c.psi) for c in communities]
    best = communities[0]
    with pytest.raises(NoLowerCommunity):
        stability(best.nodes, best.psi, pool)
    for c in communities[1:]:
        lower = [p for p in pool if p[1] < c.psi]
        expected = min(jaccard_distance(c.nodes, nodes) for nodes, _ in lower)
        assert stability(c.nodes, c.psi, pool) == pytest.approx(expected, abs=1e-12)
        assert c.stability == pytest.approx(expected, abs=1e-12)


def test_stability_single_community():
    with pytest.raises(NoLowerCommunity):
        stability(frozenset({1, 2}), 0.3, [(frozenset({1, 2}), 0.3)])
