"""Weighted line graph, incidence normalisation, and the cut equivalence."""

import random

import numpy as np
import pytest

from nodecut import (
    EmptyCut,
    WeightedUnsupported,
    ZeroInternalDegree,
    back_projection,
    build_line_graph,
    check_equivalence,
    incidence_matrix,
    induced_links,
    load_edge_list,
    normalized_affiliation,
    phi,
    psi,
    sigma_and_k_in,
)
from conftest import (
    KARATE_NODES,
    indices_of,
    random_connected_graph,
    random_connected_subgraph,
)


def dense_phi(lg, links):
    """Independent oracle: explicit double sums over the dense matrix."""
    e = lg.dense()
    mu = np.zeros(lg.m)
    mu[list(links)] = 1.0
    k_in = mu @ e @ mu
    k_out = mu @ e @ (1.0 - mu)
    return k_out / (k_in + k_out), k_in, k_out


def test_path3_line_graph_entries():
    g = load_edge_list("1 2\n2 3")
    a, b = g.find_link("1", "2"), g.find_link("2", "3")
    lg = build_line_graph(g)
    assert lg.entry(a, b) == pytest.approx(0.5, abs=1e-15)
    assert lg.entry(a, a) == pytest.approx(1.5, abs=1e-15)
    assert lg.entry(b, b) == pytest.approx(1.5, abs=1e-15)


def test_single_link_line_graph():
    g = load_edge_list("x y")
    lg = build_line_graph(g)
    assert lg.m == 1
    assert lg.entry(0, 0) == pytest.approx(2.0, abs=1e-15)


def test_karate_line_graph_support(karate):
    lg = build_line_graph(karate)
    assert lg.m == 78
    for k in range(78):
        ku, kv = karate.link_ends[k]
        for l in range(78):
            lu, lv = karate.link_ends[l]
            share = bool({ku, kv} & {lu, lv})
            assert (lg.entry(k, l) > 0) == share


def test_row_normalisation_unit_norm(karate):
    for g in (load_edge_list("1 2\n2 3"), karate):
        d = normalized_affiliation(g)
        norms = np.linalg.norm(d, axis=1)
        assert np.allclose(norms, 1.0, atol=1e-12)


def test_line_graph_factorises(karate):
    for g in (load_edge_list("1 2\n2 3"), karate):
        d = normalized_affiliation(g)
        assert np.allclose(build_line_graph(g).dense(), d.T @ d, atol=1e-12)


def test_incidence_columns_have_two_entries(karate):
    b = incidence_matrix(karate)
    assert set(np.unique(b)) <= {0.0, 1.0}
    assert (b.sum(axis=0) == 2).all()


def test_back_projection():
    g = load_edge_list("1 2\n2 3")
    w = back_projection(g)
    assert w[g.link_ends[g.find_link("1", "2")]] == pytest.approx(2 ** -0.5, abs=1e-15)
    two = load_edge_list("a b")
    assert back_projection(two)[(0, 1)] == pytest.approx(1.0, abs=1e-15)


def test_back_projection_karate_1_12(karate):
    w = back_projection(karate)
    lid = karate.find_link("1", "12")
    assert w[karate.link_ends[lid]] == pytest.approx(0.25, abs=1e-15)


def test_phi_seed_link_karate(karate):
    lg = build_line_graph(karate)
    links = {karate.find_link("1", "12")}
    value = phi(lg, links)
    oracle, _, _ = dense_phi(lg, links)
    assert value == pytest.approx(15 / 32, abs=1e-12)
    assert value == pytest.approx(oracle, abs=1e-12)


def test_phi_whole_link_set_is_zero(karate):
    lg = build_line_graph(karate)
    assert phi(lg, set(range(karate.m))) == pytest.approx(0.0, abs=1e-15)


def test_phi_path3_by_hand():
    g = load_edge_list("1 2\n2 3")
    lg = build_line_graph(g)
    links = {g.find_link("1", "2")}
    _, k_in, k_out = dense_phi(lg, links)
    assert k_in == pytest.approx(1.5, abs=1e-15)
    assert k_out == pytest.approx(0.5, abs=1e-15)
    assert phi(lg, links) == pytest.approx(0.25, abs=1e-15)
    assert phi(lg, links) == pytest.approx(psi(g, indices_of(g, {"1", "2"})), abs=1e-15)


def test_phi_empty_cut(karate):
    with pytest.raises(EmptyCut):
        phi(build_line_graph(karate), set())


def test_link_set_degree_equals_internal_degree(karate):
    lg = build_line_graph(karate)
    rng = random.Random(3)
    for _ in range(20):
        c = random_connected_subgraph(rng, karate, rng.randrange(2, 25))
        links = induced_links(karate, c)
        _, k_in, k_out = dense_phi(lg, links)
        assert k_in + k_out == pytest.approx(sigma_and_k_in(karate, c)[1], abs=1e-9)


def test_equivalence_karate_communities(karate):
    lg = build_line_graph(karate)
    for nodes in KARATE_NODES.values():
        assert check_equivalence(karate, indices_of(karate, nodes), lg) < 1e-10


def test_equivalence_random_subgraphs():
    rng = random.Random(17)
    for trial in range(6):
        g = random_connected_graph(rng, rng.randrange(6, 20), rng.randrange(2, 12))
        lg = build_line_graph(g)
        for _ in range(30):
            c = random_connected_subgraph(rng, g, rng.randrange(2, g.n + 1))
            assert check_equivalence(g, c, lg) < 1e-10


def test_weighted_graphs_are_rejected():
    g = load_edge_list("1 2 2\n2 3 1", weighted=True)
    for fn in (build_line_graph, incidence_matrix, normalized_affiliation, back_projection):
        with pytest.raises(WeightedUnsupported):
            fn(g)
    with pytest.raises(WeightedUnsupported):
        check_equivalence(g, {0, 1})


def test_equivalence_propagates_zero_internal_degree(karate):
    with pytest.raises(ZeroInternalDegree):
        check_equivalence(karate, {0})
