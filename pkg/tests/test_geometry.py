from fractions import Fraction as F

import pytest

from usq.cliques import build_gm, maximal_cliques
from usq.geometry import (clique_center, consecutive_clique_order, format_realization, interval_to_usq,
                          intersection_graph, is_neighborhood_realization, mirrored_instance,
                          orientation_problems, parse_realization, random_interval_graph, random_usq_graph,
                          reduced_instance)
from usq.graph import Graph, connected_twin_classes, is_connected
from usq.oracle import brute_iso
from usq.pca import CATALOG, has_induced

from conftest import path_graph


def pts(*xy):
    return [(F(x), F(y)) for x, y in xy]


def test_intersection_boundaries():
    assert intersection_graph(pts((0, 0), (1, 1))).num_edges() == 1
    assert intersection_graph(pts((0, 0), (0, 0), (0, 0))).num_edges() == 3
    star = intersection_graph(pts((0, 0), (1, 1), (1, -1), (-1, 1), (-1, -1)))
    assert sorted(star.edges()) == [(0, 1), (0, 2), (0, 3), (0, 4)]


def test_generator_is_deterministic():
    g, p = random_usq_graph(1, 3, 0)
    assert g.n == 1
    assert random_usq_graph(30, 3, 5) == random_usq_graph(30, 3, 5)
    with pytest.raises(ValueError):
        random_usq_graph(0, 3, 0)


def test_no_k15_in_fixed_instance():
    g, _ = random_usq_graph(50, 4, 7)
    assert not has_induced(g, CATALOG["K15"])


def test_interval_encoding_small_cases():
    k2 = Graph.from_edges(2, [(0, 1)])
    gm, f = interval_to_usq(k2, [frozenset([0, 1])])
    assert f[2] == (0, 1) and f[0] == f[1] == (1, 0)
    assert sorted(intersection_graph(f).edges()) == sorted(gm.edges())
    p3 = path_graph(3)
    order = consecutive_clique_order(p3)
    gm, f = interval_to_usq(p3, order)
    assert len(order) == 2
    assert sorted(intersection_graph(f).edges()) == sorted(gm.edges())
    gm, f = interval_to_usq(Graph.from_edges(1), [frozenset([0])])
    assert gm.edges() == [(0, 1)] and intersection_graph(f).edges() == [(0, 1)]


def test_interval_encoding_rejects_bad_order():
    g = path_graph(3)
    with pytest.raises(ValueError):
        interval_to_usq(g, [frozenset([0, 1]), frozenset([2]), frozenset([1, 2])])


def test_interval_encoding_random():
    for seed in range(40):
        g, _ = random_interval_graph(1 + seed % 10, seed)
        gm, f = interval_to_usq(g, consecutive_clique_order(g))
        assert sorted(intersection_graph(f).edges()) == sorted(gm.edges())
        # same clique graph as build_gm, up to the order of the clique vertices
        assert brute_iso(gm, build_gm(g)) is not None


def test_clique_centers():
    c = clique_center(pts((0, 0)), [0])
    assert (c.x_lo, c.x_hi, c.y_lo, c.y_hi) == (F(-1, 2), F(1, 2), F(-1, 2), F(1, 2))
    c = clique_center(pts((0, 0), (1, 0)), [0, 1])
    assert c.x_lo == c.x_hi == F(1, 2)
    with pytest.raises(ValueError):
        clique_center(pts((0, 0), (2, 0)), [0, 1])


def test_centers_of_distinct_maximal_cliques_are_disjoint():
    for seed in range(30):
        g, p = random_usq_graph(15, 2, seed)
        cs = [clique_center(p, c) for c in maximal_cliques(g)]
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                assert not cs[i].intersects(cs[j])


def test_neighborhood_realization():
    assert is_neighborhood_realization(pts((0, 0), (0, 0)))
    assert not is_neighborhood_realization(pts((2, 0)))
    inside = pts((0, 0), (1, -1), (F(1, 2), 1))
    assert is_neighborhood_realization(inside)
    assert not is_neighborhood_realization([(x + 5, y + 5) for x, y in inside])


def test_realization_round_trip():
    _, p = random_usq_graph(12, 3, 1)
    assert parse_realization(format_realization(p)) == p


def test_reduced_instances_are_connected_and_twin_free():
    for seed in range(40):
        g, p = reduced_instance(15, 2.5, seed)
        assert is_connected(g)
        assert len(connected_twin_classes(g)) == g.n
        assert intersection_graph(p) == g
        m, q, v = mirrored_instance(4, 1.5, seed)
        assert intersection_graph(q) == m
        if v is not None:
            assert q[v][0] == q[v][1]


def test_orientation_problems_flags_bad_partition():
    # three points on an anti-diagonal and one on the diagonal cannot share one orientation
    p = pts((0, 0), (F(1, 4), F(1, 4)), (F(1, 2), 0))
    g = intersection_graph(p)
    assert orientation_problems(p, g, [[0, 1, 2]])
    assert not orientation_problems(p, g, [[0, 1], [2]])
