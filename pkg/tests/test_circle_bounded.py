from usq.circle_bounded import (StructureGraph, aut_circle_bounded, certificate_log, iso_circle_bounded,
                                max_cell_components, random_layered, verify_circle_bounded)
from usq.graph import Graph, disjoint_union, is_isomorphism
from usq.oracle import brute_aut_order

from conftest import cycle_graph, path_graph, shuffled


def one_layer(g: Graph) -> Graph:
    return g.with_colors([0] * g.n)


def test_verify_cases():
    assert verify_circle_bounded(one_layer(cycle_graph(7)), 1)[0]
    two_c4 = disjoint_union(cycle_graph(4), cycle_graph(4))
    assert not verify_circle_bounded(two_c4, 1)[0]
    assert verify_circle_bounded(two_c4, 2)[0]
    claw = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    ok, bad = verify_circle_bounded(claw, 100)
    assert not ok and "degree" in bad.reason


def test_cells_split_by_down_neighborhood():
    # two roots, each with its own triangle above it; the triangles are separate cells,
    # while the two roots share the empty down-set and form one cell with two components
    g = Graph.from_edges(8, [(0, 2), (0, 3), (0, 4), (2, 3), (3, 4), (2, 4),
                             (1, 5), (1, 6), (1, 7), (5, 6), (6, 7), (5, 7)], [0, 0, 1, 1, 1, 1, 1, 1])
    assert not verify_circle_bounded(g, 1)[0]
    assert verify_circle_bounded(g, 2)[0]
    assert max_cell_components(g) == 2


def test_orders_on_fixed_cases():
    assert aut_circle_bounded(one_layer(cycle_graph(5))).order() == 10
    assert aut_circle_bounded(one_layer(path_graph(4))).order() == 2
    apex = Graph.from_edges(5, [(0, i) for i in range(1, 5)] + [(1, 2), (2, 3), (3, 4), (4, 1)],
                            [0, 1, 1, 1, 1])
    assert aut_circle_bounded(apex).order() == 8


def test_random_layered_against_oracle():
    for seed in range(60):
        h = random_layered(seed, layers=3, max_cell=8)
        assert verify_circle_bounded(h)[0]
        assert aut_circle_bounded(h).order() == brute_aut_order(h)


def test_iso():
    c5 = StructureGraph.from_keys(5, cycle_graph(5).edges(), [0] * 5)
    p5 = StructureGraph.from_keys(5, path_graph(5).edges(), [0] * 5)
    m = iso_circle_bounded(c5, c5)
    assert m is not None and is_isomorphism(c5.graph, c5.graph, m)
    assert iso_circle_bounded(c5, p5) is None
    for seed in range(20):
        h = random_layered(seed)
        h2, _ = shuffled(h, seed)
        a = StructureGraph(h, list(h.colors))
        b = StructureGraph(h2, list(h2.colors))
        m = iso_circle_bounded(a, b)
        assert m is not None and is_isomorphism(h, h2, m)


def test_keys_rank_lexicographically():
    s = StructureGraph.from_keys(3, [(0, 1), (1, 2)], [(1, 0), (0, 5), (1, 0)])
    assert s.graph.colors == (1, 0, 1)


def test_certificate_log_collects_checks():
    with certificate_log() as log:
        verify_circle_bounded(one_layer(cycle_graph(5)), 3)
    assert log == [(3, True, 5)]
