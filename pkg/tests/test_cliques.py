import random

from usq.cliques import (build_gm, build_gm_star, clique_stable_refine, is_clique_stable, lift_automorphism,
                         maximal_cliques, quotient_graph, staircase_edge, verify_staircase)
from usq.geometry import random_usq_graph
from usq.graph import Graph, is_automorphism
from usq.oracle import bron_kerbosch, brute_aut_order
from usq.pipeline import anchored, choose_anchor, global_structure_refined, _top_action, Config
from usq.geometry import mirrored_instance
from usq.refinement import OrderedPartition

from conftest import complete_graph, cycle_graph


def test_maximal_cliques_small():
    assert maximal_cliques(complete_graph(3)) == [frozenset(range(3))]
    assert sorted(map(sorted, maximal_cliques(cycle_graph(5)))) == [[0, 1], [0, 4], [1, 2], [2, 3], [3, 4]]


def test_maximal_cliques_match_bron_kerbosch():
    for seed in range(80):
        g, _ = random_usq_graph(1 + seed % 35, 1 + seed % 4, seed)
        assert set(maximal_cliques(g)) == set(bron_kerbosch(g))


def test_clique_graphs():
    gm = build_gm(Graph.from_edges(1))
    assert gm.n == 2 and gm.num_edges() == 1 and gm.colors[0] != gm.colors[1]
    gm = build_gm(complete_graph(2))
    assert gm.num_edges() == 3
    assert build_gm_star(Graph.from_edges(1)).num_edges() == 1
    assert build_gm_star(cycle_graph(5)).num_edges() == 15
    assert build_gm_star(complete_graph(3)).num_edges() == 6


def test_clique_graph_keeps_the_group():
    for seed in range(30):
        g, _ = random_usq_graph(1 + seed % 8, 1.5, seed)
        assert brute_aut_order(build_gm(g)) == brute_aut_order(g)


def test_clique_stable_refine():
    g = cycle_graph(5)
    cs = clique_stable_refine(g, OrderedPartition.discrete(5))
    assert len(cs.partition) == 5
    k = complete_graph(4)
    cs = clique_stable_refine(k, OrderedPartition.unit(4))
    assert len(cs.partition) == 1
    assert is_clique_stable(k, OrderedPartition.unit(4))
    for seed in range(20):
        h, _ = random_usq_graph(15, 2, seed)
        twins = OrderedPartition.discrete(h.n)
        out = clique_stable_refine(h, twins).partition
        assert all(h.is_clique(sum(1 << v for v in c)) for c in out.classes)
        assert clique_stable_refine(h, out).partition.set_partition() == out.set_partition()
        assert out.refines(twins)


def test_quotient_graph():
    g = cycle_graph(5)
    q = quotient_graph(g, OrderedPartition.discrete(5))
    assert all(q.count(a, b) == int(g.has_edge(a, b)) for a in range(5) for b in range(a + 1, 5))
    q = quotient_graph(complete_graph(4), OrderedPartition.unit(4))
    assert q.vertex_color == (4,)
    q = quotient_graph(complete_graph(5), OrderedPartition.from_classes(5, [[0, 1], [2, 3, 4]]))
    assert q.count(0, 1) == 6


def test_staircase_examples():
    g = cycle_graph(5)
    ok, orders = verify_staircase(g, OrderedPartition.discrete(5))
    assert ok
    # x1 y1, x2 y2 only, with both pairs cliques
    h = Graph.from_edges(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
    ok, orders = verify_staircase(h, OrderedPartition.from_classes(4, [[0, 1], [2, 3]]))
    assert ok
    assert staircase_edge(1, 1, 2, 2, 2) and not staircase_edge(1, 2, 2, 2, 2)
    # an induced matching the wrong way round (3 of 4 edges) is not a staircase
    bad = Graph.from_edges(4, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 3)])
    assert not verify_staircase(bad, OrderedPartition.from_classes(4, [[0, 1], [2, 3]]))[0]


def test_lift_examples():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    p = OrderedPartition.from_classes(4, [[0, 1], [2, 3]])
    gamma = lift_automorphism(g, p, [0, 1])
    assert is_automorphism(g, gamma) and {gamma[0], gamma[1]} == {0, 1}
    gamma = lift_automorphism(g, p, [1, 0])
    assert is_automorphism(g, gamma) and {gamma[0], gamma[1]} == {2, 3}


def test_lift_pipeline_groups():
    lifted = 0
    for seed in range(40):
        g, _, v = mirrored_instance(4, 1.5, seed)
        if v is None or g.n < 2:
            continue
        a = anchored(g, v, 1)
        st = global_structure_refined(a, v)
        p = st.ordered_partition()
        ok, orders = verify_staircase(a, p)
        assert ok
        for d in _top_action([st], Config()).gens:
            assert is_automorphism(a, lift_automorphism(a, p, d, orders))
            lifted += 1
    assert lifted > 0
