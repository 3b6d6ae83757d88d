import math
import random

import pytest

from usq.acceptance import g8
from usq.circle_bounded import aut_circle_bounded, max_cell_components, verify_circle_bounded
from usq.geometry import mirrored_instance, random_usq_graph, reduced_instance
from usq.graph import DiagnosedFailure, Graph, disjoint_union, is_automorphism, is_isomorphism
from usq.oracle import brute_aut_order, brute_iso
from usq.permgroup import schreier_sims
from usq.pipeline import (IsoStats, anchored, automorphism_group, automorphism_order, choose_anchor,
                          global_structure, global_structure_refined, isomorphic, pair_color, twin_reduce,
                          _top_action, Config)

from conftest import complete_graph, cycle_graph, path_graph, shuffled


def test_twin_reduce():
    t = twin_reduce(complete_graph(4))
    assert t.graph.n == 1 and t.graph.colors == (pair_color(0, 4),)
    c5 = cycle_graph(5)
    assert twin_reduce(c5).graph == c5


def test_twin_reduce_against_oracle():
    for seed in range(200):
        g, _ = random_usq_graph(1 + seed % 9, 1.2, seed)
        t = twin_reduce(g)
        factor = math.prod(math.factorial(len(c)) for c in t.classes)
        assert brute_aut_order(g) == brute_aut_order(t.graph) * factor


def test_pair_color_is_injective():
    seen = {pair_color(c, s) for c in range(40) for s in range(40)}
    assert len(seen) == 1600


def test_global_structure_base_cases():
    k1 = Graph.from_edges(1)
    ph = global_structure(k1, 0)
    assert ph.classes == [frozenset([0])] and len(ph.keys) == 1
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    ph = global_structure(star, 0)
    assert sorted(v for c in ph.classes for v in c) == list(range(5))
    assert all(star.is_clique(sum(1 << v for v in c)) for c in ph.classes)
    st = global_structure_refined(k1, 0)
    assert st.partition == [frozenset([0])] and st.top_group().order() == 1


def test_g8_structure_is_tight():
    g = g8()
    st = global_structure_refined(anchored(g, 8, 1), 8)
    h = st.structure
    assert verify_circle_bounded(h, 8)[0]
    ok, bad = verify_circle_bounded(h, 7)
    assert not ok and "8 components" in bad.reason
    assert max_cell_components(h) == 8
    assert automorphism_order(g) == 40320 == brute_aut_order(g)


def test_anchored_c6():
    g = cycle_graph(6)
    st = global_structure_refined(anchored(g, 0, 1), 0)
    assert all(len(c) == 1 for c in st.partition)
    assert st.top_group().order() == 2


def test_top_group_matches_oracle_image():
    for seed in range(60):
        if seed % 2:
            g, _, v = mirrored_instance(4, 1.5, seed)
        else:
            g, _ = reduced_instance(10, 2, seed)
            v = choose_anchor(g)[0]
        if v is None or g.n < 2 or g.n > 11:
            continue
        a = anchored(g, v, max(g.colors) + 1)
        st = global_structure_refined(a, v)
        p = st.ordered_partition()
        image = brute_aut_order(a) // brute_aut_order(a.with_colors(p.class_id))
        assert st.top_group().order() == image


def test_top_group_is_inside_structure_action():
    for seed in range(30):
        g, _, v = mirrored_instance(4, 1.5, seed)
        if v is None or g.n < 2:
            continue
        st = global_structure_refined(anchored(g, v, 1), v)
        aut = aut_circle_bounded(st.structure)
        inv = {x: i for i, x in enumerate(st.class_h)}
        restricted = schreier_sims([tuple(inv[s[x]] for x in st.class_h) for s in aut.gens], len(st.class_h))
        assert restricted.order() % st.top_group().order() == 0


def test_partition_is_invariant_under_relabeling():
    for seed in range(30):
        g, _ = reduced_instance(14, 2.5, seed)
        if g.n < 2:
            continue
        v = choose_anchor(g)[0]
        h, perm = shuffled(g, seed)
        a = global_structure_refined(anchored(g, v, 1), v)
        b = global_structure_refined(anchored(h, perm[v], 1), perm[v])
        moved = {frozenset(perm[x] for x in c) for c in a.partition}
        assert moved == set(b.partition)
        assert sorted(a.keys) == sorted(b.keys)


def test_relabeled_copies_are_recovered():
    for seed in range(100):
        g, _ = random_usq_graph(5 + seed % 30, 1 + seed % 4, seed)
        h, _ = shuffled(g, seed)
        m = isomorphic(g, h)
        assert m is not None and is_isomorphism(g, h, m)


def test_cr_mismatch_short_circuits():
    stats = IsoStats()
    assert isomorphic(complete_graph(3), path_graph(3), stats=stats) is None
    assert stats.anchors_tried == 0


def test_same_degree_sequence_pairs_agree_with_oracle():
    by_degrees = {}
    for seed in range(400):
        g, _ = reduced_instance(8, 2, seed)
        key = tuple(sorted(g.degree(v) for v in range(g.n)))
        by_degrees.setdefault(key, []).append(g)
    checked = noniso = 0
    for gs in by_degrees.values():
        for a, b in zip(gs, gs[1:]):
            want = brute_iso(a, b)
            got = isomorphic(a, b)
            assert (got is None) == (want is None)
            checked += 1
            noniso += want is None
    assert checked > 50 and noniso > 10


def test_disconnected_inputs():
    g = disjoint_union(cycle_graph(5), disjoint_union(path_graph(3), cycle_graph(5)))
    h, _ = shuffled(g, 1)
    m = isomorphic(g, h)
    assert m is not None and is_isomorphism(g, h, m)
    other = disjoint_union(cycle_graph(5), disjoint_union(path_graph(3), path_graph(5)))
    assert isomorphic(g, other) is None
    assert automorphism_order(g) == 10 * 10 * 2 * 2


def test_automorphism_orders():
    for n in range(1, 7):
        assert automorphism_order(complete_graph(n)) == math.factorial(n)
    assert automorphism_order(cycle_graph(5)) == 10
    assert automorphism_order(Graph.from_edges(0)) == 1


def test_automorphism_group_against_oracle():
    for seed in range(80):
        g, _ = random_usq_graph(2 + seed % 12, 1 + (seed % 3) / 2, seed)
        res = automorphism_group(g)
        assert res.order == brute_aut_order(g)
        assert all(is_automorphism(g, s) for s in res.generators)
        assert schreier_sims(res.generators, g.n).order() == res.order


def test_never_wrong_on_other_graphs():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(4, 9)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.45])
        h, _ = shuffled(g, rng.randrange(1000))
        try:
            m = isomorphic(g, h)
        except DiagnosedFailure:
            continue
        assert m is not None and is_isomorphism(g, h, m)
