import itertools
import random

import pytest

from usq.graph import Graph, complement
from usq.oracle import brute_unit_interval
from usq.pca import (CATALOG, CLAW, NET, NoCycle, co_bipartite_parts, cycle_conditions_hold, find_induced,
                     has_induced, is_chordal, is_unit_interval, pca_canonical_cycle)
from usq.geometry import random_usq_graph

from conftest import complete_graph, cycle_graph, path_graph


def test_find_induced_basics():
    assert find_induced(CLAW, CLAW) == (0, 1, 2, 3)
    assert find_induced(complete_graph(4), CLAW) is None
    # net with an extra apex joined to the triangle only still contains the net
    g = Graph.from_edges(7, NET.edges() + [(6, 0), (6, 1), (6, 2)])
    assert find_induced(g, NET) is not None


def test_find_induced_is_induced():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randint(4, 12)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5])
        for name, p in CATALOG.items():
            emb = find_induced(g, p)
            assert (emb is None) == (not has_induced(g, p))
            if emb is not None:
                for a, b in itertools.combinations(range(p.n), 2):
                    assert g.has_edge(emb[a], emb[b]) == p.has_edge(a, b)


def test_unit_interval():
    assert is_unit_interval(path_graph(5))
    assert not is_unit_interval(CLAW)
    assert not is_unit_interval(cycle_graph(4))
    assert is_chordal(complete_graph(5)) and not is_chordal(cycle_graph(5))


def test_unit_interval_matches_grid_search():
    for n in range(1, 6):
        for bits in range(1 << (n * (n - 1) // 2)):
            pairs = list(itertools.combinations(range(n), 2))
            g = Graph.from_edges(n, [e for i, e in enumerate(pairs) if bits >> i & 1])
            assert is_unit_interval(g) == brute_unit_interval(g)


def test_co_bipartite_parts():
    pairs, iso = co_bipartite_parts(complete_graph(4))
    assert pairs == [] and iso == frozenset(range(4))
    g = complement(cycle_graph(6))
    pairs, iso = co_bipartite_parts(g)
    assert len(pairs) == 1 and not iso
    for side in pairs[0]:
        assert len(side) == 3 and g.is_clique(sum(1 << v for v in side))
    assert co_bipartite_parts(cycle_graph(5)) is None


def test_canonical_cycle():
    for n in (5, 7):
        classes, h = pca_canonical_cycle(cycle_graph(n))
        assert len(classes) == n and all(len(c) == 1 for c in classes)
        assert h.num_edges() == n and all(h.degree(v) == 2 for v in range(n))
        assert cycle_conditions_hold(cycle_graph(n), classes)
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(NoCycle):
        pca_canonical_cycle(Graph.from_edges(5, cycle_graph(4).edges() + [(4, i) for i in range(4)]))
    with pytest.raises(NoCycle):
        pca_canonical_cycle(star)


def test_canonical_cycle_contracts_twins():
    # C6 with every vertex doubled
    edges = []
    for i in range(6):
        a, b = 2 * i, 2 * i + 1
        c, d = 2 * ((i + 1) % 6), 2 * ((i + 1) % 6) + 1
        edges += [(a, b), (a, c), (a, d), (b, c), (b, d)]
    g = Graph.from_edges(12, edges)
    classes, h = pca_canonical_cycle(g)
    assert sorted(map(len, classes)) == [2] * 6
    assert cycle_conditions_hold(g, classes)


def test_forbidden_patterns_absent_in_generated_graphs():
    for seed in range(60):
        g, _ = random_usq_graph(25, 1 + seed % 4, seed)
        for name in ("K15", "K23", "co-3K2", "co-T2"):
            assert not has_induced(g, CATALOG[name]), name
