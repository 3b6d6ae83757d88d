import pytest

from usq.graph import (FormatError, Graph, complement, connected_components, connected_twin_classes,
                       disjoint_union, distance_levels, format_graph, induced_subgraph, is_automorphism,
                       parse_graph)
from usq.geometry import random_usq_graph

from conftest import complete_graph, cycle_graph, path_graph


def test_induced_subgraph_cases():
    g, back = induced_subgraph(path_graph(3), [])
    assert g.n == 0 and back == []
    g, back = induced_subgraph(path_graph(3), [0, 2])
    assert (g.n, g.num_edges(), back) == (2, 0, [0, 2])
    g, _ = induced_subgraph(complete_graph(4), [0, 1, 3])
    assert g.num_edges() == 3


def test_components():
    two = disjoint_union(complete_graph(3), complete_graph(3))
    assert sorted(map(len, connected_components(two))) == [3, 3]
    assert len(connected_components(cycle_graph(5))) == 1
    assert connected_components(Graph.from_edges(4)) == [frozenset([i]) for i in range(4)]


def test_distance_levels():
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    assert distance_levels(star, 0) == [frozenset([0]), frozenset([1, 2, 3, 4])]
    assert distance_levels(path_graph(4), 0) == [frozenset([i]) for i in range(4)]
    assert distance_levels(cycle_graph(6), 0) == [frozenset(s) for s in ({0}, {1, 5}, {2, 4}, {3})]


def test_twin_classes():
    assert connected_twin_classes(complete_graph(4)) == [frozenset(range(4))]
    assert len(connected_twin_classes(cycle_graph(5))) == 5
    k4 = complete_graph(4).recolor(2, 7)
    assert sorted(map(sorted, connected_twin_classes(k4))) == [[0, 1, 3], [2]]


def test_twin_classes_are_cliques():
    for seed in range(30):
        g, _ = random_usq_graph(20, 2, seed)
        for c in connected_twin_classes(g):
            assert g.is_clique(sum(1 << v for v in c))


def test_complement_and_union():
    assert complement(complete_graph(5)).num_edges() == 0
    g = cycle_graph(7)
    assert complement(complement(g)) == g
    u = disjoint_union(complete_graph(2), complete_graph(2))
    assert (u.n, u.num_edges()) == (4, 2)


def test_relabel_gives_isomorphic_copy():
    g = cycle_graph(6)
    assert is_automorphism(g, [1, 2, 3, 4, 5, 0])
    assert not is_automorphism(g, [1, 0, 2, 3, 4, 5])


def test_format_minimal_and_errors():
    g = parse_graph("usqgraph 1\nn 1\n")
    assert g.n == 1 and g.num_edges() == 0
    with pytest.raises(FormatError) as err:
        parse_graph("usqgraph 1\nn 3\ne 0 1\ne 0 1\n")
    assert err.value.lineno == 4
    with pytest.raises(FormatError):
        parse_graph("usqgraph 2\nn 1\n")
    with pytest.raises(FormatError):
        parse_graph("usqgraph 1\nn 2\ne 0 5\n")


def test_round_trip_is_byte_identical():
    for seed in range(100):
        g, _ = random_usq_graph(1 + seed % 25, 2, seed)
        g = g.recolor(0, seed % 3)
        text = format_graph(g)
        assert format_graph(parse_graph(text)) == text
        # comments and edge order do not matter
        lines = text.splitlines()
        noisy = "\n".join(lines[:2] + ["# note"] + lines[2:][::-1]) + "\n"
        assert format_graph(parse_graph(noisy)) == text
