import random
from collections import Counter
from fractions import Fraction as F

from usq.circle_bounded import verify_circle_bounded
from usq.geometry import intersection_graph
from usq.graph import Graph, induced_subgraph, mask_of
from usq.neighborhood import (build_g_clique, partition_clique_neighborhood, partition_neighborhood,
                              snh_partition)
from usq.pca import CLAW, complete, cycle


def neighborhood_instance(seed: int) -> Graph:
    rng = random.Random(seed)
    pts = [(F(rng.randint(-64, 64), 64), F(rng.randint(-64, 64), 64)) for _ in range(rng.randint(1, 14))]
    return intersection_graph(pts)


def clique_neighborhood_instance(seed: int):
    """A clique near the origin plus points seeing it, all with the same trace size."""
    rng = random.Random(seed)
    xs = [(F(rng.randint(-16, 16), 64), F(rng.randint(-16, 16), 64)) for _ in range(rng.randint(1, 3))]
    others = [(F(rng.randint(-96, 96), 64), F(rng.randint(-96, 96), 64)) for _ in range(rng.randint(2, 12))]
    g = intersection_graph(xs + others)
    xm = mask_of(range(len(xs)))
    trace = {v: (g.closed(v) & xm).bit_count() for v in range(len(xs), g.n) if g.closed(v) & xm}
    if not trace:
        return None
    size = Counter(trace.values()).most_common(1)[0][0]
    sub, _ = induced_subgraph(g, list(range(len(xs))) + [v for v, t in trace.items() if t == size])
    return sub, range(len(xs))


def is_partition(classes, universe):
    seen = [v for c in classes for v in c]
    return sorted(seen) == sorted(universe)


def test_fixed_neighborhoods():
    r = partition_neighborhood(complete(5))
    assert r.classes == [frozenset(range(5))] and len(r.keys) == 1
    r = partition_neighborhood(cycle(5))
    assert len(r.classes) == 5 and len(r.edges) == 5
    r = partition_neighborhood(CLAW)
    assert frozenset([0]) in r.classes
    assert is_partition(r.classes, range(4))


def test_random_neighborhoods():
    for seed in range(80):
        g = neighborhood_instance(seed)
        r = partition_neighborhood(g)
        assert is_partition(r.classes, range(g.n))
        assert all(g.is_clique(mask_of(c)) for c in r.classes)
        assert verify_circle_bounded(r.structure, 4)[0]


def test_snh_partition():
    g = complete(4)
    assert snh_partition(g, [0, 1]) == [frozenset([2, 3])]
    pend = Graph.from_edges(3, [(0, 1), (0, 2)])
    assert snh_partition(pend, [0]) == [frozenset([1, 2])]
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (0, 3)])
    assert len(snh_partition(g, [0, 1])) == 2


def test_g_clique():
    pieces, gc = build_g_clique(complete(3), [0])
    assert pieces == [frozenset([1, 2])] and gc.n == 1
    # clique {0, 1}; vertex 2 sees 0, vertex 3 sees 1, and 2-3 is an edge
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    pieces, gc = build_g_clique(g, [0, 1])
    assert len(pieces) == 2 and gc.num_edges() == 1


def test_pendants_around_a_point():
    # one center and four pendants in the four quadrants
    pts = [(F(0), F(0)), (F(1), F(1)), (F(-1), F(1)), (F(1), F(-1)), (F(-1), F(-1))]
    g = intersection_graph(pts)
    r = partition_clique_neighborhood(g, [0])
    assert sorted(map(sorted, r.classes)) == [[1], [2], [3], [4]]
    assert verify_circle_bounded(r.structure, 8)[0]


def test_full_trace_delegates():
    g = complete(4)
    a = partition_clique_neighborhood(g, [0])
    sub, _ = induced_subgraph(g, [1, 2, 3])
    b = partition_neighborhood(sub)
    assert a.keys == b.keys and [sorted(c) for c in a.classes] == [[1, 2, 3]]


def test_random_clique_neighborhoods():
    made = 0
    for seed in range(150):
        inst = clique_neighborhood_instance(seed)
        if inst is None:
            continue
        g, x = inst
        r = partition_clique_neighborhood(g, x)
        made += 1
        assert is_partition(r.classes, range(len(x), g.n))
        assert all(g.is_clique(mask_of(c)) for c in r.classes)
        assert verify_circle_bounded(r.structure, 8)[0]
    assert made > 100
