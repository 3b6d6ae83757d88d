import itertools
import random

import pytest

from usq.permgroup import (Hypergraph, PermGroup, direct_product, from_cycles, hypergraph_aut_intersect,
                           inverse, mul, orbits_of, restriction_kernel_image, schreier_sims, setwise_stabilizer)


def test_orders():
    assert schreier_sims([], 4).order() == 1
    assert schreier_sims([from_cycles(4, [[0, 1]]), from_cycles(4, [[0, 1, 2, 3]])], 4).order() == 24
    assert schreier_sims([from_cycles(5, [[0, 1, 2, 3, 4]])], 5).order() == 5


def test_orbits():
    assert PermGroup.trivial(3).orbits() == [frozenset([i]) for i in range(3)]
    g = schreier_sims([from_cycles(4, [[0, 1, 2]])], 4)
    assert sorted(map(sorted, g.orbits())) == [[0, 1, 2], [3]]
    assert len(PermGroup.symmetric(6).orbits()) == 1


def test_setwise_stabilizer():
    s4 = PermGroup.symmetric(4)
    assert setwise_stabilizer(s4, []).order() == 24
    assert setwise_stabilizer(s4, range(4)).order() == 24
    assert setwise_stabilizer(s4, [0, 1]).order() == 4
    c5 = schreier_sims([from_cycles(5, [[0, 1, 2, 3, 4]])], 5)
    assert setwise_stabilizer(c5, [0, 2]).order() == 1


def test_hypergraph_intersection():
    s3 = PermGroup.symmetric(3)
    assert hypergraph_aut_intersect(Hypergraph.make(3, [[0], [1], [2]]), s3).order() == 6
    assert hypergraph_aut_intersect(Hypergraph.make(3, [[0, 1]]), s3).order() == 2
    s4 = PermGroup.symmetric(4)
    assert hypergraph_aut_intersect(Hypergraph.make(4, [[0, 1], [2, 3]]), s4).order() == 8
    assert hypergraph_aut_intersect(Hypergraph.make(4, [[0, 1], [2, 3]], [0, 1]), s4).order() == 4


def test_hypergraph_intersection_against_filtering():
    rng = random.Random(2)
    for _ in range(40):
        m = 6
        gens = [tuple(rng.sample(range(m), m)) for _ in range(rng.randint(0, 2))]
        grp = schreier_sims(gens, m)
        edges = [rng.sample(range(m), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))]
        colors = [rng.randrange(2) for _ in edges]
        h = Hypergraph.make(m, edges, colors)
        table = h.table()
        want = 0
        for p in grp.elements():
            want += all(table.get(sum(1 << p[x] for x in e)) is not None and
                        table[sum(1 << p[x] for x in e)] == table[sum(1 << x for x in e)] for e in h.edges)
        assert hypergraph_aut_intersect(h, grp).order() == want


def test_restriction_kernel_image():
    s2s2 = schreier_sims([from_cycles(4, [[0, 1]]), from_cycles(4, [[2, 3]])], 4)
    img, ker, lift = restriction_kernel_image(s2s2, [0, 1])
    assert (img.order(), ker.order()) == (2, 2)
    img, ker, _ = restriction_kernel_image(s2s2, range(4))
    assert (img.order(), ker.order()) == (4, 1)
    img, ker, _ = restriction_kernel_image(PermGroup.trivial(3), [0])
    assert (img.order(), ker.order()) == (1, 1)
    with pytest.raises(ValueError):
        restriction_kernel_image(PermGroup.symmetric(3), [0])


def test_direct_product():
    z2 = schreier_sims([(1, 0)], 2)
    assert direct_product([z2, z2]).order() == 4
    assert direct_product([]).order() == 1
    rng = random.Random(5)
    factors = []
    for _ in range(5):
        m = rng.randint(2, 4)
        factors.append(schreier_sims([tuple(rng.sample(range(m), m))], m))
    want = 1
    for f in factors:
        want *= f.order()
    assert direct_product(factors).order() == want


def test_products_and_membership():
    a, b = from_cycles(3, [[0, 1]]), from_cycles(3, [[1, 2]])
    ab = mul(a, b)
    assert mul(ab, inverse(ab)) == (0, 1, 2)
    s3 = PermGroup.symmetric(3)
    assert all(s3.contains(p) for p in itertools.permutations(range(3)))
    c3 = schreier_sims([from_cycles(3, [[0, 1, 2]])], 3)
    assert not c3.contains(a)
