"""End-to-end isomorphism and automorphism counting for unit square graphs.

Each connected, twin-free input gets one vertex recolored as an anchor. From
the anchor outward a canonical clique-partition is built together with a
circle-bounded structure graph. Color refinement of the clique incidence
graph then makes the partition clique-stable, and one structure layer is
added per refinement round. Automorphisms of the structure graph restricted
to the partition form a supergroup of the action on classes; cutting it down
to the automorphisms of the quotient gives the exact action, and quotient
automorphisms lift to the graph.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .circle_bounded import DEFAULT_T, StructureGraph, aut_circle_bounded, verify_circle_bounded
from .cliques import (LiftFailure, QuotientGraph, clique_stable_refine, lift_automorphism, maximal_cliques,
                      quotient_graph, verify_staircase)
from .graph import (DiagnosedFailure, Graph, connected_components, connected_twin_classes, distance_levels,
                    induced_subgraph, is_automorphism, is_connected, is_isomorphism, iter_bits, mask_of)
from .neighborhood import partition_clique_neighborhood
from .permgroup import Hypergraph, Perm, PermGroup, hypergraph_aut_intersect, schreier_sims
from .refinement import OrderedPartition, refine_rounds


@dataclass(frozen=True)
class Config:
    k: int = 3          # WL dimension inside neighborhoods
    t: int = DEFAULT_T  # circle bound for structure graphs


@dataclass
class Timings:
    """Accumulated seconds per pipeline stage."""

    stages: dict[str, float] = field(default_factory=dict)

    def add(self, name: str, seconds: float) -> None:
        self.stages[name] = self.stages.get(name, 0.0) + seconds


class _Clock:
    def __init__(self, timings: Timings | None, name: str):
        self.timings, self.name = timings, name

    def __enter__(self):
        self.start = time.perf_counter()

    def __exit__(self, *exc):
        if self.timings is not None:
            self.timings.add(self.name, time.perf_counter() - self.start)


# -- twins -----------------------------------------------------------------------------

def pair_color(color: int, size: int) -> int:
    """Injective encoding of ``(color, size)``."""
    s = color + size
    return s * (s + 1) // 2 + size


@dataclass(frozen=True)
class TwinReduction:
    graph: Graph
    classes: tuple[frozenset[int], ...]   # reduced vertex i stands for classes[i]

    def expand(self) -> list[list[int]]:
        return [sorted(c) for c in self.classes]


def twin_reduce(g: Graph) -> TwinReduction:
    """Contract every class of connected twins (same color) to one vertex.

    The new vertex is colored by ``pair_color(color, class size)``. A
    twin-free graph comes back unchanged; two graphs of equal order are then
    either both unchanged or both recolored, so colors stay comparable.
    """
    classes = connected_twin_classes(g)
    if len(classes) == g.n:
        return TwinReduction(g, tuple(classes))
    rep = [min(c) for c in classes]
    where = {}
    for i, c in enumerate(classes):
        for v in c:
            where[v] = i
    rows = [mask_of(where[w] for w in iter_bits(g.adj[r]) if where[w] != i) for i, r in enumerate(rep)]
    colors = [pair_color(g.colors[r], len(c)) for r, c in zip(rep, classes)]
    return TwinReduction(Graph.from_rows(rows, colors), tuple(classes))


# -- global structure ---------------------------------------------------------------------

@dataclass
class _Builder:
    keys: list[tuple] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)

    def add(self, key: tuple, *nbrs: int) -> int:
        self.keys.append(key)
        v = len(self.keys) - 1
        self.edges.extend((v, w) for w in nbrs)
        return v


@dataclass
class Phase0:
    classes: list[frozenset[int]]
    hv: list[int]               # structure vertex of each class
    keys: list[tuple]
    edges: list[tuple[int, int]]

    @property
    def structure(self) -> StructureGraph:
        return StructureGraph.from_keys(len(self.keys), self.edges, self.keys)


def _fail(where: str, exc: DiagnosedFailure) -> DiagnosedFailure:
    return DiagnosedFailure(exc.check, f"{where}: {exc.detail}")


def global_structure(g: Graph, anchor: int, cfg: Config = Config()) -> Phase0:
    """Canonical clique-partition grown outward from ``anchor`` with its structure graph."""
    if not is_connected(g):
        raise ValueError("global structure needs a connected graph")
    b = _Builder()
    classes: list[frozenset[int]] = [frozenset([anchor])]
    hv: list[int] = [b.add((0, 0))]
    class_of = {anchor: 0}
    levels = distance_levels(g, anchor)
    for layer in range(1, len(levels)):
        init: dict[tuple, list[int]] = {}
        for v in sorted(levels[layer]):
            seen = frozenset(class_of[w] for w in iter_bits(g.adj[v]) if w in class_of)
            init.setdefault((seen, g.colors[v]), []).append(v)
        new_classes: list[frozenset[int]] = []
        new_hv: list[int] = []
        for (seen, gcol), zs in sorted(init.items(), key=lambda kv: kv[1][0]):
            xs = sorted(seen)
            z = b.add((0, layer, 0, gcol), *(hv[x] for x in xs))
            masks = [mask_of(classes[x]) for x in xs]
            deg: dict[tuple[int, ...], list[int]] = {}
            for v in zs:
                deg.setdefault(tuple((g.closed(v) & m).bit_count() for m in masks), []).append(v)
            gadgets: dict[tuple[int, int], int] = {}
            for vec in deg:
                for i, j in enumerate(vec):
                    if (i, j) not in gadgets:
                        gadgets[(i, j)] = b.add((0, layer, 1, j), z, hv[xs[i]])
            for vec, a_vs in sorted(deg.items(), key=lambda kv: kv[1][0]):
                a = b.add((0, layer, 2), *(gadgets[(i, j)] for i, j in enumerate(vec)))
                parts: list[dict[int, int]] = []          # vertex -> structure vertex of its class
                for i, x in enumerate(xs):
                    sub, back = induced_subgraph(g, list(classes[x]) + a_vs)
                    xk = [i for i, v in enumerate(back) if v in classes[x]]
                    try:
                        res = partition_clique_neighborhood(sub, xk, cfg.k, cfg.t)
                    except DiagnosedFailure as exc:
                        raise _fail(f"layer {layer}", exc) from None
                    base = len(b.keys)
                    for key in res.keys:
                        b.add((0, layer, 3) + key, a, hv[x])
                    b.edges.extend((base + p, base + q) for p, q in res.edges)
                    owner = {}
                    for cl, h in zip(res.classes, res.anchor):
                        for v in cl:
                            owner[back[v]] = base + h
                    parts.append(owner)
                common: dict[tuple[int, ...], list[int]] = {}
                for v in a_vs:
                    common.setdefault(tuple(p[v] for p in parts), []).append(v)
                for sig, bs in sorted(common.items(), key=lambda kv: kv[1][0]):
                    h = b.add((0, layer, 4), *sig)
                    new_classes.append(frozenset(bs))
                    new_hv.append(h)
        for c, h in zip(new_classes, new_hv):
            for v in c:
                class_of[v] = len(classes)
            classes.append(c)
            hv.append(h)
    out = Phase0(classes, hv, b.keys, b.edges)
    for c in classes:
        if not g.is_clique(mask_of(c)):
            raise DiagnosedFailure("global-structure", f"class {sorted(c)} is not a clique")
    ok, bad = verify_circle_bounded(out.structure, cfg.t)
    if not ok:
        raise DiagnosedFailure("global-structure", f"structure is not {cfg.t}-circle-bounded: {bad.reason}")
    return out


@dataclass
class GlobalStructure:
    graph: Graph
    anchor: int
    phase0: Phase0
    partition: list[frozenset[int]]          # clique-stable classes
    class_h: list[int]                       # structure vertex of each class
    keys: list[tuple]
    edges: list[tuple[int, int]]
    rounds: int
    quotient: QuotientGraph
    _top: PermGroup | None = None

    @property
    def structure(self) -> StructureGraph:
        return StructureGraph.from_keys(len(self.keys), self.edges, self.keys)

    def ordered_partition(self) -> OrderedPartition:
        return OrderedPartition.from_classes(self.graph.n, self.partition)

    def anchor_class(self) -> int:
        return next(i for i, c in enumerate(self.partition) if self.anchor in c)

    def top_group(self, cfg: Config = Config()) -> PermGroup:
        if self._top is None:
            self._top = _top_action([self], cfg)
        return self._top


def global_structure_refined(g: Graph, anchor: int, cfg: Config = Config(),
                             timings: Timings | None = None) -> GlobalStructure:
    """Clique-stable partition plus one structure layer per refinement round."""
    with _Clock(timings, "global-structure"):
        ph = global_structure(g, anchor, cfg)
    with _Clock(timings, "clique-stable"):
        cliques = maximal_cliques(g)
        p0 = OrderedPartition.from_classes(g.n, ph.classes)
        cs = clique_stable_refine(g, p0, cliques)
    with _Clock(timings, "refinement-layers"):
        keys = list(ph.keys)
        edges = list(ph.edges)
        n, k = g.n, len(cliques)
        nbrs = [list(iter_bits(g.adj[v])) for v in range(n)] + [[] for _ in range(k)]
        for i, c in enumerate(cliques):
            for v in c:
                nbrs[v].append(n + i)
                nbrs[n + i].append(v)
        hist = cs.history
        class_of0 = {}
        for ci, c in enumerate(ph.classes):
            for v in c:
                class_of0[v] = ci
        prev: dict[int, int] = {}
        prev_gadget: dict[tuple[int, int], int] = {}
        for r, names in enumerate(hist):
            cur: dict[int, int] = {}
            reps: dict[int, int] = {}
            for v, name in enumerate(names):
                reps.setdefault(name, v)
            for name in sorted(reps):
                v = reps[name]
                keys.append((1, r, 0))
                xv = len(keys) - 1
                cur[name] = xv
                if r == 0:
                    if v < n:
                        edges.append((xv, ph.hv[class_of0[v]]))
                    continue
                edges.append((xv, prev[hist[r - 1][v]]))
                counts: dict[int, int] = {}
                for w in nbrs[v]:
                    counts[hist[r - 1][w]] = counts.get(hist[r - 1][w], 0) + 1
                for pname, j in counts.items():
                    gk = (pname, j)
                    if gk not in prev_gadget:
                        keys.append((1, r - 1, 1, j))
                        prev_gadget[gk] = len(keys) - 1
                        edges.append((prev_gadget[gk], prev[pname]))
                    edges.append((xv, prev_gadget[gk]))
            prev = cur
            prev_gadget = {}
        final = hist[-1]
        partition = list(cs.partition.classes)
        class_h = []
        for c in partition:
            keys.append((2,))
            class_h.append(len(keys) - 1)
            edges.append((class_h[-1], prev[final[min(c)]]))
        gs = GlobalStructure(g, anchor, ph, partition, class_h, keys, edges, len(hist) - 1,
                             quotient_graph(g, cs.partition))
    for c in partition:
        if not g.is_clique(mask_of(c)):
            raise DiagnosedFailure("clique-stable", f"class {sorted(c)} is not a clique")
    return gs


# -- top action ------------------------------------------------------------------------------

def _quotient_hypergraph(structs: Sequence[GlobalStructure]) -> Hypergraph:
    edges, colors = [], []
    off = 0
    for s in structs:
        q = s.quotient
        for i in range(len(q.classes)):
            edges.append([off + i])
            colors.append((0, q.vertex_color[i], q.gcolor[i]))
        for (a, b), c in q.edge_color.items():
            if c:
                edges.append([off + a, off + b])
                colors.append((1, c))
        off += len(q.classes)
    rank = {c: i for i, c in enumerate(sorted(set(colors)))}
    return Hypergraph.make(off, edges, [rank[c] for c in colors])


def _union_structure(structs: Sequence[GlobalStructure]) -> tuple[StructureGraph, list[int]]:
    keys: list[tuple] = []
    edges: list[tuple[int, int]] = []
    class_h: list[int] = []
    for s in structs:
        off = len(keys)
        keys.extend(s.keys)
        edges.extend((a + off, b + off) for a, b in s.edges)
        class_h.extend(h + off for h in s.class_h)
    return StructureGraph.from_keys(len(keys), edges, keys), class_h


def _top_action(structs: Sequence[GlobalStructure], cfg: Config, timings: Timings | None = None) -> PermGroup:
    """Automorphisms of the (union of) quotients inside the structure group."""
    h, class_h = _union_structure(structs)
    with _Clock(timings, "structure-aut"):
        aut = aut_circle_bounded(h, cfg.t, check=True)
    with _Clock(timings, "quotient-intersect"):
        inv = {x: i for i, x in enumerate(class_h)}
        m = len(class_h)
        gens = []
        for s in aut.gens:
            r = tuple(inv[s[x]] for x in class_h)
            if r != tuple(range(m)):
                gens.append(r)
        top = schreier_sims(gens, m) if gens else PermGroup.trivial(m)
        return hypergraph_aut_intersect(_quotient_hypergraph(structs), top)


# -- anchoring -----------------------------------------------------------------------------

def anchored(g: Graph, v: int, fresh: int) -> Graph:
    return g.recolor(v, fresh)


def _joint_cr(g1: Graph, g2: Graph) -> tuple[list[int], list[int]]:
    n1 = g1.n
    nbrs = [list(iter_bits(r)) for r in g1.adj] + [[w + n1 for w in iter_bits(r)] for r in g2.adj]
    names = refine_rounds(nbrs, list(g1.colors) + list(g2.colors))
    return names[:n1], names[n1:]


def _balanced(a: Sequence[int], b: Sequence[int]) -> bool:
    return sorted(a) == sorted(b)


def choose_anchor(g: Graph) -> tuple[int, list[int]]:
    """Anchor ``v1``: smallest CR class, ties by class name; returns ``(v1, its class)``."""
    names = refine_rounds([list(iter_bits(r)) for r in g.adj], list(g.colors))
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(names):
        cells.setdefault(c, []).append(v)
    c = min(cells, key=lambda c: (len(cells[c]), c))
    return cells[c][0], cells[c]


def _lift_between(s1: GlobalStructure, s2: GlobalStructure, delta: Sequence[int]) -> list[int]:
    """A bijection ``G1 -> G2`` moving class ``i`` of ``s1`` onto class ``delta[i]`` of ``s2``."""
    g1, g2 = s1.graph, s2.graph
    p1, p2 = s1.ordered_partition(), s2.ordered_partition()
    # classes of OrderedPartition.from_classes follow the list order
    ok1, o1 = verify_staircase(g1, p1)
    ok2, o2 = verify_staircase(g2, p2)
    if ok1 and ok2:
        mapping = [0] * g1.n
        for a, b in enumerate(delta):
            for x, y in zip(o1[a], o2[b]):
                mapping[x] = y
        if is_isomorphism(g1, g2, mapping):
            return mapping
    from .oracle import BudgetExceeded, SearchBudget, brute_iso

    src = g1.with_colors([_pair(g1.colors[v], p1.class_id[v]) for v in range(g1.n)])
    inv = {b: a for a, b in enumerate(delta)}
    dst = g2.with_colors([_pair(g2.colors[v], inv[p2.class_id[v]]) for v in range(g2.n)])
    try:
        found = brute_iso(src, dst, SearchBudget(nodes=200_000, seconds=60.0))
    except BudgetExceeded as exc:
        raise LiftFailure(f"fallback search gave up: {exc}") from None
    if found is None or not is_isomorphism(g1, g2, found):
        raise LiftFailure("quotient isomorphism does not lift")
    return found


def _pair(a: int, b: int) -> int:
    return pair_color(a, b)


@dataclass
class IsoStats:
    anchors_tried: int = 0
    structures: list[GlobalStructure] = field(default_factory=list)


def _iso_anchored(s1: GlobalStructure, s2: GlobalStructure, cfg: Config,
                  timings: Timings | None = None) -> list[int] | None:
    """Isomorphism between two anchored graphs through their structures, or ``None``."""
    if sorted(s1.keys) != sorted(s2.keys) or len(s1.partition) != len(s2.partition):
        return None
    q1, q2 = s1.quotient, s2.quotient
    if sorted(zip(q1.vertex_color, q1.gcolor)) != sorted(zip(q2.vertex_color, q2.gcolor)):
        return None
    group = _top_action([s1, s2], cfg, timings)
    m1 = len(s1.partition)
    a1, a2 = s1.anchor_class(), m1 + s2.anchor_class()
    chain = schreier_sims(group.gens, group.m, [a1]) if group.gens else None
    if chain is None or not chain.levels or chain.levels[0].point != a1 or a2 not in chain.levels[0].trans:
        return None
    elt = chain.levels[0].trans[a2]
    delta = [elt[i] - m1 for i in range(m1)]
    if any(not 0 <= d < len(s2.partition) for d in delta):
        raise DiagnosedFailure("top-action", "swap element does not map one side onto the other")
    with _Clock(timings, "lift"):
        return _lift_between(s1, s2, delta)


def _iso_connected(g1: Graph, g2: Graph, cfg: Config, timings: Timings | None,
                   stats: IsoStats | None) -> list[int] | None:
    if g1.n != g2.n or g1.num_edges() != g2.num_edges():
        return None
    if g1.n == 1:
        return [0] if g1.colors == g2.colors else None
    with _Clock(timings, "twin-reduce"):
        t1, t2 = twin_reduce(g1), twin_reduce(g2)
    r1, r2 = t1.graph, t2.graph
    if r1.n != r2.n:
        return None
    c1, c2 = _joint_cr(r1, r2)
    if not _balanced(c1, c2):
        return None
    if r1.n == 1:
        red = [0]
    else:
        fresh = max(max(r1.colors), max(r2.colors)) + 1
        v1, _ = choose_anchor(r1)
        cands = [v for v in range(r2.n) if c2[v] == c1[v1]]
        a1 = anchored(r1, v1, fresh)
        red = None
        s1: GlobalStructure | None = None
        for v2 in cands:
            a2 = anchored(r2, v2, fresh)
            x1, x2 = _joint_cr(a1, a2)
            if not _balanced(x1, x2):
                continue
            if stats is not None:
                stats.anchors_tried += 1
            try:
                if s1 is None:
                    s1 = global_structure_refined(a1, v1, cfg, timings)
                    if stats is not None:
                        stats.structures.append(s1)
                s2 = global_structure_refined(a2, v2, cfg, timings)
                if stats is not None:
                    stats.structures.append(s2)
                red = _iso_anchored(s1, s2, cfg, timings)
            except DiagnosedFailure as exc:
                raise DiagnosedFailure(exc.check, f"anchors ({v1}, {v2}): {exc.detail}") from None
            if red is not None:
                break
        if red is None:
            return None
    mapping = [0] * g1.n
    for u, w in enumerate(red):
        for x, y in zip(sorted(t1.classes[u]), sorted(t2.classes[w])):
            mapping[x] = y
    return mapping


def isomorphic(g1: Graph, g2: Graph, cfg: Config = Config(), timings: Timings | None = None,
               stats: IsoStats | None = None) -> list[int] | None:
    """A verified color-preserving isomorphism ``g1 -> g2``, or ``None``.

    Raises :class:`DiagnosedFailure` when an internal certificate fails,
    which can only happen on inputs that are not unit square graphs.
    """
    if g1.n != g2.n or g1.num_edges() != g2.num_edges() or sorted(g1.colors) != sorted(g2.colors):
        return None
    if g1.n == 0:
        return []
    c1, c2 = _joint_cr(g1, g2)
    if not _balanced(c1, c2):
        return None
    comps1 = connected_components(g1)
    comps2 = connected_components(g2)
    used = [False] * len(comps2)
    mapping = [0] * g1.n
    for comp in comps1:
        s1, b1 = induced_subgraph(g1, sorted(comp))
        sig1 = sorted(c1[v] for v in comp)
        matched = False
        for j, other in enumerate(comps2):
            if used[j] or len(other) != len(comp) or sorted(c2[v] for v in other) != sig1:
                continue
            s2, b2 = induced_subgraph(g2, sorted(other))
            sub = _iso_connected(s1, s2, cfg, timings, stats)
            if sub is None:
                continue
            for x, y in enumerate(sub):
                mapping[b1[x]] = b2[y]
            used[j] = matched = True
            break
        if not matched:
            return None
    if not is_isomorphism(g1, g2, mapping):
        raise DiagnosedFailure("soundness", "assembled bijection failed verification")
    return mapping


# -- automorphism groups ------------------------------------------------------------------------

def _ir_generators(g: Graph) -> tuple[int, list[Perm]]:
    """Order and generators via an orbit-stabilizer chain of explicit isomorphisms."""
    from .oracle import brute_iso

    order = 1
    gens: list[Perm] = []
    cur = g
    fresh = max(g.colors, default=0) + 1
    while True:
        names = refine_rounds([list(iter_bits(r)) for r in cur.adj], list(cur.colors))
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(names):
            cells.setdefault(c, []).append(v)
        big = [vs for vs in cells.values() if len(vs) > 1]
        if not big:
            return order, gens
        cell = min(big, key=lambda vs: (len(vs), vs[0]))
        cur = cur.with_colors([names[v] for v in range(cur.n)])
        fresh = max(cur.colors) + 1
        v = cell[0]
        pinned = cur.recolor(v, fresh)
        orbit = 1
        for w in cell[1:]:
            found = brute_iso(pinned, cur.recolor(w, fresh))
            if found is not None:
                orbit += 1
                gens.append(tuple(found))
        order *= orbit
        cur = pinned


@dataclass
class AutResult:
    order: int
    generators: list[Perm]


def _aut_connected(g: Graph, cfg: Config, timings: Timings | None) -> AutResult:
    t = twin_reduce(g)
    r = t.graph
    gens_red: list[Perm] = []
    if r.n == 1:
        order_red = 1
    else:
        fresh = max(r.colors) + 1
        v1, cell = choose_anchor(r)
        a1 = anchored(r, v1, fresh)
        s1 = global_structure_refined(a1, v1, cfg, timings)
        top = _top_action([s1], cfg, timings)
        p1 = s1.ordered_partition()
        ok, orders = verify_staircase(a1, p1)
        for d in top.gens:
            gens_red.append(lift_automorphism(a1, p1, d, orders if ok else None))
        kern_order, kern_gens = _ir_generators(a1.with_colors([p1.class_id[v] for v in range(a1.n)]))
        for kg in kern_gens:
            if is_automorphism(a1, kg):
                gens_red.append(kg)
        orbit = 1
        for v2 in cell[1:]:
            m = _iso_connected(a1, anchored(r, v2, fresh), cfg, timings, None)
            if m is not None:
                orbit += 1
                gens_red.append(tuple(m))
        order_red = orbit * top.order() * kern_order
    # expand through twin classes
    gens: list[Perm] = []
    for s in gens_red:
        p = list(range(g.n))
        for u, w in enumerate(s):
            for x, y in zip(sorted(t.classes[u]), sorted(t.classes[w])):
                p[x] = y
        gens.append(tuple(p))
    twin_factor = 1
    for c in t.classes:
        twin_factor *= math.factorial(len(c))
        cs = sorted(c)
        for x, y in zip(cs, cs[1:]):
            p = list(range(g.n))
            p[x], p[y] = y, x
            gens.append(tuple(p))
    return AutResult(order_red * twin_factor, gens)


def automorphism_group(g: Graph, cfg: Config = Config(), timings: Timings | None = None) -> AutResult:
    """``|Aut(G)|`` and a verified generating set."""
    if g.n == 0:
        return AutResult(1, [])
    comps = connected_components(g)
    subs = [induced_subgraph(g, sorted(c)) for c in comps]
    # group isomorphic components; each group contributes m! * |Aut(C)|^m
    groups: list[list[int]] = []
    reps: list[int] = []
    maps: dict[int, list[int]] = {}
    for i, (sg, _) in enumerate(subs):
        for gi, rep in enumerate(reps):
            m = isomorphic(subs[rep][0], sg, cfg, timings)
            if m is not None:
                groups[gi].append(i)
                maps[i] = m
                break
        else:
            reps.append(i)
            groups.append([i])
    order = 1
    gens: list[Perm] = []
    for gi, members in enumerate(groups):
        rep = reps[gi]
        res = _aut_connected(subs[rep][0], cfg, timings)
        order *= math.factorial(len(members)) * res.order ** len(members)
        back = subs[rep][1]
        for s in res.generators:
            p = list(range(g.n))
            for x, y in enumerate(s):
                p[back[x]] = back[y]
            gens.append(tuple(p))
        # swap consecutive copies
        for a, b in zip(members, members[1:]):
            ma = maps.get(a, list(range(len(comps[a]))))
            mb = maps[b]
            p = list(range(g.n))
            ba, bb = subs[a][1], subs[b][1]
            # rep -> a is ma, rep -> b is mb; a -> b is mb . ma^-1
            inv_a = {y: x for x, y in enumerate(ma)}
            for y in range(len(ma)):
                x = inv_a[y]
                p[ba[y]] = bb[mb[x]]
                p[bb[mb[x]]] = ba[y]
            gens.append(tuple(p))
    for s in gens:
        if not is_automorphism(g, s):
            raise DiagnosedFailure("soundness", "generator failed verification")
    return AutResult(order, gens)


def automorphism_order(g: Graph, cfg: Config = Config()) -> int:
    return automorphism_group(g, cfg).order
