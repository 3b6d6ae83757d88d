"""Layered graphs whose cells are small unions of paths and cycles.

Vertices are processed color by color in ascending order. A cell is the set
of vertices of one color sharing the exact same set of lower-colored
neighbors; the graph is ``t``-circle-bounded when every cell induces at most
``t`` components of maximum degree two.
"""

from __future__ import annotations

import random
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Hashable, Sequence

from .graph import DiagnosedFailure, Graph, is_automorphism, iter_bits, mask_of
from .permgroup import (Hypergraph, Perm, PermGroup, hypergraph_aut_intersect, identity, preserves,
                        schreier_sims)

DEFAULT_T = 8


@dataclass(frozen=True)
class StructureGraph:
    """A colored graph read in ascending color order.

    ``keys`` optionally keeps the tuple color of every vertex; ``graph`` holds
    their ranks, so the layer order is the order of the keys.
    """

    graph: Graph
    keys: tuple[Hashable, ...] | None = None

    @classmethod
    def from_keys(cls, n: int, edges, keys: Sequence) -> "StructureGraph":
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        g = Graph.from_edges(n, edges, [order[k] for k in keys])
        return cls(g, tuple(keys))

    @property
    def n(self) -> int:
        return self.graph.n


def disjoint_union_structures(a: StructureGraph, b: StructureGraph) -> StructureGraph:
    """Union with both sides ranked on a common key set."""
    if a.keys is None or b.keys is None:
        from .graph import disjoint_union
        return StructureGraph(disjoint_union(a.graph, b.graph))
    edges = a.graph.edges() + [(u + a.n, v + a.n) for u, v in b.graph.edges()]
    return StructureGraph.from_keys(a.n + b.n, edges, a.keys + b.keys)


@dataclass(frozen=True)
class Violation:
    color: int
    down: frozenset[int]
    reason: str


def cells_by_layer(g: Graph) -> list[tuple[int, dict[int, list[int]]]]:
    """``[(color, {down-set mask: cell vertices})]`` in ascending color order."""
    by_color: dict[int, list[int]] = {}
    for v, c in enumerate(g.colors):
        by_color.setdefault(c, []).append(v)
    out = []
    below = 0
    for c in sorted(by_color):
        cells: dict[int, list[int]] = {}
        for v in by_color[c]:
            cells.setdefault(g.adj[v] & below, []).append(v)
        out.append((c, cells))
        below |= mask_of(by_color[c])
    return out


def _components(g: Graph, vs: Sequence[int]) -> list[list[int]]:
    m = mask_of(vs)
    seen = 0
    out = []
    for v in vs:
        if seen >> v & 1:
            continue
        comp = []
        stack = [v]
        seen |= 1 << v
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in iter_bits(g.adj[u] & m & ~seen):
                seen |= 1 << w
                stack.append(w)
        out.append(sorted(comp))
    return out


_logs: list[list] = []


@contextmanager
def certificate_log():
    """Collect ``(bound, ok, n)`` for every circle-bound check made inside the block."""
    log: list[tuple[int, bool, int]] = []
    _logs.append(log)
    try:
        yield log
    finally:
        _logs.remove(log)


def verify_circle_bounded(h: StructureGraph | Graph, t: int = DEFAULT_T) -> tuple[bool, Violation | None]:
    """Check every cell; report the first violation in layer order."""
    g = h.graph if isinstance(h, StructureGraph) else h
    ok, bad = _verify(g, t)
    for log in _logs:
        log.append((t, ok, g.n))
    return ok, bad


def _verify(g: Graph, t: int) -> tuple[bool, Violation | None]:
    for c, cells in cells_by_layer(g):
        for down in sorted(cells):
            vs = cells[down]
            m = mask_of(vs)
            for v in vs:
                if (g.adj[v] & m).bit_count() > 2:
                    return False, Violation(c, frozenset(iter_bits(down)), f"vertex {v} has degree > 2 inside its cell")
            k = len(_components(g, vs))
            if k > t:
                return False, Violation(c, frozenset(iter_bits(down)), f"{k} components exceed the bound {t}")
    return True, None


def max_cell_components(h: StructureGraph | Graph) -> int:
    g = h.graph if isinstance(h, StructureGraph) else h
    best = 0
    for _, cells in cells_by_layer(g):
        for vs in cells.values():
            best = max(best, len(_components(g, vs)))
    return best


class NotCircleBounded(DiagnosedFailure):
    def __init__(self, v: Violation):
        super().__init__("circle-bounded", f"color {v.color}: {v.reason}")
        self.violation = v


# -- path/cycle pieces ---------------------------------------------------------------

def _walk(g: Graph, comp: list[int]) -> tuple[int, list[int]]:
    """``(kind, sequence)``: kind 0 = path, 1 = cycle; a canonical traversal."""
    m = mask_of(comp)
    if len(comp) == 1:
        return 0, list(comp)
    deg = {v: (g.adj[v] & m).bit_count() for v in comp}
    ends = [v for v in comp if deg[v] == 1]
    kind = 0 if ends else 1
    start = min(ends) if ends else min(comp)
    seq = [start]
    prev = -1
    cur = start
    while True:
        nxt = [w for w in iter_bits(g.adj[cur] & m) if w != prev and w != start]
        if not nxt or len(seq) == len(comp):
            break
        w = min(nxt)
        seq.append(w)
        prev, cur = cur, w
    return kind, seq


def _piece_generators(kind: int, seq: list[int], n: int) -> list[Perm]:
    k = len(seq)
    gens = []
    if k < 2:
        return gens
    if kind == 0 or k == 2:
        p = list(range(n))
        for i, v in enumerate(seq):
            p[v] = seq[k - 1 - i]
        gens.append(tuple(p))
        return gens
    rot = list(range(n))
    ref = list(range(n))
    for i, v in enumerate(seq):
        rot[v] = seq[(i + 1) % k]
        ref[v] = seq[(-i) % k]
    return [tuple(rot), tuple(ref)]


def _cell_pieces(g: Graph, vs: list[int]) -> list[tuple[tuple[int, int], list[int]]]:
    """Components as ``((kind, length), traversal)`` sorted by signature."""
    pieces = []
    for comp in _components(g, vs):
        kind, seq = _walk(g, comp)
        pieces.append(((kind, len(seq)), seq))
    pieces.sort(key=lambda p: (p[0], p[1][0]))
    return pieces


# -- automorphisms -----------------------------------------------------------------------

@dataclass
class LayerStats:
    color: int
    kernel_order: int
    image_order: int


def _group(gens: list[Perm], n: int) -> PermGroup:
    return schreier_sims(gens, n) if gens else PermGroup.trivial(n)


def aut_circle_bounded(h: StructureGraph | Graph, t: int = DEFAULT_T, check: bool = True,
                       stats: list[LayerStats] | None = None) -> PermGroup:
    """``Aut(H)`` built layer by layer from cell automorphisms and lifted images."""
    g = h.graph if isinstance(h, StructureGraph) else h
    ok, bad = verify_circle_bounded(g, t)
    if not ok:
        raise NotCircleBounded(bad)
    n = g.n
    gens: list[Perm] = []
    group: PermGroup | None = PermGroup.trivial(n)
    below = 0
    for c, cells in cells_by_layer(g):
        layer = 0
        for vs in cells.values():
            layer |= mask_of(vs)
        pieces = {down: _cell_pieces(g, vs) for down, vs in cells.items()}
        sig = {down: tuple(p[0] for p in ps) for down, ps in pieces.items()}
        # image: automorphisms of the lower part that permute the down-sets
        # and respect the isomorphism type of each cell
        image_gens: list[Perm]
        if not gens:
            image_gens = []
        else:
            sig_rank = {s: i for i, s in enumerate(sorted(set(sig.values())))}
            hyp = Hypergraph.make(n, [frozenset(iter_bits(d)) for d in pieces],
                                  [sig_rank[sig[d]] for d in pieces])
            table = hyp.table()
            if all(preserves(s, table) for s in gens):
                image_gens = gens
            else:
                if group is None:
                    group = _group(gens, n)
                image_gens = list(hypergraph_aut_intersect(hyp, group).gens)
        lifts = []
        for s in image_gens:
            p = list(s)
            for down, ps in pieces.items():
                target = 0
                for x in iter_bits(down):
                    target |= 1 << s[x]
                qs = pieces.get(target)
                if qs is None or sig[target] != sig[down]:
                    raise DiagnosedFailure("circle-bounded", "image element does not preserve the cells")
                for (_, a), (_, b) in zip(ps, qs):
                    for x, y in zip(a, b):
                        p[x] = y
            lifts.append(tuple(p))
        kernel = []
        for ps in pieces.values():
            for i, (key, seq) in enumerate(ps):
                kernel.extend(_piece_generators(key[0], seq, n))
                if i + 1 < len(ps) and ps[i + 1][0] == key:
                    swap = list(range(n))
                    for x, y in zip(seq, ps[i + 1][1]):
                        swap[x], swap[y] = y, x
                    kernel.append(tuple(swap))
        new_gens = [s for s in lifts + kernel if s != identity(n)]
        new_group = None
        # edges between different cells of this layer must also be kept
        cross = []
        cell_of = {}
        for down, vs in cells.items():
            for v in vs:
                cell_of[v] = down
        for v in iter_bits(layer):
            for w in iter_bits(g.adj[v] & layer):
                if v < w and cell_of[v] != cell_of[w]:
                    cross.append((v, w))
        if cross and new_gens:
            hyp = Hypergraph.make(n, [frozenset(e) for e in cross])
            table = hyp.table()
            if not all(preserves(s, table) for s in new_gens):
                new_group = hypergraph_aut_intersect(hyp, _group(new_gens, n))
                new_gens = list(new_group.gens)
        if stats is not None:
            img_order = _group(image_gens, n).order() if image_gens else 1
            stats.append(LayerStats(c, _group(kernel, n).order() if kernel else 1, img_order))
        gens = new_gens
        group = new_group
        below |= layer
    result = _group(gens, n)
    if check:
        for s in result.gens:
            if not is_automorphism(g, s):
                raise DiagnosedFailure("circle-bounded", "computed generator is not an automorphism")
    return result


def _with_apex(h: StructureGraph) -> Graph:
    g = h.graph
    n = g.n
    rows = [r | (1 << n) for r in g.adj] + [g.full_mask]
    return Graph.from_rows(rows, [c + 1 for c in g.colors] + [0])


def iso_circle_bounded(h1: StructureGraph, h2: StructureGraph, t: int = DEFAULT_T) -> list[int] | None:
    """A color-preserving isomorphism ``h1 -> h2`` or ``None``.

    An apex of a fresh lowest color joins each side to make it connected;
    then the two sides are isomorphic exactly when the automorphism group of
    the union moves the first apex onto the second.
    """
    if h1.n != h2.n:
        return None
    if sorted(_key_list(h1)) != sorted(_key_list(h2)):
        return None
    u = disjoint_union_structures(h1, h2)
    n = h1.n
    g = u.graph
    m = 2 * n + 2
    rows = [0] * m
    for v in range(2 * n):
        rows[v] = g.adj[v]
    for v in range(n):
        rows[v] |= 1 << (2 * n)
        rows[2 * n] |= 1 << v
        rows[n + v] |= 1 << (2 * n + 1)
        rows[2 * n + 1] |= 1 << (n + v)
    colors = [c + 1 for c in g.colors] + [0, 0]
    big = Graph.from_rows(rows, colors)
    group = aut_circle_bounded(big, t, check=True)
    chain = schreier_sims(group.gens, m, [2 * n])
    lv = chain.levels[0] if chain.levels and chain.levels[0].point == 2 * n else None
    if lv is None or (2 * n + 1) not in lv.trans:
        return None
    elt = lv.trans[2 * n + 1]
    mapping = [elt[v] - n for v in range(n)]
    if any(x < 0 or x >= n for x in mapping):
        return None
    from .graph import is_isomorphism
    if not is_isomorphism(h1.graph.with_colors(colors[:n]), h2.graph.with_colors(colors[n:2 * n]), mapping):
        raise DiagnosedFailure("circle-bounded", "swap element failed verification")
    return mapping


def _key_list(h: StructureGraph) -> list:
    return list(h.keys) if h.keys is not None else list(h.graph.colors)


# -- random instances ------------------------------------------------------------------------

def random_layered(seed: int, layers: int = 3, max_cell: int = 8, t: int = DEFAULT_T) -> Graph:
    """A random circle-bounded graph with up to ``layers`` colors.

    Each layer gets a few cells; a cell is a union of random paths and
    cycles and picks a random down-set among lower vertices. Occasional
    cross-cell edges inside a layer are added when they keep the cell
    degrees at most two.
    """
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    colors: list[int] = []
    lower: list[int] = []
    n = 0
    for c in range(rng.randint(1, layers)):
        layer_vs: list[int] = []
        used_downs: set[frozenset[int]] = set()
        for _ in range(rng.randint(1, 3)):
            down = frozenset(v for v in lower if rng.random() < 0.4)
            if down in used_downs:
                continue
            used_downs.add(down)
            size = rng.randint(1, max_cell)
            cell = list(range(n, n + size))
            n += size
            colors.extend([c] * size)
            pos = 0
            pieces = 0
            while pos < size and pieces < t:
                left = size - pos
                k = rng.randint(1, left) if pieces < t - 1 else left
                comp = cell[pos:pos + k]
                edges.extend((comp[i], comp[i + 1]) for i in range(k - 1))
                if k >= 3 and rng.random() < 0.5:
                    edges.append((comp[0], comp[-1]))
                pos += k
                pieces += 1
            for v in cell:
                edges.extend((d, v) for d in down)
            if layer_vs and rng.random() < 0.3:
                edges.append((rng.choice(layer_vs), rng.choice(cell)))
            layer_vs.extend(cell)
        lower.extend(layer_vs)
    g = Graph.from_edges(n, edges, colors)
    return g
