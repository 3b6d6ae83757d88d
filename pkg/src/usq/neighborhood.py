"""Canonical clique-partitions for neighborhoods and clique neighborhoods.

Structure graphs here use tuple keys as colors. Keys are compared
lexicographically, which fixes the layer order of the structure graph.

* neighborhood classes: ``(0, wl color, tag)``
* clique neighborhoods: ``(1, 0)`` nuc-init, ``(1, 1, *key)`` nuc,
  ``(1, 2)`` cc-par, ``(1, 3)`` clique-cc, ``(1, 4, tag)`` fin-par

``tag`` is 0 for ordinary classes and 1 for a class of universal vertices
split off before the cycle search.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .circle_bounded import StructureGraph, verify_circle_bounded
from .graph import (DiagnosedFailure, Graph, components_mask, connected_twin_classes, induced_subgraph,
                    iter_bits, mask_of)
from .pca import NoCycle, co_bipartite_parts, pca_canonical_cycle
from .refinement import wl_k

NUC_INIT = (1, 0)
NUC = (1, 1)
CC_PAR = (1, 2)
CLIQUE_CC = (1, 3)
FIN_PAR = (1, 4)


class NotNeighborhood(DiagnosedFailure):
    def __init__(self, detail: str):
        super().__init__("neighborhood-partition", detail)


@dataclass
class PartitionWithStructure:
    """Clique classes (as vertex sets of the input) and a structure graph.

    ``anchor[i]`` is the structure vertex standing for ``classes[i]``.
    """

    classes: list[frozenset[int]]
    keys: list[tuple]
    edges: list[tuple[int, int]]
    anchor: list[int] = field(default_factory=list)

    @property
    def structure(self) -> StructureGraph:
        return StructureGraph.from_keys(len(self.keys), self.edges, self.keys)

    def add(self, key: tuple) -> int:
        self.keys.append(key)
        return len(self.keys) - 1


def _decompose(g: Graph) -> tuple[list[frozenset[int]], list[tuple[int, int]], list[int]]:
    """Split ``g`` into clique classes joined by a max-degree-two graph.

    Cliques stay whole; co-bipartite graphs split along the complement
    bipartition (sides linked when a non-edge runs between them); the rest
    goes through the canonical cycle per component.
    """
    if g.n == 0:
        return [], [], []
    if g.is_clique(g.full_mask):
        return [frozenset(range(g.n))], [], [0]
    parts = co_bipartite_parts(g)
    if parts is not None:
        return _cobip_classes(g, parts)
    classes: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []
    tags: list[int] = []
    for comp in components_mask(g):
        sub, back = induced_subgraph(g, iter_bits(comp))
        if sub.is_clique(sub.full_mask):
            cl, ed, tg = [frozenset(range(sub.n))], [], [0]
        elif co_bipartite_parts(sub) is not None:
            cl, ed, tg = _cobip_classes(sub, co_bipartite_parts(sub))
        else:
            cl, ed, tg = _cycle_classes(sub)
        off = len(classes)
        classes.extend(frozenset(back[v] for v in c) for c in cl)
        edges.extend((a + off, b + off) for a, b in ed)
        tags.extend(tg)
    return classes, edges, tags


def _cobip_classes(g: Graph, parts) -> tuple[list[frozenset[int]], list[tuple[int, int]], list[int]]:
    pairs, isolated = parts
    classes, edges = [], []
    for a, b in sorted(pairs, key=lambda p: min(p[0] | p[1])):
        classes.extend([a, b])
        edges.append((len(classes) - 2, len(classes) - 1))
    if isolated:
        classes.append(isolated)
    return classes, edges, [0] * len(classes)


def _cycle_classes(g: Graph) -> tuple[list[frozenset[int]], list[tuple[int, int]], list[int]]:
    full = g.full_mask
    universal = mask_of(v for v in range(g.n) if g.closed(v) == full)
    if universal:
        # universal vertices form one twin class; set it aside, recurse on the rest
        rest, back = induced_subgraph(g, iter_bits(full & ~universal))
        cl, ed, tg = _decompose(rest)
        classes = [frozenset(back[v] for v in c) for c in cl] + [frozenset(iter_bits(universal))]
        return classes, ed, tg + [1]
    try:
        cyc, h = pca_canonical_cycle(g)
    except NoCycle as exc:
        raise NotNeighborhood(f"class is neither co-bipartite nor proper circular arc ({exc.detail})") from None
    return list(cyc), h.edges(), [0] * len(cyc)


def _check_cliques(g: Graph, classes) -> None:
    for c in classes:
        if not g.is_clique(mask_of(c)):
            raise NotNeighborhood(f"class {sorted(c)} is not a clique")


def partition_neighborhood(g: Graph, k: int = 3, bound: int = 4) -> PartitionWithStructure:
    """Clique-partition of a neighborhood graph with a ``bound``-circle-bounded structure.

    Every class of the ``k``-WL coloring is split on its own; the structure
    graph has one vertex per class, keyed by the WL color of its class.
    """
    out = PartitionWithStructure([], [], [])
    if g.n == 0:
        return out
    wl = wl_k(g, k)
    by_color: dict[int, list[int]] = {}
    for v, c in enumerate(wl):
        by_color.setdefault(c, []).append(v)
    for c in sorted(by_color):
        sub, back = induced_subgraph(g, by_color[c])
        classes, edges, tags = _decompose(sub)
        base = len(out.keys)
        for cl, tag in zip(classes, tags):
            out.anchor.append(out.add((0, c, tag)))
            out.classes.append(frozenset(back[v] for v in cl))
        out.edges.extend((a + base, b + base) for a, b in edges)
    _check_cliques(g, out.classes)
    ok, bad = verify_circle_bounded(out.structure, bound)
    if not ok:
        raise NotNeighborhood(f"structure is not {bound}-circle-bounded: {bad.reason}")
    return out


# -- clique neighborhoods -------------------------------------------------------------------

def _traces(g: Graph, x: frozenset[int]) -> dict[int, int]:
    xm = mask_of(x)
    tr = {}
    for v in range(g.n):
        if v in x:
            continue
        t = g.closed(v) & xm
        if not t:
            raise ValueError(f"vertex {v} has no neighbor in the clique")
        tr[v] = t
    return tr


def snh_partition(g: Graph, x) -> list[frozenset[int]]:
    """Vertices outside ``x`` grouped by their exact neighborhood inside ``x``."""
    x = frozenset(x)
    if not g.is_clique(mask_of(x)):
        raise ValueError("x is not a clique")
    groups: dict[int, list[int]] = {}
    for v, t in _traces(g, x).items():
        groups.setdefault(t, []).append(v)
    return [frozenset(groups[t]) for t in sorted(groups, key=lambda t: (t.bit_count(), t))]


def _is_union_of_cliques(g: Graph, vs: frozenset[int]) -> bool:
    m = mask_of(vs)
    return all(g.is_clique(c) for c in components_mask(g, m))


def build_g_clique(g: Graph, x, snh: list[frozenset[int]] | None = None
                   ) -> tuple[list[frozenset[int]], Graph]:
    """Pieces (cliques inside clique-union classes) and their complete-join graph."""
    x = frozenset(x)
    snh = snh if snh is not None else snh_partition(g, x)
    pieces: list[frozenset[int]] = []
    for cl in snh:
        if _is_union_of_cliques(g, cl):
            pieces.extend(frozenset(iter_bits(c)) for c in components_mask(g, mask_of(cl)))
    pieces.sort(key=min)
    masks = [mask_of(p) for p in pieces]
    edges = []
    for a in range(len(pieces)):
        for b in range(a + 1, len(pieces)):
            if all(g.adj[v] & masks[b] == masks[b] for v in pieces[a]):
                edges.append((a, b))
    return pieces, Graph.from_edges(len(pieces), edges)


def partition_clique_neighborhood(g: Graph, x, k: int = 3, bound: int = 8) -> PartitionWithStructure:
    """Clique-partition of ``V - x`` for a simple clique neighborhood graph."""
    x = frozenset(x)
    xm = mask_of(x)
    if not x or not g.is_clique(xm):
        raise ValueError("x must be a non-empty clique")
    traces = _traces(g, x)
    sizes = {t.bit_count() for t in traces.values()}
    if len(sizes) > 1:
        raise ValueError("trace sizes inside the clique are not uniform")
    rest = sorted(traces)
    out = PartitionWithStructure([], [], [])
    if not rest:
        return out
    if sizes == {len(x)}:
        sub, back = induced_subgraph(g, rest)
        inner = partition_neighborhood(sub, k)
        inner.classes = [frozenset(back[v] for v in c) for c in inner.classes]
        return inner
    snh = snh_partition(g, x)
    nucleus = [cl for cl in snh if not _is_union_of_cliques(g, cl)]
    for y in nucleus:
        hy = out.add(NUC_INIT)
        sub, back = induced_subgraph(g, sorted(y))
        inner = partition_neighborhood(sub, k)
        base = len(out.keys)
        for key in inner.keys:
            out.add(NUC + key)
        out.edges.extend((base + i, hy) for i in range(len(inner.keys)))
        out.edges.extend((base + a, base + b) for a, b in inner.edges)
        for cl, a in zip(inner.classes, inner.anchor):
            out.classes.append(frozenset(back[v] for v in cl))
            out.anchor.append(base + a)
    bmask = mask_of(v for y in nucleus for v in y)
    free = mask_of(rest) & ~bmask
    pieces, gc = build_g_clique(g, x, snh)
    piece_of = {}
    for i, p in enumerate(pieces):
        for v in p:
            piece_of[v] = i
    for comp in components_mask(g, free):
        hy = out.add(CC_PAR)
        idx = sorted({piece_of[v] for v in iter_bits(comp)})
        sub, back = induced_subgraph(gc, idx)
        for cc in components_mask(sub):
            hc = out.add(CLIQUE_CC)
            out.edges.append((hc, hy))
            csub, cback = induced_subgraph(sub, iter_bits(cc))
            classes, edges, tags = _decompose(csub)
            base = len(out.keys)
            for cl, tag in zip(classes, tags):
                hz = out.add(FIN_PAR + (tag,))
                out.edges.append((hz, hc))
                members = frozenset(v for i in cl for v in pieces[back[cback[i]]])
                out.classes.append(members)
                out.anchor.append(hz)
            out.edges.extend((base + a, base + b) for a, b in edges)
    _check_cliques(g, out.classes)
    covered = sorted(v for c in out.classes for v in c)
    if covered != rest:
        raise NotNeighborhood("classes do not cover the clique neighborhood")
    ok, bad = verify_circle_bounded(out.structure, bound)
    if not ok:
        raise NotNeighborhood(f"structure is not {bound}-circle-bounded: {bad.reason}")
    return out
