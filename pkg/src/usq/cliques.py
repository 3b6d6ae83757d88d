"""Maximal cliques, clique graphs, clique-stable refinement, quotients and lifting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import DiagnosedFailure, Graph, is_automorphism, iter_bits, mask_of
from .refinement import OrderedPartition, refine_rounds

CliqueSet = list[frozenset[int]]


def maximal_cliques(g: Graph) -> CliqueSet:
    """All maximal cliques of a unit square graph.

    In such a graph every maximal clique is the intersection of at most four
    closed neighborhoods of its own members, so the candidates are the
    intersections ``N[v1] & ... & N[vj]`` (``j <= 4``) with each ``v`` drawn
    from the running intersection. A candidate that is a clique is already
    maximal: anything adjacent to all of it lies in every ``N[vi]``.
    """
    found: set[int] = set()
    level = {g.closed(v) for v in range(g.n)}
    for _ in range(4):
        nxt: set[int] = set()
        for m in level:
            if g.is_clique(m):
                found.add(m)
                continue
            for w in iter_bits(m):
                nxt.add(m & g.closed(w))
        level = nxt
    out = []
    for m in found:
        m = _extend(g, m)
        if _is_maximal(g, m):
            out.append(m)
    return sorted({frozenset(iter_bits(m)) for m in out}, key=lambda c: sorted(c))


def _extend(g: Graph, m: int) -> int:
    """Greedy extension to a maximal clique, by color then index."""
    common = g.full_mask
    for v in iter_bits(m):
        common &= g.closed(v)
    for v in sorted(iter_bits(common & ~m), key=lambda u: (g.colors[u], u)):
        if common >> v & 1:
            m |= 1 << v
            common &= g.closed(v)
    return m


def _is_maximal(g: Graph, m: int) -> bool:
    if not m or not g.is_clique(m):
        return False
    common = g.full_mask
    for v in iter_bits(m):
        common &= g.closed(v)
    return common == m


# -- clique graphs ---------------------------------------------------------------------

# Clique vertices get color 0 and original vertices color c + 1, so the two
# parts never share a color even when the input uses color 0.
CLIQUE_COLOR = 0


def gm_from_cliques(g: Graph, cliques: Sequence[frozenset[int]]) -> Graph:
    """``G_M`` for a given list of maximal cliques; clique ``i`` is vertex ``n + i``."""
    n, k = g.n, len(cliques)
    rows = [0] * (n + k)
    vpart = (1 << n) - 1
    cpart = ((1 << k) - 1) << n
    for v in range(n):
        rows[v] = vpart & ~(1 << v)
    for i, c in enumerate(cliques):
        rows[n + i] = cpart & ~(1 << (n + i))
        for v in c:
            rows[n + i] |= 1 << v
            rows[v] |= 1 << (n + i)
    colors = [c + 1 for c in g.colors] + [CLIQUE_COLOR] * k
    return Graph.from_rows(rows, colors)


def build_gm(g: Graph) -> Graph:
    return gm_from_cliques(g, maximal_cliques(g))


def gm_star_from_cliques(g: Graph, cliques: Sequence[frozenset[int]]) -> Graph:
    n, k = g.n, len(cliques)
    rows = list(g.adj) + [0] * k
    for i, c in enumerate(cliques):
        for v in c:
            rows[n + i] |= 1 << v
            rows[v] |= 1 << (n + i)
    colors = [c + 1 for c in g.colors] + [CLIQUE_COLOR] * k
    return Graph.from_rows(rows, colors)


def build_gm_star(g: Graph) -> Graph:
    """Incidence edges plus the original edges."""
    return gm_star_from_cliques(g, maximal_cliques(g))


# -- clique-stable refinement --------------------------------------------------------------

def is_clique_partition(g: Graph, p: OrderedPartition) -> bool:
    return all(g.is_clique(mask_of(x)) for x in p.classes)


@dataclass(frozen=True)
class CliqueStable:
    partition: OrderedPartition          # vertex side
    clique_partition: OrderedPartition   # clique side, indexed like ``cliques``
    cliques: tuple[frozenset[int], ...]
    history: tuple[tuple[int, ...], ...]  # one coloring of V(G) + M(G) per round


def clique_stable_refine(g: Graph, p: OrderedPartition, cliques: Sequence[frozenset[int]] | None = None) -> CliqueStable:
    """Color refinement of ``G_M*`` from ``P`` plus one class holding all cliques."""
    if p.n != g.n:
        raise ValueError("partition does not match the graph")
    for x in p.classes:
        if not g.is_clique(mask_of(x)):
            raise ValueError(f"class {sorted(x)} is not a clique")
    cl = list(cliques) if cliques is not None else maximal_cliques(g)
    star = gm_star_from_cliques(g, cl)
    ids = p.class_id
    init = [ids[v] + 1 for v in range(g.n)] + [0] * len(cl)
    nbrs = [list(iter_bits(r)) for r in star.adj]
    history: list = []
    final = refine_rounds(nbrs, init, history)
    vert = OrderedPartition(tuple(final[: g.n]))
    cliq = OrderedPartition(tuple(final[g.n:]))
    return CliqueStable(vert, cliq, tuple(cl), tuple(tuple(h) for h in history))


def is_clique_stable(g: Graph, p: OrderedPartition) -> bool:
    return clique_stable_refine(g, p).partition.set_partition() == p.set_partition()


# -- quotient ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientGraph:
    """Complete graph on the classes with size colors and crossing-edge counts."""

    classes: tuple[frozenset[int], ...]
    vertex_color: tuple[int, ...]
    gcolor: tuple[int, ...]              # common input color of each class, -1 if mixed
    edge_color: dict[tuple[int, int], int]

    def count(self, a: int, b: int) -> int:
        return self.edge_color[(a, b) if a < b else (b, a)]

    def is_automorphism(self, delta: Sequence[int]) -> bool:
        m = len(self.classes)
        if sorted(delta) != list(range(m)):
            return False
        if any(self.vertex_color[i] != self.vertex_color[delta[i]] or self.gcolor[i] != self.gcolor[delta[i]]
               for i in range(m)):
            return False
        return all(self.count(delta[a], delta[b]) == c for (a, b), c in self.edge_color.items())


def quotient_graph(g: Graph, p: OrderedPartition) -> QuotientGraph:
    classes = p.classes
    masks = [mask_of(x) for x in classes]
    sizes = tuple(len(x) for x in classes)
    gcol = []
    for x in classes:
        cols = {g.colors[v] for v in x}
        gcol.append(cols.pop() if len(cols) == 1 else -1)
    edges = {}
    for a in range(len(classes)):
        for b in range(a + 1, len(classes)):
            edges[(a, b)] = sum((g.adj[v] & masks[b]).bit_count() for v in classes[a])
    return QuotientGraph(classes, sizes, tuple(gcol), edges)


# -- staircase orders ---------------------------------------------------------------------------

def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def staircase_edge(i: int, j: int, s: int, t: int, k: int) -> bool:
    """Whether ``x_i y_j`` is an edge in the staircase pattern (1-based)."""
    return _ceil_div(i * t, k) == _ceil_div(j * s, k)


class StaircaseSearchLimit(DiagnosedFailure):
    def __init__(self):
        super().__init__("staircase", "order search exceeded its node limit")


def verify_staircase(g: Graph, p: OrderedPartition, node_limit: int = 200_000
                     ) -> tuple[bool, list[list[int]] | None]:
    """Search per-class orders under which every partially joined pair is a staircase.

    Class pairs that are completely joined or not joined at all impose nothing.
    Returns ``(True, orders)`` with ``orders[i]`` listing class ``i`` of
    ``p.classes`` in witness order, or ``(False, None)``.
    """
    classes = [sorted(x) for x in p.classes]
    m = len(classes)
    masks = [mask_of(x) for x in classes]
    partial: list[list[tuple[int, int]]] = [[] for _ in range(m)]   # (other class, k)
    for a in range(m):
        for b in range(a + 1, m):
            k = sum((g.adj[v] & masks[b]).bit_count() for v in classes[a])
            s, t = len(classes[a]), len(classes[b])
            if 0 < k < s * t:
                if k % s or k % t:
                    return False, None
                partial[a].append((b, k))
                partial[b].append((a, k))
    # process classes component by component along partial pairs, BFS order
    seq: list[int] = []
    seen = [False] * m
    for root in range(m):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            a = queue.pop(0)
            seq.append(a)
            for b, _ in sorted(partial[a]):
                if not seen[b]:
                    seen[b] = True
                    queue.append(b)
    orders: list[list[int] | None] = [None] * m
    nodes = [0]

    def place(idx: int) -> bool:
        if idx == len(seq):
            return True
        a = seq[idx]
        if len(classes[a]) == 1:
            orders[a] = list(classes[a])
            if _consistent(a, orders[a]):
                return place(idx + 1)
            orders[a] = None
            return False
        return fill(idx, a, [], set())

    def _consistent(a: int, order: list[int]) -> bool:
        s = len(classes[a])
        for b, k in partial[a]:
            ob = orders[b]
            if ob is None:
                continue
            t = len(ob)
            for i, x in enumerate(order, 1):
                for j, y in enumerate(ob, 1):
                    if g.has_edge(x, y) != staircase_edge(i, j, s, t, k):
                        return False
        return True

    def fill(idx: int, a: int, prefix: list[int], used: set[int]) -> bool:
        nodes[0] += 1
        if nodes[0] > node_limit:
            raise StaircaseSearchLimit()
        s = len(classes[a])
        if len(prefix) == s:
            orders[a] = list(prefix)
            if place(idx + 1):
                return True
            orders[a] = None
            return False
        i = len(prefix) + 1
        for x in classes[a]:
            if x in used or not _fits(a, x, i, prefix):
                continue
            prefix.append(x)
            used.add(x)
            if fill(idx, a, prefix, used):
                return True
            prefix.pop()
            used.discard(x)
        return False

    def _fits(a: int, x: int, i: int, prefix: list[int]) -> bool:
        s = len(classes[a])
        for b, k in partial[a]:
            t = len(classes[b])
            trace = g.adj[x] & masks[b]
            if trace.bit_count() != k // s:
                return False
            ob = orders[b]
            if ob is not None:
                want = mask_of(y for j, y in enumerate(ob, 1) if staircase_edge(i, j, s, t, k))
                if trace != want:
                    return False
                continue
            # unordered neighbor: blocks of k/t consecutive members share a trace
            per_block = k // t
            if (i - 1) % per_block:
                if trace != g.adj[prefix[-1]] & masks[b]:
                    return False
            elif any(g.adj[y] & masks[b] == trace for y in prefix):
                return False
        return True

    try:
        ok = place(0)
    except RecursionError:
        raise StaircaseSearchLimit() from None
    if not ok:
        return False, None
    return True, [list(o) for o in orders]


def check_staircase_orders(g: Graph, p: OrderedPartition, orders: Sequence[Sequence[int]]) -> bool:
    """Evaluate the staircase condition literally for given orders."""
    classes = p.classes
    for a in range(len(classes)):
        if sorted(orders[a]) != sorted(classes[a]):
            return False
        for b in range(a + 1, len(classes)):
            s, t = len(orders[a]), len(orders[b])
            k = sum(1 for x in orders[a] for y in orders[b] if g.has_edge(x, y))
            if k in (0, s * t):
                continue
            for i, x in enumerate(orders[a], 1):
                for j, y in enumerate(orders[b], 1):
                    if g.has_edge(x, y) != staircase_edge(i, j, s, t, k):
                        return False
    return True


# -- lifting -------------------------------------------------------------------------------------

class LiftFailure(DiagnosedFailure):
    def __init__(self, detail: str):
        super().__init__("lift", detail)


def lift_automorphism(g: Graph, p: OrderedPartition, delta: Sequence[int],
                      orders: Sequence[Sequence[int]] | None = None) -> tuple[int, ...]:
    """An automorphism of ``g`` that moves class ``i`` onto class ``delta[i]``.

    The ``i``-th vertex of each class in witness order goes to the ``i``-th
    vertex of the image class. If that map is not an automorphism, a
    backtracking search over the class-colored graph takes over. The result
    is always verified.
    """
    classes = p.classes
    if orders is not None:
        gamma = [0] * g.n
        for a, b in enumerate(delta):
            if len(orders[a]) != len(orders[b]):
                raise LiftFailure("class sizes differ under the quotient map")
            for x, y in zip(orders[a], orders[b]):
                gamma[x] = y
        if is_automorphism(g, gamma):
            return tuple(gamma)
    from .oracle import BudgetExceeded, SearchBudget, brute_iso

    where = p.class_id
    src = g.with_colors([where[v] for v in range(g.n)])
    inv = [0] * len(delta)
    for a, b in enumerate(delta):
        inv[b] = a
    dst = g.with_colors([inv[where[v]] for v in range(g.n)])
    try:
        found = brute_iso(src, dst, SearchBudget(nodes=200_000, seconds=60.0))
    except BudgetExceeded as exc:
        raise LiftFailure(f"fallback search gave up: {exc}") from None
    if found is None or not is_automorphism(g, found):
        raise LiftFailure("quotient automorphism does not lift")
    return tuple(found)
