"""Forbidden patterns, unit interval tests, co-bipartite parts, and PCA cycles."""

from __future__ import annotations

from .graph import (DiagnosedFailure, Graph, complement, components_mask, connected_twin_classes,
                    induced_subgraph, iter_bits, mask_of)


def _g(n: int, edges) -> Graph:
    return Graph.from_edges(n, edges)


def cycle(n: int) -> Graph:
    return _g(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return _g(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return _g(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(k: int) -> Graph:
    return _g(k + 1, [(0, i) for i in range(1, k + 1)])


def _complement_relabeled(g: Graph, order) -> Graph:
    """Complement of ``g`` with vertex ``order[i]`` renamed to ``i``."""
    pos = {v: i for i, v in enumerate(order)}
    c = complement(g)
    return _g(g.n, [(pos[u], pos[v]) for u, v in c.edges()])


# Vertex orders are chosen so that every vertex after the first has an earlier
# neighbor; the induced-subgraph search then stays inside neighborhoods.
CLAW = star(3)
K15 = star(5)
K23 = _g(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
# 3-sun: triangle 0,1,2 with outer vertices 3 (on 0,1), 4 (on 1,2), 5 (on 0,2)
S3 = _g(6, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)])
# T2: center 0 with three paths of length two
T2 = _g(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)])
CO_T2 = _complement_relabeled(T2, [4, 5, 6, 0, 1, 2, 3])
NET = _g(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
THREE_K2 = _g(6, [(0, 1), (2, 3), (4, 5)])
CO_3K2 = _complement_relabeled(THREE_K2, [0, 2, 4, 1, 3, 5])
CO_C6 = _g(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])

CATALOG: dict[str, Graph] = {
    "claw": CLAW,
    "K15": K15,
    "K23": K23,
    "S3": S3,
    "T2": T2,
    "co-T2": CO_T2,
    "net": NET,
    "3K2": THREE_K2,
    "co-3K2": CO_3K2,
    "co-C6": CO_C6,
}


def find_induced(g: Graph, p: Graph) -> tuple[int, ...] | None:
    """Lexicographically first induced embedding of pattern ``p`` into ``g``.

    Pattern vertex ``i`` maps to the ``i``-th entry; embeddings compare as
    tuples, and the search tries images in increasing order.
    """
    k = p.n
    if k == 0:
        return ()
    if k > g.n:
        return None
    pdeg = [p.degree(i) for i in range(k)]
    gdeg = [g.degree(v) for v in range(g.n)]
    full = g.full_mask
    img = [0] * k

    def cand(i: int, used: int) -> int:
        c = full & ~used
        for j in range(i):
            c &= g.adj[img[j]] if p.has_edge(i, j) else ~g.adj[img[j]]
        return c

    def dfs(i: int, used: int) -> bool:
        if i == k:
            return True
        for v in iter_bits(cand(i, used)):
            if gdeg[v] < pdeg[i]:
                continue
            img[i] = v
            if dfs(i + 1, used | (1 << v)):
                return True
        return False

    return tuple(img) if dfs(0, 0) else None


def _search_order(g: Graph, p: Graph) -> list[int]:
    """Pattern vertices ordered so the rarer relation of ``g`` constrains early.

    Every vertex after the first still has an earlier neighbor when ``p`` is
    connected.
    """
    n = g.n
    dense = 2 * g.num_edges() > n * (n - 1) // 2
    order = [max(range(p.n), key=lambda i: (p.degree(i) if not dense else p.n - 1 - p.degree(i), -i))]
    rest = set(range(p.n)) - set(order)
    while rest:
        def score(i):
            e = sum(p.has_edge(i, j) for j in order)
            ne = len(order) - e
            return (e > 0, ne if dense else e, e if dense else ne, -i)
        i = max(rest, key=score)
        order.append(i)
        rest.remove(i)
    return order


def has_induced(g: Graph, p: Graph) -> bool:
    """Whether ``p`` occurs as an induced subgraph of ``g`` (no particular embedding)."""
    order = _search_order(g, p)
    pos = {v: i for i, v in enumerate(order)}
    q = Graph.from_edges(p.n, [(pos[a], pos[b]) for a, b in p.edges()])
    return find_induced(g, q) is not None


def is_chordal(g: Graph) -> bool:
    """Maximum cardinality search followed by a perfect elimination check."""
    n = g.n
    weight = [0] * n
    order: list[int] = []
    numbered = 0
    for _ in range(n):
        v = max((u for u in range(n) if not numbered >> u & 1), key=lambda u: (weight[u], -u))
        order.append(v)
        numbered |= 1 << v
        for w in iter_bits(g.adj[v] & ~numbered):
            weight[w] += 1
    # order reversed is a perfect elimination ordering iff g is chordal
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [w for w in iter_bits(g.adj[v]) if pos[w] < pos[v]]
        if not earlier:
            continue
        parent = max(earlier, key=pos.__getitem__)
        rest = mask_of(w for w in earlier if w != parent)
        if rest & ~g.adj[parent]:
            return False
    return True


def is_unit_interval(g: Graph) -> bool:
    """No induced cycle of length >= 4, no claw, no net, no 3-sun."""
    if not is_chordal(g):
        return False
    return all(find_induced(g, p) is None for p in (CLAW, NET, S3))


def co_bipartite_parts(g: Graph) -> tuple[list[tuple[frozenset[int], frozenset[int]]], frozenset[int]] | None:
    """Complement-bipartition of ``g``: ``(pairs, isolated)`` or ``None``.

    ``pairs`` holds the two color classes of every complement component with
    at least two vertices; ``isolated`` collects the vertices adjacent to all
    others. Every returned set is a clique of ``g``.
    """
    c = complement(g)
    pairs = []
    isolated = 0
    for comp in components_mask(c):
        if comp.bit_count() == 1:
            isolated |= comp
            continue
        root = (comp & -comp).bit_length() - 1
        side = {root: 0}
        stack = [root]
        while stack:
            v = stack.pop()
            for w in iter_bits(c.adj[v]):
                if w not in side:
                    side[w] = 1 - side[v]
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
        a = frozenset(v for v, s in side.items() if s == 0)
        b = frozenset(v for v, s in side.items() if s == 1)
        pairs.append((a, b))
    return pairs, frozenset(iter_bits(isolated))


def is_co_bipartite(g: Graph) -> bool:
    return co_bipartite_parts(g) is not None


# -- canonical cycle ----------------------------------------------------------------

class NoCycle(DiagnosedFailure):
    def __init__(self, detail: str):
        super().__init__("pca-cycle", detail)


def _arc(positions: set[int], q: int) -> tuple[int, int] | None:
    """``(start, end)`` if ``positions`` is a proper cyclic interval of ``0..q-1``."""
    if not positions or len(positions) == q:
        return None
    starts = [p for p in positions if (p - 1) % q not in positions]
    if len(starts) != 1:
        return None
    s = starts[0]
    return s, (s + len(positions) - 1) % q


def check_cycle(nb: list[int], order: list[int]) -> bool:
    """Both cycle conditions for the cyclic vertex sequence ``order``."""
    q = len(order)
    pos = {v: i for i, v in enumerate(order)}
    arcs = {}
    for v in order:
        a = _arc({pos[w] for w in iter_bits(nb[v])}, q)
        if a is None:
            return False
        arcs[v] = a
    for v in order:
        for w in order:
            if v != w and nb[v] & ~nb[w] == 0:
                if arcs[v][0] != arcs[w][0] and arcs[v][1] != arcs[w][1]:
                    return False
    return True


def _prefix_ok(nb: list[int], order: list[int], placed: int) -> bool:
    length = len(order)
    for v in order:
        inside = [j for j, w in enumerate(order) if nb[v] >> w & 1]
        lo, hi = inside[0], inside[-1]
        outside_nbrs = nb[v] & ~placed
        if hi - lo + 1 == len(inside):
            if outside_nbrs and hi != length - 1 and lo != 0:
                return False
            continue
        # wrapped form: [0..a] and [b..L-1]; must then contain every later vertex
        if lo != 0 or hi != length - 1:
            return False
        gaps = [j for j in range(length) if not nb[v] >> order[j] & 1]
        if gaps[-1] - gaps[0] + 1 != len(gaps) or outside_nbrs != _all(nb) & ~placed:
            return False
    return True


def _all(nb: list[int]) -> int:
    return (1 << len(nb)) - 1


def find_cycle_order(q: int, nb: list[int], node_limit: int = 200_000) -> list[int] | None:
    """A cyclic order of ``0..q-1`` meeting both cycle conditions, or ``None``.

    ``nb[v]`` is the closed neighborhood mask of ``v``. Consecutive vertices
    are adjacent except possibly across the closing position, so each start
    vertex is tried with a depth-first walk along edges.
    """
    full = (1 << q) - 1
    nodes = [0]

    def dfs(order: list[int], placed: int) -> list[int] | None:
        nodes[0] += 1
        if nodes[0] > node_limit:
            raise NoCycle("cycle search exceeded its node limit")
        if len(order) == q:
            return list(order) if check_cycle(nb, order) else None
        last = order[-1]
        for w in iter_bits(nb[last] & ~placed & full):
            order.append(w)
            placed2 = placed | (1 << w)
            if _prefix_ok(nb, order, placed2):
                found = dfs(order, placed2)
                if found is not None:
                    return found
            order.pop()
        return None

    for s in range(q):
        found = dfs([s], 1 << s)
        if found is not None:
            return found
    return None


def pca_canonical_cycle(g: Graph) -> tuple[list[frozenset[int]], Graph]:
    """Twin classes of ``g`` and the cycle ``H`` on them.

    ``g`` must be connected, without universal vertices and with a
    non-bipartite complement; then the cycle is unique up to isomorphism, so
    any valid cycle is canonical. ``H`` vertex ``i`` stands for class ``i``
    and classes are listed in cycle order.
    """
    twins = connected_twin_classes(g)
    q = len(twins)
    rep = [min(t) for t in twins]
    where = {}
    for i, t in enumerate(twins):
        for v in t:
            where[v] = i
    nb = [mask_of(where[w] for w in iter_bits(g.closed(r))) for r in rep]
    full = (1 << q) - 1
    if any(m == full for m in nb):
        raise NoCycle("graph has a universal vertex")
    if len(components_mask(Graph.from_rows([m & ~(1 << i) for i, m in enumerate(nb)]))) != 1:
        raise NoCycle("graph is not connected")
    order = find_cycle_order(q, nb)
    if order is None:
        raise NoCycle("no cycle satisfies the neighborhood conditions")
    classes = [twins[v] for v in order]
    h = Graph.from_edges(q, [(i, (i + 1) % q) for i in range(q)] if q > 2 else [(0, 1)] if q == 2 else [])
    return classes, h


def cycle_conditions_hold(g: Graph, classes: list[frozenset[int]]) -> bool:
    """Check both cycle conditions for a class sequence against ``g`` itself."""
    where = {}
    for i, t in enumerate(classes):
        for v in t:
            where[v] = i
    nb = [mask_of(where[w] for w in iter_bits(g.closed(min(t)))) for t in classes]
    return check_cycle(nb, list(range(len(classes))))
