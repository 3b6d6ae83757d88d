"""Brute-force reference implementations.

Everything here favors obviousness over speed. The only pruning used is color
refinement, whose classes are invariant under every isomorphism.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, disjoint_union, is_isomorphism, iter_bits, mask_of
from .refinement import OrderedPartition, refine_rounds


class BudgetExceeded(RuntimeError):
    """The search ran out of nodes or time before reaching an answer."""


@dataclass
class SearchBudget:
    nodes: int = 2_000_000
    seconds: float = 120.0
    _used: int = field(default=0, repr=False)
    _start: float | None = field(default=None, repr=False)

    def tick(self) -> None:
        if self._start is None:
            self._start = time.monotonic()
        self._used += 1
        if self._used > self.nodes:
            raise BudgetExceeded(f"node budget {self.nodes} exhausted")
        if self._used % 256 == 0 and time.monotonic() - self._start > self.seconds:
            raise BudgetExceeded(f"time budget {self.seconds}s exhausted")


def _balanced(colors: Sequence[int], n: int) -> bool:
    count: dict[int, int] = {}
    for i, c in enumerate(colors):
        count[c] = count.get(c, 0) + (1 if i < n else -1)
    return not any(count.values())


def brute_iso(g: Graph, h: Graph, budget: SearchBudget | None = None) -> list[int] | None:
    """A color-preserving isomorphism ``g -> h`` or ``None``.

    Individualize-and-refine on the disjoint union: individualize one vertex on
    each side with the same fresh color, refine jointly, and prune any branch
    whose classes hold unequal counts from the two sides.
    """
    budget = budget or SearchBudget()
    if g.n != h.n:
        return None
    n = g.n
    if n == 0:
        return []
    u = disjoint_union(g, h)
    nbrs = [list(iter_bits(r)) for r in u.adj]

    def search(colors: list[int]) -> list[int] | None:
        budget.tick()
        colors = refine_rounds(nbrs, colors)
        if not _balanced(colors, n):
            return None
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = min((c for c, vs in cells.items() if len(vs) > 2),
                     key=lambda c: (len(cells[c]), c), default=None)
        if target is None:
            mapping = [0] * n
            for vs in cells.values():
                mapping[vs[0]] = vs[1] - n
            return mapping if is_isomorphism(g, h, mapping) else None
        left = [v for v in cells[target] if v < n]
        right = [v for v in cells[target] if v >= n]
        fresh = max(colors) + 1
        v = left[0]
        for w in right:
            nxt = list(colors)
            nxt[v] = nxt[w] = fresh
            found = search(nxt)
            if found is not None:
                return found
        return None

    return search(list(u.colors))


def _individualize(g: Graph, v: int) -> Graph:
    return g.recolor(v, max(g.colors, default=0) + 1)


def brute_aut_order(g: Graph, budget: SearchBudget | None = None) -> int:
    """``|Aut(g)|`` via the orbit-stabilizer chain with :func:`brute_iso` orbits."""
    budget = budget or SearchBudget()
    order = 1
    cur = g
    while True:
        part = refine_rounds([list(iter_bits(r)) for r in cur.adj], cur.colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(part):
            cells.setdefault(c, []).append(v)
        big = [vs for vs in cells.values() if len(vs) > 1]
        if not big:
            return order
        cell = min(big, key=lambda vs: (len(vs), vs[0]))
        cur = cur.with_colors(part)
        v = cell[0]
        pinned = _individualize(cur, v)
        orbit = 1
        for w in cell[1:]:
            if brute_iso(pinned, _individualize(cur, w), budget) is not None:
                orbit += 1
        order *= orbit
        cur = pinned


def naive_stable_partition(g: Graph, init: OrderedPartition | Sequence[int] | None = None) -> OrderedPartition:
    """Split one class at a time by neighbor counts until nothing splits."""
    names = list(g.colors if init is None else (init.names if isinstance(init, OrderedPartition) else init))
    classes: list[list[int]] = []
    index: dict[int, int] = {}
    for v, c in enumerate(names):
        if c not in index:
            index[c] = len(classes)
            classes.append([])
        classes[index[c]].append(v)
    changed = True
    while changed:
        changed = False
        for i, x in enumerate(classes):
            for y in classes:
                ym = mask_of(y)
                groups: dict[int, list[int]] = {}
                for v in x:
                    groups.setdefault((g.adj[v] & ym).bit_count(), []).append(v)
                if len(groups) > 1:
                    parts = [groups[k] for k in sorted(groups)]
                    classes[i] = parts[0]
                    classes.extend(parts[1:])
                    changed = True
                    break
            if changed:
                break
    return OrderedPartition.from_classes(g.n, classes)


def brute_unit_interval(g: Graph) -> bool:
    """Search for an integer 1-D realization, unit length ``2n`` (grid ``1/(2n)``).

    Orders are enumerated with the umbrella property as a necessary-condition
    filter; each surviving order is solved as a system of difference
    constraints, and a solution is checked against the graph before accepting.
    """
    n = g.n
    if n > 8:
        raise ValueError("brute_unit_interval supports n <= 8")
    if n <= 2:
        return True
    unit = 2 * n

    def solve(order: Sequence[int]) -> list[int] | None:
        # constraints x_b - x_a <= w as edges a -> b with weight w
        cons = []
        for i, j in itertools.combinations(range(n), 2):
            a, b = order[i], order[j]
            cons.append((b, a, 0))                              # x_a - x_b <= 0
            if g.has_edge(a, b):
                cons.append((a, b, unit))                       # x_b - x_a <= unit
            else:
                cons.append((b, a, -(unit + 1)))                # x_a - x_b <= -(unit+1)
        dist = [0] * n
        for _ in range(n):
            updated = False
            for a, b, w in cons:
                if dist[a] + w < dist[b]:
                    dist[b] = dist[a] + w
                    updated = True
            if not updated:
                break
        else:
            return None
        pos = [d - min(dist) for d in dist]
        for a, b in itertools.combinations(range(n), 2):
            if (abs(pos[a] - pos[b]) <= unit) != g.has_edge(a, b):
                return None
        return pos

    def extend(order: list[int], rest: set[int]) -> bool:
        if not rest:
            return solve(order) is not None
        for v in sorted(rest):
            # umbrella: for u < w < v with uv an edge, uw and wv must be edges
            ok = True
            for i, u in enumerate(order):
                if g.has_edge(u, v):
                    if any(not (g.has_edge(u, w) and g.has_edge(w, v)) for w in order[i + 1:]):
                        ok = False
                        break
            if ok and extend(order + [v], rest - {v}):
                return True
        return False

    return extend([], set(range(n)))


def bron_kerbosch(g: Graph) -> list[frozenset[int]]:
    """All maximal cliques (pivoting Bron-Kerbosch over bitsets)."""
    out: list[frozenset[int]] = []

    def rec(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(frozenset(iter_bits(r)))
            return
        pivot = max(iter_bits(p | x), key=lambda u: (g.adj[u] & p).bit_count())
        for v in iter_bits(p & ~g.adj[pivot]):
            rec(r | (1 << v), p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        rec(0, g.full_mask, 0)
    return out


def brute_aut_elements(g: Graph, limit: int = 50_000) -> list[tuple[int, ...]]:
    """Every automorphism of a small graph by plain permutation filtering."""
    if math.factorial(g.n) > limit:
        raise ValueError("graph too large for exhaustive enumeration")
    return [p for p in itertools.permutations(range(g.n)) if is_isomorphism(g, g, p)]
