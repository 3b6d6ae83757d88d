"""Color refinement and folklore Weisfeiler-Leman with canonical class names."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, disjoint_union, iter_bits


@dataclass(frozen=True)
class OrderedPartition:
    """A partition of ``0..n-1`` stored as one integer name per element.

    Classes are ordered by name. Names produced by the refinement routines are
    isomorphism-invariant; partitions built with :meth:`from_classes` carry
    whatever names the caller chose.
    """

    names: tuple[int, ...]

    @classmethod
    def unit(cls, n: int) -> "OrderedPartition":
        return cls((0,) * n)

    @classmethod
    def discrete(cls, n: int) -> "OrderedPartition":
        return cls(tuple(range(n)))

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> "OrderedPartition":
        names = [-1] * n
        for i, cls_ in enumerate(classes):
            for v in cls_:
                if names[v] != -1:
                    raise ValueError(f"element {v} occurs in two classes")
                names[v] = i
        if -1 in names:
            raise ValueError(f"element {names.index(-1)} is not covered")
        return cls(tuple(names))

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def classes(self) -> tuple[frozenset[int], ...]:
        buckets: dict[int, list[int]] = {}
        for v, c in enumerate(self.names):
            buckets.setdefault(c, []).append(v)
        return tuple(frozenset(buckets[c]) for c in sorted(buckets))

    @cached_property
    def canonical_names(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.names)))

    @cached_property
    def class_id(self) -> tuple[int, ...]:
        index = {c: i for i, c in enumerate(self.canonical_names)}
        return tuple(index[c] for c in self.names)

    def __len__(self) -> int:
        return len(self.canonical_names)

    def set_partition(self) -> frozenset[frozenset[int]]:
        return frozenset(self.classes)

    def is_discrete(self) -> bool:
        return len(self) == self.n

    def refines(self, other: "OrderedPartition") -> bool:
        seen: dict[int, int] = {}
        for mine, theirs in zip(self.names, other.names):
            if seen.setdefault(mine, theirs) != theirs:
                return False
        return True

    def signature(self) -> tuple[tuple[int, int], ...]:
        """Sorted multiset of ``(name, size)``."""
        return tuple((c, len(x)) for c, x in zip(self.canonical_names, self.classes))


def _rank(values: Sequence) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(values)))}
    return [order[s] for s in values]


def refine_rounds(nbrs: Sequence[Sequence[int]], colors: Sequence[int],
                  history: list | None = None) -> list[int]:
    """Round-based color refinement over neighbor lists.

    Each round renames every vertex by the rank of ``(old name, sorted
    neighbor names)``. Ranks come from sorting, so names never depend on
    vertex indices. When ``history`` is given, the coloring after every
    round (the initial one included) is appended to it.
    """
    cur = _rank(colors)
    if history is not None:
        history.append(list(cur))
    k = len(set(cur))
    while True:
        sigs = [(cur[v], tuple(sorted(cur[w] for w in nbrs[v]))) for v in range(len(cur))]
        nxt = _rank(sigs)
        k2 = len(set(nxt)) if nxt else 0
        if k2 == k:
            return cur
        cur, k = nxt, k2
        if history is not None:
            history.append(list(cur))


def color_refine(g: Graph, init: OrderedPartition | Sequence[int] | None = None) -> OrderedPartition:
    """Coarsest equitable partition refining ``init`` (default: vertex colors)."""
    if init is None:
        start = list(g.colors)
    elif isinstance(init, OrderedPartition):
        start = list(init.names)
    else:
        start = list(init)
    if len(start) != g.n:
        raise ValueError("initial partition does not match the graph")
    nbrs = [list(iter_bits(r)) for r in g.adj]
    return OrderedPartition(tuple(refine_rounds(nbrs, start)))


# -- folklore Weisfeiler-Leman ------------------------------------------------

def _compact(arr: np.ndarray) -> np.ndarray:
    _, inv = np.unique(arr, return_inverse=True)
    return inv.reshape(arr.shape).astype(np.int64)


def _rows_rank(rows: np.ndarray) -> np.ndarray:
    _, inv = np.unique(rows, axis=0, return_inverse=True)
    return inv.reshape(-1).astype(np.int64)


def _fwl2(adj: np.ndarray, col: np.ndarray) -> np.ndarray:
    n = len(col)
    eq = np.eye(n, dtype=np.int64)
    init = np.stack([eq, adj, np.broadcast_to(col[:, None], (n, n)),
                     np.broadcast_to(col[None, :], (n, n))], axis=-1).reshape(n * n, 4)
    c = _rows_rank(init).reshape(n, n)
    k = int(c.max()) + 1
    while True:
        # codes[u, v, w] = (c[u, w], c[w, v])
        codes = c[:, None, :] * k + c.T[None, :, :]
        codes.sort(axis=2)
        rows = np.concatenate([c.reshape(n * n, 1), codes.reshape(n * n, n)], axis=1)
        nc = _rows_rank(rows).reshape(n, n)
        k2 = int(nc.max()) + 1
        if k2 == k:
            return np.diagonal(c).copy()
        c, k = nc, k2


def _fwl3(adj: np.ndarray, col: np.ndarray) -> np.ndarray:
    n = len(col)
    i, j, l = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    feats = [i == j, i == l, j == l, adj[i, j], adj[i, l], adj[j, l], col[i], col[j], col[l]]
    init = np.stack([f.astype(np.int64).reshape(-1) for f in feats], axis=1)
    c = _rows_rank(init).reshape(n, n, n)
    k = int(c.max()) + 1
    while True:
        # codes[u, v, x, w] = (c[w, v, x], c[u, w, x], c[u, v, w])
        a = np.transpose(c, (1, 2, 0))[None, :, :, :]      # c[w, v, x]
        b = np.transpose(c, (0, 2, 1))[:, None, :, :]      # c[u, w, x]
        d = c[:, :, None, :]                                # c[u, v, w]
        codes = (a * k + b) * k + d
        codes = codes.reshape(n ** 3, n)
        codes.sort(axis=1)
        rows = np.concatenate([c.reshape(n ** 3, 1), codes], axis=1)
        nc = _rows_rank(rows).reshape(n, n, n)
        k2 = int(nc.max()) + 1
        if k2 == k:
            idx = np.arange(n)
            return c[idx, idx, idx].copy()
        c, k = nc, k2


# Above this size 3-dimensional refinement costs more than it is worth; the
# cutoff depends on n only, so it cannot break canonicity.
WL3_MAX_N = 40


def wl_k(g: Graph, k: int) -> tuple[int, ...]:
    """Stable ``k``-dimensional (folklore) WL coloring folded to vertices.

    ``k=1`` is color refinement. For ``k=2,3`` tuples start from their ordered
    atomic type and are refined by the sorted multiset over ``w`` of the colors
    of the tuples obtained by substituting ``w`` at each position.
    """
    if k not in (1, 2, 3):
        raise ValueError(f"unsupported WL dimension {k}; expected 1, 2 or 3")
    if g.n == 0:
        return ()
    if k == 1:
        return color_refine(g).names
    adj = np.array([[(g.adj[u] >> v) & 1 for v in range(g.n)] for u in range(g.n)], dtype=np.int64)
    col = np.asarray(_rank(g.colors), dtype=np.int64)
    if k == 3 and g.n <= WL3_MAX_N:
        diag = _fwl3(adj, col)
    else:
        diag = _fwl2(adj, col)
    return tuple(int(x) for x in _compact(diag))


def distinguishes(g: Graph, h: Graph, k: int = 1) -> bool:
    """True iff ``k``-WL on the disjoint union yields a class with unequal counts."""
    if g.n != h.n:
        return True
    names = wl_k(disjoint_union(g, h), k)
    left: dict[int, int] = {}
    for i, c in enumerate(names):
        left[c] = left.get(c, 0) + (1 if i < g.n else -1)
    return any(left.values())


def is_stable(g: Graph, p: OrderedPartition) -> bool:
    """Literal equitability check: equal neighbor counts into every class."""
    masks = [sum(1 << v for v in x) for x in p.classes]
    for x in p.classes:
        xs = sorted(x)
        ref = [(g.adj[xs[0]] & m).bit_count() for m in masks]
        for v in xs[1:]:
            if [(g.adj[v] & m).bit_count() for m in masks] != ref:
                return False
    return True
