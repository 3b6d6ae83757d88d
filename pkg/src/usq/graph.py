"""Colored undirected graphs over ``0..n-1`` with bitset adjacency rows.

Adjacency row ``adj[v]`` is a Python ``int`` whose bit ``w`` is set iff ``vw``
is an edge. Graph values are immutable; every operation returns a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class DiagnosedFailure(RuntimeError):
    """A postcondition that holds for unit square graphs was violated.

    ``check`` names the failed postcondition so callers (and the CLI) can
    report which guarantee broke.
    """

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}" if detail else check)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n or len(self.colors) != self.n:
            raise ValueError("adjacency/color length does not match n")
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            if row >> self.n:
                raise ValueError(f"neighbor out of range at {v}")
            for w in iter_bits(row):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"asymmetric edge {v}-{w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] = (),
                   colors: Sequence[int] | None = None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        cols = tuple(colors) if colors is not None else (0,) * n
        return cls(n, tuple(rows), cols)

    @classmethod
    def from_rows(cls, rows: Sequence[int], colors: Sequence[int] | None = None) -> "Graph":
        cols = tuple(colors) if colors is not None else (0,) * len(rows)
        return cls(len(rows), tuple(rows), cols)

    # -- queries ---------------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def closed(self, v: int) -> int:
        """Closed neighborhood ``N[v]`` as a mask."""
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def is_clique(self, mask: int) -> bool:
        for v in iter_bits(mask):
            if (mask & ~self.closed(v)):
                return False
        return True

    def is_independent(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in iter_bits(mask))

    # -- constructions ---------------------------------------------------

    def with_colors(self, colors: Sequence[int]) -> "Graph":
        return Graph(self.n, self.adj, tuple(colors))

    def recolor(self, v: int, color: int) -> "Graph":
        cols = list(self.colors)
        cols[v] = color
        return Graph(self.n, self.adj, tuple(cols))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        cols = [0] * self.n
        for v in range(self.n):
            rows[perm[v]] = mask_of(perm[w] for w in iter_bits(self.adj[v]))
            cols[perm[v]] = self.colors[v]
        return Graph(self.n, tuple(rows), tuple(cols))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices`` plus the list mapping new index -> old vertex."""
    old = sorted(set(vertices))
    for v in old:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(old)}
    sel = mask_of(old)
    rows = [mask_of(pos[w] for w in iter_bits(g.adj[v] & sel)) for v in old]
    return Graph(len(old), tuple(rows), tuple(g.colors[v] for v in old)), old


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple(full & ~g.closed(v) for v in range(g.n)), g.colors)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    rows = list(g.adj) + [r << g.n for r in h.adj]
    return Graph(g.n + h.n, tuple(rows), g.colors + h.colors)


def components_mask(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as masks, by smallest vertex."""
    rest = g.full_mask if within is None else within
    out = []
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components ordered by sorted color multiset, then size.

    The order is only isomorphism-invariant up to ties; ties keep smallest-vertex
    order, which is canonical once vertex colors are canonical.
    """
    comps = [frozenset(iter_bits(m)) for m in components_mask(g)]
    comps.sort(key=lambda c: (sorted(g.colors[v] for v in c), len(c)))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components_mask(g)) == 1


def distance_levels(g: Graph, root: int) -> list[frozenset[int]]:
    """BFS layers from ``root``; unreachable vertices are dropped."""
    if not 0 <= root < g.n:
        raise IndexError(f"vertex {root} out of range")
    dist = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in iter_bits(g.adj[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    levels: list[set[int]] = [set() for _ in range(max(dist.values()) + 1)]
    for v, d in dist.items():
        levels[d].add(v)
    return [frozenset(s) for s in levels]


def connected_twin_classes(g: Graph) -> list[frozenset[int]]:
    """Classes of ``N[v] = N[w]`` restricted to equal colors; each is a clique."""
    groups: dict[tuple[int, int], list[int]] = {}
    for v in range(g.n):
        groups.setdefault((g.closed(v), g.colors[v]), []).append(v)
    classes = [frozenset(vs) for vs in groups.values()]
    classes.sort(key=min)
    return classes


def is_isomorphism(g: Graph, h: Graph, mapping: Sequence[int]) -> bool:
    """True iff ``v -> mapping[v]`` is a color-preserving isomorphism g -> h."""
    if g.n != h.n or len(mapping) != g.n or sorted(mapping) != list(range(h.n)):
        return False
    for v in range(g.n):
        if g.colors[v] != h.colors[mapping[v]]:
            return False
        if mask_of(mapping[w] for w in iter_bits(g.adj[v])) != h.adj[mapping[v]]:
            return False
    return True


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    return is_isomorphism(g, g, perm)


# -- text format -------------------------------------------------------------

class FormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_graph(text: str) -> Graph:
    """Parse the ``usqgraph 1`` line format."""
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != ["usqgraph", "1"]:
        raise FormatError(lines[0][0] if lines else 1, "expected header 'usqgraph 1'")
    if len(lines) < 2 or lines[1][1][0] != "n" or len(lines[1][1]) != 2:
        raise FormatError(lines[1][0] if len(lines) > 1 else 1, "expected 'n <count>'")
    try:
        n = int(lines[1][1][1])
    except ValueError:
        raise FormatError(lines[1][0], "vertex count is not an integer") from None
    if n < 0:
        raise FormatError(lines[1][0], "negative vertex count")
    colors = [0] * n
    seen_colors: set[int] = set()
    edges: set[tuple[int, int]] = set()
    for lineno, tok in lines[2:]:
        try:
            args = [int(t) for t in tok[1:]]
        except ValueError:
            raise FormatError(lineno, "non-integer field") from None
        if tok[0] == "c" and len(args) == 2:
            v, col = args
            if not 0 <= v < n or col < 0:
                raise FormatError(lineno, "color line out of range")
            if v in seen_colors:
                raise FormatError(lineno, f"duplicate color for vertex {v}")
            seen_colors.add(v)
            colors[v] = col
        elif tok[0] == "e" and len(args) == 2:
            u, v = args
            if not 0 <= u < v < n:
                raise FormatError(lineno, "edge must satisfy 0 <= u < v < n")
            if (u, v) in edges:
                raise FormatError(lineno, f"duplicate edge {u} {v}")
            edges.add((u, v))
        else:
            raise FormatError(lineno, f"unrecognized line {' '.join(tok)!r}")
    return Graph.from_edges(n, edges, colors)


def format_graph(g: Graph) -> str:
    out = ["usqgraph 1", f"n {g.n}"]
    out += [f"c {v} {c}" for v, c in enumerate(g.colors) if c]
    out += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(out) + "\n"
