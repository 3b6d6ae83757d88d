"""Exact-rational L∞ realizations: generation, geometric checks, interval encoding.

The decision pipeline never reads a realization; everything here exists for
instance generation and for realization-aware tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import FormatError, Graph, _content_lines, components_mask, connected_twin_classes, iter_bits, mask_of

Point = tuple[Fraction, Fraction]
Realization = list[Point]

GRID = 64


def as_point(x, y) -> Point:
    return Fraction(x), Fraction(y)


def linf(p: Point, q: Point) -> Fraction:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def intersection_graph(pts: Sequence[Point], colors: Sequence[int] | None = None) -> Graph:
    """Edge ``uv`` iff the L∞ distance of the two points is at most 1."""
    n = len(pts)
    rows = [0] * n
    for u in range(n):
        xu, yu = pts[u]
        for v in range(u + 1, n):
            xv, yv = pts[v]
            if abs(xu - xv) <= 1 and abs(yu - yv) <= 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph.from_rows(rows, colors)


def random_points(n: int, box, seed: int) -> Realization:
    if n < 1:
        raise ValueError("n must be at least 1")
    box = Fraction(box)
    if box <= 0:
        raise ValueError("box must be positive")
    rng = random.Random(seed)
    top = int(box * GRID)
    return [(Fraction(rng.randint(0, top), GRID), Fraction(rng.randint(0, top), GRID)) for _ in range(n)]


def random_usq_graph(n: int, box, seed: int) -> tuple[Graph, Realization]:
    """``n`` uniform points on the ``1/64`` grid of ``[0, box]^2``."""
    pts = random_points(n, box, seed)
    return intersection_graph(pts), pts


def reduced_instance(n: int, box, seed: int) -> tuple[Graph, Realization]:
    """Connected, twin-free induced subgraph of a random instance, with its points."""
    return reduce_realization(random_points(n, box, seed))


def reduce_realization(pts: Sequence[Point]) -> tuple[Graph, Realization]:
    """Keep the largest component, then one vertex per twin class, until stable.

    Induced subgraphs of unit square graphs are unit square graphs, so the
    returned points realize the returned graph.
    """
    keep = list(pts)
    while True:
        g = intersection_graph(keep)
        comp = max(components_mask(g), key=lambda m: (m.bit_count(), -m))
        reps = sorted(min(c) for c in connected_twin_classes(g) if comp >> min(c) & 1)
        if len(reps) == g.n:
            return g, keep
        keep = [keep[v] for v in reps]


def mirrored_instance(pairs: int, box, seed: int) -> tuple[Graph, Realization, int | None]:
    """Reduced instance symmetric under swapping the coordinates.

    Random points come with their mirror images plus one point on the axis
    at the box center. Returns the graph, its points, and the index of the
    axis point (``None`` if reduction dropped it).
    """
    rng = random.Random(seed)
    top = int(Fraction(box) * GRID)
    c = Fraction(top // 2, GRID)
    pts: Realization = [(c, c)]
    for _ in range(pairs):
        x, y = Fraction(rng.randint(0, top), GRID), Fraction(rng.randint(0, top), GRID)
        pts += [(x, y), (y, x)]
    g, kept = reduce_realization(pts)
    return g, kept, kept.index((c, c)) if (c, c) in kept else None


def orientation_problems(pts: Sequence[Point], g: Graph, classes: Sequence[Iterable[int]]) -> list[str]:
    """Realization-aware checks of a clique-stable partition of a twin-free graph.

    Each class must be monotone along one diagonal (its orientation). Pairs
    with different orientations are complete or empty. Pairs with equal
    orientation and ``k`` crossing edges follow the staircase rule when both
    classes are listed by first coordinate. Returns the violations found.
    """
    out = []
    cls = [sorted(c, key=lambda v: pts[v]) for c in classes]
    ori = []
    for c in cls:
        options = [b for b in (1, -1)
                   if all((pts[v][0] <= pts[w][0]) == (b * pts[v][1] <= b * pts[w][1]) for v in c for w in c)]
        if not options:
            out.append(f"class {sorted(c)} has no orientation")
        ori.append(1 if len(c) == 1 or not options else options[0])
    masks = [mask_of(c) for c in cls]
    for a in range(len(cls)):
        for b in range(a + 1, len(cls)):
            k = sum((g.adj[v] & masks[b]).bit_count() for v in cls[a])
            s, t = len(cls[a]), len(cls[b])
            if k in (0, s * t):
                continue
            if ori[a] != ori[b]:
                out.append(f"classes {a}, {b} differ in orientation but are partially joined")
                continue
            for i, x in enumerate(cls[a], 1):
                for j, y in enumerate(cls[b], 1):
                    if g.has_edge(x, y) != (-(-i * t // k) == -(-j * s // k)):
                        out.append(f"classes {a}, {b} break the staircase at ({x}, {y})")
    return out


@dataclass(frozen=True)
class CliqueCenter:
    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def contains(self, p: Point) -> bool:
        return self.x_lo <= p[0] <= self.x_hi and self.y_lo <= p[1] <= self.y_hi

    def intersects(self, other: "CliqueCenter") -> bool:
        return (max(self.x_lo, other.x_lo) <= min(self.x_hi, other.x_hi)
                and max(self.y_lo, other.y_lo) <= min(self.y_hi, other.y_hi))


def clique_center(pts: Sequence[Point], clique: Iterable[int]) -> CliqueCenter:
    """Points within L∞ distance 1/2 of every member of ``clique``."""
    c = sorted(set(clique))
    if not c:
        raise ValueError("empty clique")
    for i, u in enumerate(c):
        for v in c[i + 1:]:
            if linf(pts[u], pts[v]) > 1:
                raise ValueError(f"vertices {u} and {v} are not adjacent")
    half = Fraction(1, 2)
    xs = [pts[v][0] for v in c]
    ys = [pts[v][1] for v in c]
    return CliqueCenter(max(xs) - half, min(xs) + half, max(ys) - half, min(ys) + half)


def is_neighborhood_realization(pts: Sequence[Point]) -> bool:
    return all(-1 <= x <= 1 and -1 <= y <= 1 for x, y in pts)


# -- interval graphs ---------------------------------------------------------------

def random_interval_graph(n: int, seed: int, span: int = 12, max_len: int = 4) -> tuple[Graph, list[tuple[int, int]]]:
    """Interval graph from random integer intervals (closed)."""
    rng = random.Random(seed)
    ivs = []
    for _ in range(n):
        a = rng.randint(0, span)
        ivs.append((a, a + rng.randint(0, max_len)))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if max(ivs[u][0], ivs[v][0]) <= min(ivs[u][1], ivs[v][1])]
    return Graph.from_edges(n, edges), ivs


def consecutive_clique_order(g: Graph, cliques: Sequence[frozenset[int]] | None = None) -> list[frozenset[int]] | None:
    """A linear order of the maximal cliques with every vertex's cliques consecutive.

    Brute-force backtracking, meant for small graphs (n up to about 12).
    Returns ``None`` when no such order exists (``g`` is not an interval graph).
    """
    from .oracle import bron_kerbosch

    cl = sorted(cliques if cliques is not None else bron_kerbosch(g), key=sorted)
    k = len(cl)

    def dfs(order: list[int], closed: int) -> list[int] | None:
        # closed: vertices whose run of cliques has already ended
        if len(order) == k:
            return order
        last = mask_of(cl[order[-1]]) if order else 0
        for i in range(k):
            if i in order:
                continue
            cur = mask_of(cl[i])
            if cur & closed:
                continue
            res = dfs(order + [i], closed | (last & ~cur))
            if res is not None:
                return res
        return None

    found = dfs([], 0)
    return None if found is None else [cl[i] for i in found]


def check_consecutive(n: int, order: Sequence[frozenset[int]]) -> None:
    """Raise ``ValueError`` naming a vertex whose cliques are not consecutive."""
    for v in range(n):
        idx = [i for i, c in enumerate(order) if v in c]
        if not idx:
            raise ValueError(f"vertex {v} lies in no clique of the order")
        if idx[-1] - idx[0] + 1 != len(idx):
            raise ValueError(f"cliques of vertex {v} are not consecutive")


def interval_to_usq(g: Graph, clique_order: Sequence[frozenset[int]]) -> tuple[Graph, Realization]:
    """``G_M`` for an interval graph together with an explicit realization.

    Cliques ``C_1..C_k`` sit at ``(i/k - 1, i/k)`` and a vertex whose cliques are
    ``C_a..C_b`` sits at ``(a/k, b/k - 1)``. Vertices keep indices ``0..n-1``;
    clique ``C_i`` becomes vertex ``n + i - 1``.
    """
    from .cliques import gm_from_cliques

    check_consecutive(g.n, clique_order)
    k = len(clique_order)
    pts: Realization = []
    for v in range(g.n):
        idx = [i + 1 for i, c in enumerate(clique_order) if v in c]
        pts.append((Fraction(idx[0], k), Fraction(idx[-1], k) - 1))
    for i in range(1, k + 1):
        pts.append((Fraction(i, k) - 1, Fraction(i, k)))
    return gm_from_cliques(g, list(clique_order)), pts


# -- text format ---------------------------------------------------------------------

def format_realization(pts: Sequence[Point]) -> str:
    out = ["usqreal 1"]
    for v, (x, y) in enumerate(pts):
        out.append(f"p {v} {x.numerator}/{x.denominator} {y.numerator}/{y.denominator}")
    return "\n".join(out) + "\n"


def _frac(tok: str, lineno: int) -> Fraction:
    try:
        num, _, den = tok.partition("/")
        return Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError):
        raise FormatError(lineno, f"bad rational {tok!r}") from None


def parse_realization(text: str) -> Realization:
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != ["usqreal", "1"]:
        raise FormatError(lines[0][0] if lines else 1, "expected header 'usqreal 1'")
    found: dict[int, Point] = {}
    for lineno, tok in lines[1:]:
        if tok[0] != "p" or len(tok) != 4:
            raise FormatError(lineno, f"unrecognized line {' '.join(tok)!r}")
        try:
            v = int(tok[1])
        except ValueError:
            raise FormatError(lineno, "vertex is not an integer") from None
        if v in found:
            raise FormatError(lineno, f"duplicate point for vertex {v}")
        found[v] = (_frac(tok[2], lineno), _frac(tok[3], lineno))
    if sorted(found) != list(range(len(found))):
        raise FormatError(lines[-1][0], "vertices must be numbered 0..n-1")
    return [found[v] for v in range(len(found))]
