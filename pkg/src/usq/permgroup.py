"""Permutation groups via deterministic Schreier-Sims.

Permutations are tuples of images. Products compose left to right:
``mul(p, q)`` applies ``p`` first, so ``mul(p, q)[x] == q[p[x]]``.

Setwise stabilizers and hypergraph automorphism intersections use exact
backtracking over the stabilizer chain. They are always correct, but the worst
case is exponential; the groups met by the pipeline keep it fast in practice.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import iter_bits, mask_of

Perm = tuple[int, ...]


def identity(m: int) -> Perm:
    return tuple(range(m))


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(map(q.__getitem__, p))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def extend(p: Perm, m: int) -> Perm:
    """Extend ``p`` by fixed points up to domain size ``m``."""
    return p + tuple(range(len(p), m))


def image_mask(p: Perm, mask: int) -> int:
    return mask_of(p[x] for x in iter_bits(mask))


def from_cycles(m: int, cycles: Iterable[Sequence[int]]) -> Perm:
    img = list(range(m))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a] = b
    if sorted(img) != list(range(m)):
        raise ValueError("cycles do not describe a permutation")
    return tuple(img)


def cycle_notation(p: Perm) -> str:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def _check(p: Perm, m: int) -> Perm:
    p = tuple(p)
    if len(p) != m:
        raise ValueError(f"permutation has domain {len(p)}, expected {m}")
    if sorted(p) != list(range(m)):
        raise ValueError("not a permutation")
    return p


@dataclass
class _Level:
    point: int
    gens: list[Perm]
    trans: dict[int, Perm]        # orbit point -> u with point^u = orbit point
    trans_inv: dict[int, Perm]


@dataclass
class PermGroup:
    """A permutation group on ``0..m-1`` with a base and strong generating set."""

    m: int
    gens: list[Perm]
    base: list[int] = field(default_factory=list)
    strong: list[Perm] = field(default_factory=list)
    levels: list[_Level] = field(default_factory=list, repr=False)

    # -- construction --------------------------------------------------------

    @classmethod
    def trivial(cls, m: int) -> "PermGroup":
        return schreier_sims([], m)

    @classmethod
    def symmetric(cls, m: int) -> "PermGroup":
        gens = []
        if m >= 2:
            gens.append(from_cycles(m, [[0, 1]]))
        if m >= 3:
            gens.append(from_cycles(m, [list(range(m))]))
        return schreier_sims(gens, m)

    # -- queries -------------------------------------------------------------

    def order(self) -> int:
        out = 1
        for lv in self.levels:
            out *= len(lv.trans)
        return out

    def is_trivial(self) -> bool:
        return not self.gens

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for j in range(start, len(self.levels)):
            lv = self.levels[j]
            b = g[lv.point]
            if b == lv.point:
                continue
            u_inv = lv.trans_inv.get(b)
            if u_inv is None:
                return g, j
            g = mul(g, u_inv)
        return g, len(self.levels)

    def contains(self, g: Sequence[int]) -> bool:
        g = tuple(g)
        if len(g) != self.m or sorted(g) != list(range(self.m)):
            return False
        h, _ = self.sift(g)
        return is_identity(h)

    def orbit(self, x: int) -> frozenset[int]:
        return frozenset(orbit_transversal(self.gens, x, self.m))

    def orbits(self) -> list[frozenset[int]]:
        return orbits_of(self.gens, self.m)

    def elements(self, limit: int = 200_000) -> list[Perm]:
        """All elements (for small groups; used by tests and oracles)."""
        if self.order() > limit:
            raise ValueError("group too large to enumerate")
        out = [identity(self.m)]
        for lv in reversed(self.levels):
            out = [mul(h, u) for u in lv.trans.values() for h in out]
        return out

    def restricted_to(self, pts: Sequence[int]) -> "PermGroup":
        return restriction_kernel_image(self, pts)[0]


def orbit_transversal(gens: Sequence[Perm], x: int, m: int | None = None) -> dict[int, Perm]:
    """Orbit of ``x`` with, for each point ``y``, an element mapping ``x`` to ``y``."""
    if m is None:
        m = len(gens[0]) if gens else x + 1
    trans: dict[int, Perm] = {x: identity(m)}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        uy = trans[y]
        for s in gens:
            z = s[y]
            if z not in trans:
                trans[z] = mul(uy, s)
                queue.append(z)
    return trans


def orbits_of(gens: Sequence[Perm], m: int) -> list[frozenset[int]]:
    parent = list(range(m))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s in gens:
        for a, b in enumerate(s):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for a in range(m):
        groups.setdefault(find(a), []).append(a)
    return [frozenset(v) for _, v in sorted(groups.items())]


def _orbit_only(gens: Sequence[Perm], x: int) -> set[int]:
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for s in gens:
            z = s[y]
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return seen


def schreier_sims(gens: Iterable[Sequence[int]], m: int, base_prefix: Sequence[int] = ()) -> PermGroup:
    """Deterministic Schreier-Sims.

    ``base_prefix`` fixes the first base points (redundant points with trivial
    basic orbits are kept, which lets callers read off pointwise stabilizers).
    """
    gens = [_check(g, m) for g in gens]
    gens = [g for g in gens if not is_identity(g)]
    base = list(dict.fromkeys(base_prefix))
    for b in base:
        if not 0 <= b < m:
            raise ValueError(f"base point {b} outside domain {m}")
    strong: list[Perm] = list(dict.fromkeys(gens))
    for s in strong:
        if all(s[b] == b for b in base):
            base.append(next(x for x in range(m) if s[x] != x))

    levels: list[_Level] = []
    ident = identity(m)
    first_moved: dict[int, tuple[int, int]] = {}

    def moved_index(s: Perm) -> int:
        """Index of the first base point moved by ``s`` (len(base) if none)."""
        hit = first_moved.get(id(s))
        if hit is not None and (hit[1] < hit[0] or hit[0] == len(base)):
            return hit[1]
        start = hit[0] if hit is not None else 0
        idx = next((i for i in range(start, len(base)) if s[base[i]] != base[i]), len(base))
        first_moved[id(s)] = (len(base), idx)
        return idx

    def level_gens(i: int) -> list[Perm]:
        return [s for s in strong if moved_index(s) >= i]

    def build(i: int) -> _Level:
        gi = level_gens(i)
        pt = base[i]
        if not any(s[pt] != pt for s in gi):
            return _Level(pt, gi, {pt: ident}, {pt: ident})
        trans: dict[int, Perm] = {pt: ident}
        queue = deque([pt])
        while queue:
            y = queue.popleft()
            uy = trans[y]
            for s in gi:
                z = s[y]
                if z not in trans:
                    trans[z] = mul(uy, s)
                    queue.append(z)
        return _Level(pt, gi, trans, {y: inverse(u) for y, u in trans.items()})

    levels = [build(i) for i in range(len(base))]

    def sift(g: Perm, start: int) -> tuple[Perm, int]:
        for j in range(start, len(levels)):
            lv = levels[j]
            b = g[lv.point]
            if b == lv.point:
                continue
            u_inv = lv.trans_inv.get(b)
            if u_inv is None:
                return g, j
            g = mul(g, u_inv)
        return g, len(levels)

    i = len(base) - 1
    while i >= 0:
        lv = levels[i]
        added = False
        if len(lv.trans) > 1:
            for y, uy in list(lv.trans.items()):
                for s in lv.gens:
                    z = s[y]
                    sch = mul(mul(uy, s), lv.trans_inv[z])
                    if is_identity(sch):
                        continue
                    h, j = sift(sch, i + 1)
                    if is_identity(h):
                        continue
                    if j == len(levels):
                        base.append(next(x for x in range(m) if h[x] != x))
                        levels.append(None)  # type: ignore[arg-type]
                    strong.append(h)
                    for r in range(i + 1, j + 1):
                        levels[r] = build(r)
                    i = j
                    added = True
                    break
                if added:
                    break
        if not added:
            i -= 1
            if i >= 0:
                levels[i] = build(i)
    return PermGroup(m, gens, base, strong, levels)


# -- hypergraphs ---------------------------------------------------------------

@dataclass(frozen=True)
class Hypergraph:
    m: int
    edges: tuple[frozenset[int], ...]
    colors: tuple[int, ...]

    @classmethod
    def make(cls, m: int, edges: Iterable[Iterable[int]], colors: Iterable[int] | None = None) -> "Hypergraph":
        es = tuple(frozenset(e) for e in edges)
        cs = tuple(colors) if colors is not None else (0,) * len(es)
        if len(cs) != len(es):
            raise ValueError("one color per hyperedge required")
        for e in es:
            for x in e:
                if not 0 <= x < m:
                    raise ValueError(f"hyperedge point {x} outside domain {m}")
        return cls(m, es, cs)

    def table(self) -> dict[int, tuple[int, ...]]:
        """Edge mask -> sorted tuple of colors (parallel edges keep all colors)."""
        tab: dict[int, list[int]] = {}
        for e, c in zip(self.edges, self.colors):
            tab.setdefault(mask_of(e), []).append(c)
        return {k: tuple(sorted(v)) for k, v in tab.items()}


def preserves(p: Perm, table: dict[int, tuple[int, ...]]) -> bool:
    for mask, col in table.items():
        if table.get(image_mask(p, mask)) != col:
            return False
    return True


def _point_profile(h: Hypergraph) -> list[int]:
    """Color refinement on the point/edge incidence graph, projected to points."""
    from .refinement import refine_rounds

    tab = h.table()
    masks = list(tab)
    m = h.m
    nbrs: list[list[int]] = [[] for _ in range(m + len(masks))]
    for i, mask in enumerate(masks):
        for x in iter_bits(mask):
            nbrs[x].append(m + i)
            nbrs[m + i].append(x)
    colors = [0] * m + [1 + r for r in _rank_list([tab[k] for k in masks])]
    return refine_rounds(nbrs, colors)[:m]


def _rank_list(values):
    order = {v: i for i, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]


class SearchLimit(RuntimeError):
    """Backtracking exceeded its node limit."""


def hypergraph_aut_intersect(h: Hypergraph, group: PermGroup, node_limit: int | None = None) -> PermGroup:
    """``Aut(h) ∩ group`` (edge colors respected), by subgroup search."""
    if h.m != group.m:
        raise ValueError("hypergraph and group domains differ")
    table = h.table()
    if all(preserves(g, table) for g in group.gens):
        return group
    m = h.m
    profile = _point_profile(h)
    # base: points of small hyperedges first
    prefix: list[int] = []
    seen: set[int] = set()
    for mask in sorted(table, key=lambda k: (k.bit_count(), k)):
        for x in iter_bits(mask):
            if x not in seen:
                seen.add(x)
                prefix.append(x)
    g = schreier_sims(group.gens, m, prefix)
    levels = g.levels
    k = len(levels)
    pos = {lv.point: i for i, lv in enumerate(levels)}
    # edges checkable once all their points have images
    due: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(k)]
    for mask, col in table.items():
        last = max((pos[x] for x in iter_bits(mask)), default=0)
        due[last].append((mask, col))

    nodes = [0]

    def ok_at(j: int, img: list[int]) -> bool:
        for mask, col in due[j]:
            im = 0
            for x in iter_bits(mask):
                im |= 1 << img[pos[x]]
            if table.get(im) != col:
                return False
        return True

    def evaluate(chain: list[Perm], x: int) -> int:
        for u in reversed(chain):
            x = u[x]
        return x

    def dfs(j: int, chain: list[Perm], img: list[int]) -> Perm | None:
        nodes[0] += 1
        if node_limit is not None and nodes[0] > node_limit:
            raise SearchLimit("hypergraph intersection exceeded its node limit")
        if j == k:
            full = identity(m)
            for u in chain:
                full = mul(u, full)
            return full if preserves(full, table) else None
        lv = levels[j]
        b = lv.point
        if len(lv.trans) == 1:
            y = evaluate(chain, b)
            if profile[y] != profile[b]:
                return None
            img.append(y)
            if ok_at(j, img):
                found = dfs(j + 1, chain, img)
                if found is not None:
                    return found
            img.pop()
            return None
        for q, u in lv.trans.items():
            y = evaluate(chain, q)
            if profile[y] != profile[b]:
                continue
            img.append(y)
            if ok_at(j, img):
                chain.append(u)
                found = dfs(j + 1, chain, img)
                chain.pop()
                if found is not None:
                    img.pop()
                    return found
            img.pop()
        return None

    found_gens: list[Perm] = []
    for l in reversed(range(k)):
        lv = levels[l]
        if len(lv.trans) == 1:
            continue
        b = lv.point
        reached = _orbit_only(found_gens, b) if found_gens else {b}
        # images of base[:l] are fixed by G^(l)
        fixed_img = [levels[i].point for i in range(l)]
        for gamma in sorted(lv.trans):
            if gamma in reached or profile[gamma] != profile[b]:
                continue
            img = fixed_img + [gamma]
            if not ok_at(l, img):
                continue
            found = dfs(l + 1, [lv.trans[gamma]], img)
            if found is not None:
                found_gens.append(found)
                reached = _orbit_only(found_gens, b)
    return schreier_sims(found_gens, m)


def setwise_stabilizer(group: PermGroup, subset: Iterable[int]) -> PermGroup:
    a = frozenset(subset)
    if not a or len(a) == group.m:
        return group
    return hypergraph_aut_intersect(Hypergraph.make(group.m, [a]), group)


def restriction_kernel_image(group: PermGroup, subset: Sequence[int]):
    """Split ``group`` along an invariant set ``A``.

    Returns ``(image, kernel, lift)``: the induced group on ``A`` (points
    renumbered in sorted order), the pointwise stabilizer of ``A``, and a dict
    mapping each image generator to one preimage in ``group``.
    """
    pts = sorted(set(subset))
    amask = mask_of(pts)
    for s in group.gens:
        if image_mask(s, amask) != amask:
            raise ValueError("subset is not invariant under the group")
    index = {x: i for i, x in enumerate(pts)}
    lift: dict[Perm, Perm] = {}
    for s in group.gens:
        r = tuple(index[s[x]] for x in pts)
        if not is_identity(r) and r not in lift:
            lift[r] = s
    image = schreier_sims(list(lift), len(pts))
    chain = schreier_sims(group.gens, group.m, pts)
    kernel_gens = [s for s in chain.strong if all(s[x] == x for x in pts)]
    kernel = schreier_sims(kernel_gens, group.m)
    return image, kernel, lift


def direct_product(groups: Sequence[PermGroup]) -> PermGroup:
    """Groups placed on consecutive disjoint domains."""
    m = sum(gr.m for gr in groups)
    gens = []
    off = 0
    for gr in groups:
        for s in gr.gens:
            img = list(range(m))
            for i, x in enumerate(s):
                img[off + i] = off + x
            gens.append(tuple(img))
        off += gr.m
    return schreier_sims(gens, m)


def embed(group_gens: Sequence[Perm], offset: int, m: int) -> list[Perm]:
    out = []
    for s in group_gens:
        img = list(range(m))
        for i, x in enumerate(s):
            img[offset + i] = offset + x
        out.append(tuple(img))
    return out
