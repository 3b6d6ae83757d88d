"""The embedded acceptance suite, shared by ``usq selfcheck`` and the tests.

Every criterion is seeded and returns a :class:`Outcome`. ``scale`` shrinks
instance counts for quick runs; the stated counts correspond to ``scale=1``.
"""

from __future__ import annotations

import io
import math
import random
import tempfile
import time
from contextlib import redirect_stdout
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import oracle
from .circle_bounded import (aut_circle_bounded, certificate_log, max_cell_components, random_layered,
                             verify_circle_bounded)
from .cliques import build_gm, maximal_cliques, verify_staircase
from .geometry import (consecutive_clique_order, mirrored_instance, interval_to_usq, intersection_graph, orientation_problems,
                       random_interval_graph, random_usq_graph, reduce_realization, reduced_instance)
from .graph import Graph, format_graph, is_isomorphism
from .pca import CATALOG, cycle, has_induced, path
from .pipeline import (GlobalStructure, IsoStats, anchored, automorphism_order, choose_anchor,
                       global_structure_refined, isomorphic, _top_action, Config)
from .refinement import color_refine, distinguishes, wl_k, OrderedPartition


@dataclass
class Outcome:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return (f"[{'PASS' if self.ok else 'FAIL'}] criterion {self.number:>2} {self.name}: {self.detail} "
                f"({self.seconds:.1f}s)")


def g8() -> Graph:
    """Nine-clique ``v1..v9`` with a pendant ``w_i`` on each of ``v1..v8``."""
    edges = [(i, j) for i in range(9) for j in range(i + 1, 9)] + [(i, 9 + i) for i in range(8)]
    return Graph.from_edges(17, edges)


def _count(base: int, scale: float) -> int:
    return max(1, round(base * scale))


def _perturbed(pts, rng: random.Random):
    """Move one point by at most a half in each coordinate, then reduce again."""
    from fractions import Fraction

    pts = list(pts)
    i = rng.randrange(len(pts))
    dx, dy = (Fraction(rng.randint(-32, 32), 64) for _ in range(2))
    pts[i] = (pts[i][0] + dx, pts[i][1] + dy)
    return reduce_realization(pts)


def _shuffled(g: Graph, rng: random.Random) -> Graph:
    p = list(range(g.n))
    rng.shuffle(p)
    return g.relabel(p)


@dataclass
class Acceptance:
    scale: float = 1.0
    structures: list[GlobalStructure] = field(default_factory=list)
    realized: list[tuple[GlobalStructure, list]] = field(default_factory=list)
    certificates: list[tuple[int, bool, int]] = field(default_factory=list)
    _ran: set[int] = field(default_factory=set)

    # -- 1 ----------------------------------------------------------------------------
    def c1(self) -> tuple[bool, str]:
        pairs = _count(500, self.scale)
        rng = random.Random(1)
        agree = iso = 0
        unverified = 0
        stats = IsoStats()
        with certificate_log() as log:
            seed = 10_000
            for i in range(pairs):
                g = Graph.from_edges(0)
                while not 2 <= g.n <= 12:
                    seed += 1
                    if i % 4 < 2:
                        g, pts = reduced_instance(rng.randint(5, 14), rng.choice([1.5, 2, 2.5, 3]), seed)
                    else:
                        g, pts, _ = mirrored_instance(rng.randint(3, 6), rng.choice([1.5, 2]), seed)
                if i % 2 == 0:
                    h = _shuffled(g, rng)
                else:
                    # independent partner: a perturbed copy, preferably with the same vertex count
                    for _ in range(20):
                        h, _ = _perturbed(pts, rng)
                        if h.n == g.n and sorted(h.edges()) != sorted(g.edges()):
                            break
                    h = _shuffled(h, rng)
                got = isomorphic(g, h, stats=stats)
                want = oracle.brute_iso(g, h)
                if got is not None:
                    iso += 1
                    if not is_isomorphism(g, h, got):
                        unverified += 1
                agree += (got is None) == (want is None)
        self.structures.extend(stats.structures)
        self.certificates.extend(log)
        ok = agree == pairs and unverified == 0
        return ok, f"{agree}/{pairs} pairs agree with the oracle, {iso} isomorphic, {unverified} unverified maps"

    # -- 2 ----------------------------------------------------------------------------
    def c2(self) -> tuple[bool, str]:
        count = _count(200, self.scale)
        rng = random.Random(2)
        exact = made = nontrivial = 0
        seed = 20_000
        with certificate_log() as log:
            while made < count:
                seed += 1
                if made % 2 == 0:
                    g, pts = reduced_instance(rng.randint(4, 12), rng.choice([1.5, 2, 2.5]), seed)
                    v = choose_anchor(g)[0] if g.n else None
                else:
                    g, pts, v = mirrored_instance(rng.randint(2, 5), rng.choice([1.5, 2]), seed)
                if g.n < 2 or g.n > 10 or v is None:
                    continue
                made += 1
                a = anchored(g, v, max(g.colors) + 1)
                st = global_structure_refined(a, v)
                self.structures.append(st)
                self.realized.append((st, pts))
                top = _top_action([st], Config()).order()
                p = st.ordered_partition()
                image = oracle.brute_aut_order(a) // oracle.brute_aut_order(a.with_colors(p.class_id))
                exact += top == image
                nontrivial += image > 1
        self.certificates.extend(log)
        return exact == count, (f"{exact}/{count} anchored instances with |top group| equal to the oracle image "
                                f"order ({nontrivial} with a nontrivial image)")

    # -- 3 ----------------------------------------------------------------------------
    def c3(self) -> tuple[bool, str]:
        count = _count(200, self.scale)
        cases = [(cycle(5), 10), (path(4), 2)]
        good = 0
        for name_case, (g, want) in enumerate(cases):
            good += aut_circle_bounded(g.with_colors([0] * g.n)).order() == want
        verified = 0
        for seed in range(count):
            h = random_layered(seed, layers=3, max_cell=8)
            verified += verify_circle_bounded(h)[0]
            good += aut_circle_bounded(h).order() == oracle.brute_aut_order(h)
        total = count + len(cases)
        return good == total and verified == count, f"{good}/{total} orders equal the oracle ({verified} verified layered graphs)"

    # -- 4 ----------------------------------------------------------------------------
    def c4(self) -> tuple[bool, str]:
        self._need(1, 2)
        bad = sum(1 for t, ok, _ in self.certificates if not ok)
        by_bound: dict[int, int] = {}
        for t, _, _ in self.certificates:
            by_bound[t] = by_bound.get(t, 0) + 1
        final = [verify_circle_bounded(s.structure, 8)[0] for s in self.structures]
        bad += final.count(False)
        bounds = ", ".join(f"{n} at bound {t}" for t, n in sorted(by_bound.items()))
        return bad == 0 and set(by_bound) <= {4, 8}, f"{bad} violations among {len(self.certificates)} checks ({bounds}) and {len(final)} final structures"

    # -- 5 ----------------------------------------------------------------------------
    def c5(self) -> tuple[bool, str]:
        count = _count(10_000, self.scale)
        rng = random.Random(5)
        pats = [("K15", CATALOG["K15"]), ("K23", CATALOG["K23"]), ("co-3K2", CATALOG["co-3K2"]),
                ("co-T2", CATALOG["co-T2"])]
        hits = {name: 0 for name, _ in pats}
        for seed in range(count):
            n = rng.randint(5, 40)
            g, _ = random_usq_graph(n, rng.choice([1, 1.5, 2, 3, 4]), 50_000 + seed)
            for name, p in pats:
                if has_induced(g, p):
                    hits[name] += 1
        found = sum(hits.values())
        return found == 0, f"{count} instances, induced hits " + ", ".join(f"{k}={v}" for k, v in hits.items())

    # -- 6 ----------------------------------------------------------------------------
    def c6(self) -> tuple[bool, str]:
        count = _count(1000, self.scale)
        rng = random.Random(6)
        same = wl1 = 0
        for _ in range(count):
            n = rng.randint(1, 50)
            p = rng.random() * 0.3
            edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
            g = Graph.from_edges(n, edges, [rng.randrange(3) for _ in range(n)])
            cr = color_refine(g)
            same += cr.set_partition() == oracle.naive_stable_partition(g).set_partition()
            if n <= 30:
                wl1 += OrderedPartition(wl_k(g, 1)).set_partition() == cr.set_partition()
            else:
                wl1 += 1
        c6_, two_k3 = cycle(6), Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        sep = distinguishes(c6_, two_k3, 2) and not distinguishes(c6_, two_k3, 1)
        ok = same == count and wl1 == count and sep
        return ok, f"CR equals naive on {same}/{count}, 1-WL equals CR on {wl1}/{count}, C6 vs 2K3 split by 2-WL only: {sep}"

    # -- 7 ----------------------------------------------------------------------------
    def c7(self) -> tuple[bool, str]:
        count, small = _count(200, self.scale), _count(100, self.scale)
        rng = random.Random(7)
        same = 0
        for seed in range(count):
            g, _ = random_usq_graph(rng.randint(1, 40), rng.choice([1.5, 2, 3, 4]), 70_000 + seed)
            same += set(maximal_cliques(g)) == set(oracle.bron_kerbosch(g))
        auts = 0
        for seed in range(small):
            g, _ = random_usq_graph(rng.randint(1, 9), rng.choice([1, 1.5, 2]), 71_000 + seed)
            gm = build_gm(g)
            # the restriction to V(G) has the automorphisms fixing V(G) pointwise as kernel
            pinned = gm.with_colors([gm.colors[x] if x >= g.n else 1 + gm.n + x for x in range(gm.n)])
            image = oracle.brute_aut_order(gm) // oracle.brute_aut_order(pinned)
            auts += image == oracle.brute_aut_order(g)
        return same == count and auts == small, f"cliques match Bron-Kerbosch on {same}/{count}, clique-graph restriction order matches on {auts}/{small}"

    # -- 8 ----------------------------------------------------------------------------
    def c8(self) -> tuple[bool, str]:
        count = _count(100, self.scale)
        edges_ok = groups_ok = 0
        for seed in range(count):
            g, _ = random_interval_graph(1 + seed % 10, 80_000 + seed)
            order = consecutive_clique_order(g)
            gm, pts = interval_to_usq(g, order)
            real = intersection_graph(pts)
            edges_ok += sorted(real.edges()) == sorted(gm.edges())
            groups_ok += oracle.brute_aut_order(g) == oracle.brute_aut_order(gm)
        return edges_ok == count and groups_ok == count, f"realized edges equal on {edges_ok}/{count}, automorphism orders equal on {groups_ok}/{count}"

    # -- 9 ----------------------------------------------------------------------------
    def c9(self) -> tuple[bool, str]:
        self._need(1, 2)
        realized = list(self.realized)
        extra = []
        seed = 90_000
        while len(extra) < _count(100, self.scale):
            seed += 1
            g, pts, v = mirrored_instance(4 + seed % 4, 1.5 + (seed % 3) / 4, seed)
            if g.n >= 2 and v is not None:
                st = global_structure_refined(anchored(g, v, 1), v)
                extra.append(st)
                realized.append((st, pts))
        structures = self.structures + extra
        stair = sum(verify_staircase(s.graph, s.ordered_partition())[0] for s in structures)
        partial = 0
        problems = 0
        for s, pts in realized:
            problems += len(orientation_problems(pts, s.graph, s.partition))
            partial += sum(1 for c in s.quotient.edge_color.items()
                           if 0 < c[1] < len(s.partition[c[0][0]]) * len(s.partition[c[0][1]]))
        n = len(structures)
        return stair == n and problems == 0, (f"staircase orders on {stair}/{n} partitions, "
                                              f"{problems} orientation violations over {len(realized)} realized "
                                              f"instances ({partial} partial pairs)")

    # -- 10 ---------------------------------------------------------------------------
    def c10(self) -> tuple[bool, str]:
        g = g8()
        st = global_structure_refined(anchored(g, 8, 1), 8)
        h = st.structure
        at8, _ = verify_circle_bounded(h, 8)
        at7, bad = verify_circle_bounded(h, 7)
        order = automorphism_order(g)
        want = oracle.brute_aut_order(g)
        witness = bad is not None and "8 components" in bad.reason
        ok = at8 and not at7 and witness and order == want == math.factorial(8)
        return ok, (f"order {order} (oracle {want}), bound 8 passes: {at8}, bound 7 fails on a cell with "
                    f"{max_cell_components(h)} components: {not at7 and witness}")

    # -- 11 ---------------------------------------------------------------------------
    def c11(self) -> tuple[bool, str]:
        from .cli import main

        pairs = max(2, _count(4, self.scale))
        worst = 0.0
        exits = []
        with tempfile.TemporaryDirectory() as tmp:
            rng = random.Random(11)
            for i in range(pairs):
                g, pts = random_usq_graph(200, 7, 110_000 + i)
                if i % 2 == 0:
                    h = _shuffled(g, rng)
                else:
                    h = _shuffled(intersection_graph(_nudge(pts, rng)), rng)
                a, b = Path(tmp, f"a{i}.txt"), Path(tmp, f"b{i}.txt")
                a.write_text(format_graph(g))
                b.write_text(format_graph(h))
                t0 = time.perf_counter()
                with redirect_stdout(io.StringIO()):
                    code = main(["iso", str(a), str(b)])
                worst = max(worst, time.perf_counter() - t0)
                exits.append(code)
            buf = io.StringIO()
            with redirect_stdout(buf):
                bench_code = main(["bench", "-n", "100", "--count", "3", "--seed", "1"])
        rows = [ln for ln in buf.getvalue().splitlines() if ln and not ln.startswith("#")]
        ok = worst < 60 and all(c in (0, 1) for c in exits) and exits[0] == 0 and bench_code == 0 and len(rows) == 3
        return ok, f"{pairs} pairs at n=200, slowest {worst:.1f}s, exits {exits}, bench rows {len(rows)}"

    # -- driver -------------------------------------------------------------------------
    NAMES = {
        1: "oracle agreement",
        2: "top-action exactness",
        3: "circle-bounded solver",
        4: "structure certificates",
        5: "forbidden induced subgraphs",
        6: "refinement correctness",
        7: "clique machinery",
        8: "interval encoding",
        9: "staircase structure",
        10: "named instance G_8",
        11: "performance sanity",
    }

    def _need(self, *numbers: int) -> None:
        for k in numbers:
            if k not in self._ran:
                self.run(k)

    def run(self, k: int) -> Outcome:
        t0 = time.perf_counter()
        self._ran.add(k)
        try:
            ok, detail = getattr(self, f"c{k}")()
        except Exception as exc:  # a crash is a failed criterion, reported with its cause
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        return Outcome(k, self.NAMES[k], ok, detail, time.perf_counter() - t0)

    def run_all(self, report: Callable[[Outcome], None] | None = None) -> list[Outcome]:
        out = []
        for k in sorted(self.NAMES):
            res = self.run(k)
            if report is not None:
                report(res)
            out.append(res)
        return out


def _nudge(pts, rng: random.Random):
    from fractions import Fraction

    pts = list(pts)
    i = rng.randrange(len(pts))
    pts[i] = (pts[i][0] + Fraction(rng.randint(-16, 16), 64), pts[i][1])
    return pts
