"""Command-line front end.

Exit codes: 0 success or isomorphic, 1 not isomorphic (or a failed
self-check), 2 diagnosed failure, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .cliques import maximal_cliques
from .geometry import format_realization, random_usq_graph
from .graph import DiagnosedFailure, FormatError, Graph, format_graph, is_isomorphism, parse_graph
from .permgroup import cycle_notation
from .pipeline import Config, Timings, automorphism_group, isomorphic
from .refinement import color_refine, distinguishes, wl_k

EXIT_OK, EXIT_NONISO, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2, 3

STAGES = ("twin-reduce", "global-structure", "clique-stable", "refinement-layers", "structure-aut",
          "quotient-intersect", "lift")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    k: int = 3
    t: int = 8
    verbose: bool = False

    def __post_init__(self):
        if self.k not in (1, 2, 3):
            raise UsageError("--wl-k must be 1, 2 or 3")
        if self.t < 1:
            raise UsageError("--bound must be at least 1")

    @property
    def pipeline(self) -> Config:
        return Config(k=self.k, t=self.t)


def _read(path: str) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# -- commands ------------------------------------------------------------------------------

def _report(cfg: RunConfig, tm: Timings) -> None:
    if cfg.verbose:
        for stage in STAGES:
            print(f"# {stage} {tm.stages.get(stage, 0.0):.3f}s", file=sys.stderr)


def cmd_gen(args, cfg: RunConfig) -> int:
    if args.n < 1:
        raise UsageError("-n must be at least 1")
    if args.box <= 0:
        raise UsageError("--box must be positive")
    g, pts = random_usq_graph(args.n, args.box, args.seed)
    _write(args.out, format_graph(g))
    if args.realization:
        Path(args.realization).write_text(format_realization(pts))
    return EXIT_OK


def cmd_iso(args, cfg: RunConfig) -> int:
    a, b = _read(args.a), _read(args.b)
    tm = Timings()
    mapping = isomorphic(a, b, cfg.pipeline, tm)
    _report(cfg, tm)
    if mapping is None:
        print("not isomorphic")
        return EXIT_NONISO
    assert is_isomorphism(a, b, mapping)
    print("isomorphic")
    if args.emit_map:
        _write(args.emit_map, "".join(f"{v} {w}\n" for v, w in enumerate(mapping)))
    return EXIT_OK


def cmd_aut(args, cfg: RunConfig) -> int:
    g = _read(args.a)
    tm = Timings()
    res = automorphism_group(g, cfg.pipeline, tm)
    _report(cfg, tm)
    print(f"order {res.order}")
    for s in res.generators:
        print(cycle_notation(s))
    return EXIT_OK


def cmd_refine(args, cfg: RunConfig) -> int:
    g = _read(args.a)
    k = args.k if args.k is not None else 1
    if k not in (1, 2, 3):
        raise UsageError("-k must be 1, 2 or 3")
    names = color_refine(g).names if k == 1 else wl_k(g, k)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(names):
        classes.setdefault(c, []).append(v)
    for c in sorted(classes):
        print(c, len(classes[c]), " ".join(map(str, classes[c])))
    return EXIT_OK


def cmd_cliques(args, cfg: RunConfig) -> int:
    g = _read(args.a)
    for c in maximal_cliques(g):
        print(" ".join(map(str, sorted(c))))
    return EXIT_OK


def _bench_one(job: tuple[int, int, float, int, Config]) -> tuple[str, int, int, str, dict[str, float], float]:
    n, seed, box, index, pcfg = job
    g, _ = random_usq_graph(n, box, seed)
    perm = list(range(n))
    random.Random(seed).shuffle(perm)
    h = g.relabel(perm)
    digest = hashlib.sha256(format_graph(g).encode()).hexdigest()[:12]
    tm = Timings()
    t0 = time.perf_counter()
    try:
        res = "iso" if isomorphic(g, h, pcfg, tm) is not None else "noniso"
    except DiagnosedFailure as exc:
        res = f"failure:{exc.check}"
    return digest, g.n, g.num_edges(), res, tm.stages, time.perf_counter() - t0


def cmd_bench(args, cfg: RunConfig) -> int:
    if args.n < 1 or args.count < 1:
        raise UsageError("-n and --count must be at least 1")
    box = args.box if args.box is not None else max(1.0, math.sqrt(args.n) / 2)
    jobs = [(args.n, args.seed * 1_000_003 + i, box, i, cfg.pipeline) for i in range(args.count)]
    threads = max(1, int(os.environ.get("USQ_THREADS", "1") or 1))
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    header = ["idx", "hash", "n", "m", "result"]
    if not args.no_timing:
        header += list(STAGES) + ["total"]
    print("# " + " ".join(header))
    failed = False
    for i, (digest, n, m, res, stages, total) in enumerate(rows):
        cols = [str(i), digest, str(n), str(m), res]
        failed |= res.startswith("failure")
        if not args.no_timing:
            cols += [f"{stages.get(s, 0.0):.3f}" for s in STAGES] + [f"{total:.3f}"]
        print(" ".join(cols))
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_wl_experiment(args, cfg: RunConfig) -> int:
    """Look for non-isomorphic generated pairs that k-WL fails to separate.

    An experiment, not a claim: a zero count says nothing beyond the sample.
    """
    if args.n < 1 or args.count < 2:
        raise UsageError("-n must be at least 1 and --count at least 2")
    reps: dict[tuple, list[Graph]] = {}
    classes = pairs = missed = 0
    for i in range(args.count):
        g, _ = random_usq_graph(args.n, args.box, args.seed * 1_000_003 + i)
        group = reps.setdefault(tuple(sorted(g.degree(v) for v in range(g.n))), [])
        if any(isomorphic(g, h, cfg.pipeline) is not None for h in group):
            continue
        classes += 1
        pairs += len(group)
        missed += sum(not distinguishes(g, h, args.k) for h in group)
        group.append(g)
    print(f"classes {classes} noniso-pairs {pairs} undistinguished-by-{args.k}-WL {missed}")
    return EXIT_OK


def cmd_selfcheck(args, cfg: RunConfig) -> int:
    from .acceptance import Acceptance

    suite = Acceptance(scale=0.1 if args.quick else 1.0)
    only = args.only or sorted(suite.NAMES)
    results = []
    for k in only:
        if k not in suite.NAMES:
            raise UsageError(f"no criterion {k}")
        res = suite.run(k)
        print(res.line(), flush=True)
        results.append(res)
    passed = sum(r.ok for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_NONISO


# -- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="usq", description="Isomorphism of unit square graphs.")
    p.add_argument("--wl-k", type=int, default=3, help="WL dimension inside neighborhoods (1-3)")
    p.add_argument("--bound", type=int, default=8, help="circle bound for structure graphs")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", help="random unit square graph")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--box", type=float, default=3.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--realization", help="also write the points to this file")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("iso", help="decide isomorphism")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--emit-map", metavar="FILE", help="write the verified map, one 'v w' per line ('-' for stdout)")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("aut", help="automorphism group order and generators")
    s.add_argument("a")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("refine", help="color refinement or k-WL classes")
    s.add_argument("a")
    s.add_argument("-k", type=int)
    s.set_defaults(func=cmd_refine)

    s = sub.add_parser("cliques", help="maximal cliques")
    s.add_argument("a")
    s.set_defaults(func=cmd_cliques)

    s = sub.add_parser("bench", help="timed isomorphism runs on generated pairs")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--box", type=float)
    s.add_argument("--no-timing", action="store_true", help="omit timing columns")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("wl-experiment", help="does k-WL separate non-isomorphic generated pairs?")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--box", type=float, default=1.5)
    s.add_argument("-k", type=int, default=2, choices=(1, 2, 3))
    s.set_defaults(func=cmd_wl_experiment)

    s = sub.add_parser("selfcheck", help="run the acceptance suite")
    s.add_argument("--quick", action="store_true", help="a tenth of the instances")
    s.add_argument("--only", type=int, nargs="+", metavar="K")
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(args.wl_k, args.bound, args.verbose)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"usq: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"usq: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DiagnosedFailure as exc:
        print(f"usq: diagnosed failure [{exc.check}]: {exc.detail}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
