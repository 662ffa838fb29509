"""Command-line experiment harness with CSV-first, seed-explicit output.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
exhaustion with partial output. Every CSV starts with a metadata comment
block echoing the tool version, the parsed config and the PRNG name, so a
run can be reproduced from its output alone. KNESER_LAB_THREADS caps the
worker pool used for independent (n, seed) tasks.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .colorings import (
    canonical_coloring,
    merged_canonical,
    monochromatic_edges,
    starfree_coloring,
    triple_block_coloring,
    verify_proper,
)
from .emptyfam import search_empty_family, sequential_k2_build
from .families import (
    Family,
    diversity,
    disjoint_pairs,
    is_intersecting,
    largest_intersecting_subfamily,
    star_center,
)
from .kneser import KneserParams, full_graph, sample_subgraph
from .prng import parse_probability
from .solvers import (
    SolveBudget,
    chromatic_number,
    hypergraph_chromatic_number,
    independence_number,
    max_colorable_subset,
    min_mono_edges,
    union_of_stars_cover_search,
)
from .subsets import GroundSet, KSubset, mask_of_rank

PRNG_NAME = "splitmix64"


def _workers() -> int:
    env = os.environ.get("KNESER_LAB_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def _meta(config: str) -> list[str]:
    return [
        f"# kneser-lab v{__version__}",
        f"# config: {config}",
        f"# prng: {PRNG_NAME}",
    ]


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_seeds(text: str) -> list[int]:
    return [int(s) for s in text.split(",") if s.strip() != ""]


def _parse_n_values(args: argparse.Namespace) -> list[int]:
    if args.n_range:
        lo, hi = args.n_range.split("..")
        return list(range(int(lo), int(hi) + 1))
    if args.n is None:
        raise SystemExit2("one of --n or --n-range is required")
    return [args.n]


class SystemExit2(SystemExit):
    def __init__(self, message: str):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


# ---------------------------------------------------------------- commands


def cmd_verify_constructions(args: argparse.Namespace) -> int:
    ks = [int(x) for x in args.k.split(",")] if args.k else [2, 3, 4]
    rows = ["construction,n,k,r,t,proper,mono_edges,uncolored"]
    failed = False

    for k in ks:
        for n in range(2 * k, 2 * k + 5):
            g = full_graph(KneserParams(n, k, 2))
            c = canonical_coloring(n, k)
            ok = verify_proper(c, g).proper
            failed |= not ok
            rows.append(f"canonical,{n},{k},2,{c.t},{str(ok).lower()},0,0")
            m = merged_canonical(n, k)
            mono = monochromatic_edges(m, g)
            from math import comb

            ok = mono == comb(2 * k, k) // 2
            failed |= not ok
            rows.append(f"merged,{n},{k},2,{m.t},{str(ok).lower()},{mono},0")

    for k in ks:
        if k < 3:
            rows.append(f"starfree,0,{k},2,0,skipped,0,0")
            continue
        if k > 4:
            continue  # n = 2(k-1)^2 grows fast; desk scale stops at k=4
        c = starfree_coloring(k)
        n = c.params.n
        g = full_graph(c.params)
        proper = verify_proper(c, g).proper
        starfree = all(
            star_center(Family([KSubset(mask_of_rank(rk, k), k) for rk in ranks], GroundSet(n)))
            is None
            for ranks in c.classes().values()
        )
        ok = proper and starfree and c.t == 2 * (k - 2) * (k - 1)
        failed |= not ok
        rows.append(f"starfree,{n},{k},2,{c.t},{str(ok).lower()},0,0")

    for k in ks:
        n = 3 * k
        c = triple_block_coloring(n, k)
        unc = len(c.uncolored_ranks())
        classes_ok = all(
            is_intersecting(Family([KSubset(mask_of_rank(rk, k), k) for rk in ranks], GroundSet(n)))
            for ranks in c.classes().values()
        )
        ok = unc == 3**k and classes_ok
        failed |= not ok
        rows.append(f"triple-block,{n},{k},2,{c.t},{str(ok).lower()},0,{unc}")

    lines = _meta(f"verify-constructions k={','.join(map(str, ks))}") + rows
    _emit(lines, args.out)
    return 1 if failed else 0


def _chi_task(n: int, k: int, r: int, p: Fraction, seed: int, budget_ms: int, with_timing: bool) -> tuple[str, bool]:
    t0 = time.monotonic()
    g = sample_subgraph(KneserParams(n, k, r), p, seed)
    res = chromatic_number(g.view(), SolveBudget(wall_ms=budget_ms))
    millis = int((time.monotonic() - t0) * 1000)
    chi_full = n - 2 * k + 2
    gap = chi_full - res.value
    row = (
        f"{n},{k},{r},{p.numerator},{p.denominator},{seed},"
        f"{res.value},{chi_full},{gap},{res.optimality},{res.stats['nodes']}"
    )
    if with_timing:
        row += f",{millis}"
    return row, res.proven


def cmd_chi_random(args: argparse.Namespace) -> int:
    ns = _parse_n_values(args)
    seeds = _parse_seeds(args.seeds)
    p = parse_probability(args.p)
    k, r = args.k, args.r
    if r != 2:
        raise SystemExit2("chi-random runs the graph case r=2")
    with_timing = not args.no_timing
    header = "n,k,r,p_num,p_den,seed,chi_sample,chi_full,gap,optimality,nodes"
    if with_timing:
        header += ",millis"
    tasks = [(n, seed) for n in ns for seed in seeds]
    all_proven = True
    rows = [header]
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        futures = [
            pool.submit(_chi_task, n, k, r, p, seed, args.budget_ms, with_timing)
            for n, seed in tasks
        ]
        for fut in futures:
            row, proven = fut.result()
            rows.append(row)
            all_proven &= proven
    config = f"chi-random n={args.n_range or args.n} k={k} r={r} p={p} seeds={args.seeds}"
    _emit(_meta(config) + rows, args.out)
    return 0 if all_proven else 3


def cmd_search_empty(args: argparse.Namespace) -> int:
    ns = _parse_n_values(args)
    sample_seeds = _parse_seeds(args.seeds)
    search_seeds = _parse_seeds(args.search_seeds) if args.search_seeds else [0]
    p = parse_probability(args.p)
    rows = ["n,k,r,l,sample_seed,search_seed,found,restarts,millis"]
    budget = SolveBudget(node_limit=args.budget_nodes, wall_ms=args.budget_ms)
    wrote_witness = 0
    for n in ns:
        params = KneserParams(n, args.k, args.r)
        for s_seed in sample_seeds:
            g = sample_subgraph(params, p, s_seed)
            for q_seed in search_seeds:
                out = search_empty_family(g, args.l, budget, seed=q_seed)
                rows.append(
                    f"{n},{args.k},{args.r},{args.l},{s_seed},{q_seed},"
                    f"{str(out.found).lower()},{out.restarts},{out.millis}"
                )
                if out.found and args.witness_dir:
                    path = Path(args.witness_dir)
                    path.mkdir(parents=True, exist_ok=True)
                    name = f"witness_n{n}_l{args.l}_s{s_seed}_q{q_seed}.txt"
                    (path / name).write_text(out.witness.to_text())
                    wrote_witness += 1
    config = (
        f"search-empty n={args.n_range or args.n} k={args.k} r={args.r} l={args.l} "
        f"p={p} seeds={args.seeds} search_seeds={args.search_seeds or '0'}"
    )
    _emit(_meta(config) + rows, args.out)
    return 0


def cmd_zeta(args: argparse.Namespace) -> int:
    ns = _parse_n_values(args)
    k = args.k
    rows = ["n,k,lower,upper,exact"]
    budget = SolveBudget(wall_ms=args.budget_ms)
    for n in ns:
        t = n - 2 * k + 1
        if t < 1:
            continue
        res = min_mono_edges(n, k, t, budget)
        rows.append(f"{n},{k},{res.lower},{res.upper},{str(res.proven).lower()}")
    _emit(_meta(f"zeta n={args.n_range or args.n} k={k}") + rows, args.out)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    ns = _parse_n_values(args)
    seeds = _parse_seeds(args.seeds) if args.seeds else [0]
    p = parse_probability(args.p) if args.p else None
    budget = SolveBudget(wall_ms=args.budget_ms)
    rows = ["op,n,k,r,t,p_num,p_den,seed,value,optimality,nodes,millis"]
    exhausted = False
    for n in ns:
        for seed in seeds:
            t0 = time.monotonic()
            params = KneserParams(n, args.k, args.r)
            if p is not None:
                view = sample_subgraph(params, p, seed).view()
                p_num, p_den = p.numerator, p.denominator
            else:
                view = full_graph(params)
                p_num, p_den = 1, 1
            if args.op == "chi":
                res = chromatic_number(view, budget)
            elif args.op == "alpha":
                res = independence_number(view, budget)
            elif args.op == "hyperchi":
                res = hypergraph_chromatic_number(params, view, budget)
            elif args.op == "zeta":
                res = min_mono_edges(n, args.k, args.t or (n - 2 * args.k + 1), budget)
            elif args.op == "maxsub":
                res = max_colorable_subset(n, args.k, args.t or (n - 2 * args.k + 1), budget)
            elif args.op == "union":
                res = union_of_stars_cover_search(n, args.k, args.t or 2, budget)
            else:
                raise SystemExit2(f"unknown op {args.op!r}")
            millis = int((time.monotonic() - t0) * 1000)
            exhausted |= not res.proven
            t_used = args.t if args.t else ""
            row = (
                f"{args.op},{n},{args.k},{args.r},{t_used},{p_num},{p_den},{seed},"
                f"{res.value},{res.optimality},{res.stats.get('nodes', 0)}"
            )
            row += f",{millis}" if not args.no_timing else ","
            rows.append(row)
    config = f"solve op={args.op} n={args.n_range or args.n} k={args.k} r={args.r}"
    _emit(_meta(config) + rows, args.out)
    return 3 if exhausted else 0


def cmd_sample(args: argparse.Namespace) -> int:
    ns = _parse_n_values(args)
    seeds = _parse_seeds(args.seeds)
    p = parse_probability(args.p)
    if not args.out:
        raise SystemExit2("sample requires --out")
    many = len(ns) * len(seeds) > 1
    for n in ns:
        for seed in seeds:
            g = sample_subgraph(KneserParams(n, args.k, args.r), p, seed)
            path = Path(args.out)
            if many:
                path = path.with_name(f"{path.stem}_n{n}_s{seed}{path.suffix}")
            path.write_text(g.to_text())
    return 0


def cmd_families(args: argparse.Namespace) -> int:
    text = Path(args.infile).read_text()
    fam = Family.from_text(text, args.n)
    rows = ["size,k,delta,gamma,disjoint_pairs,star_center,intersecting,largest_intersecting,ell,mode"]
    sub = largest_intersecting_subfamily(fam, mode="auto")
    center = star_center(fam)
    rows.append(
        f"{len(fam)},{fam.k or 0},{fam.max_degree},{diversity(fam)},{disjoint_pairs(fam)},"
        f"{center if center is not None else ''},{str(is_intersecting(fam)).lower()},"
        f"{sub.size},{len(fam) - sub.size},{sub.mode}"
    )
    _emit(_meta(f"families in={args.infile} n={args.n}") + rows, args.out)
    return 0


def cmd_build_k2(args: argparse.Namespace) -> int:
    ns = _parse_n_values(args)
    seeds = _parse_seeds(args.seeds)
    p = parse_probability(args.p)
    rows = ["n,h,sample_seed,build_seed,h_achieved,colors,millis"]
    budget = SolveBudget(node_limit=args.budget_nodes, wall_ms=args.budget_ms)
    for n in ns:
        for seed in seeds:
            g = sample_subgraph(KneserParams(n, 2, 2), p, seed)
            out = sequential_k2_build(g, args.h, budget, seed=args.build_seed)
            colors = out.coloring.t if out.coloring else ""
            rows.append(f"{n},{args.h},{seed},{args.build_seed},{out.h_achieved},{colors},{out.millis}")
    config = f"build-k2 n={args.n_range or args.n} h={args.h} p={p} seeds={args.seeds}"
    _emit(_meta(config) + rows, args.out)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kneser-lab",
        description="Kneser graph experiments: constructions, exact solvers, random subgraphs",
    )
    ap.add_argument("--version", action="version", version=f"kneser-lab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p_: argparse.ArgumentParser, seeds_required: bool = False, p_default: str | None = "1/2") -> None:
        p_.add_argument("--n", type=int)
        p_.add_argument("--n-range", help="inclusive range a..b")
        p_.add_argument("--k", type=int, default=2)
        p_.add_argument("--r", type=int, default=2)
        p_.add_argument("--p", default=p_default, help="retention probability NUM/DEN")
        p_.add_argument("--seeds", required=seeds_required, help="comma-separated seed list")
        p_.add_argument("--budget-ms", type=int, default=60_000)
        p_.add_argument("--budget-nodes", type=int, default=2_000_000)
        p_.add_argument("--out", help="output path (default stdout)")
        p_.add_argument("--no-timing", action="store_true", help="omit wall-clock columns")

    pv = sub.add_parser("verify-constructions", help="run construction invariant suite")
    pv.add_argument("--k", help="comma-separated k list (default 2,3,4)")
    pv.add_argument("--out")
    pv.set_defaults(func=cmd_verify_constructions)

    pc = sub.add_parser("chi-random", help="chromatic number sweep over sampled graphs")
    common(pc, seeds_required=True)
    pc.set_defaults(func=cmd_chi_random)

    ps = sub.add_parser("search-empty", help="randomized empty-family search")
    common(ps, seeds_required=True)
    ps.add_argument("--l", type=int, required=True, help="target family length")
    ps.add_argument("--search-seeds", help="comma-separated search seeds (default 0)")
    ps.add_argument("--witness-dir", help="directory for witness files")
    ps.set_defaults(func=cmd_search_empty)

    pz = sub.add_parser("zeta", help="monochromatic-edge bounds at n-2k+1 colors")
    common(pz)
    pz.set_defaults(func=cmd_zeta)

    po = sub.add_parser("solve", help="run one exact solver")
    common(po, p_default=None)  # no --p means the full graph
    po.add_argument("--op", required=True, choices=["chi", "alpha", "hyperchi", "zeta", "maxsub", "union"])
    po.add_argument("--t", type=int, help="color count for zeta/maxsub/union")
    po.set_defaults(func=cmd_solve)

    pm = sub.add_parser("sample", help="materialize and persist a sampled graph")
    common(pm, seeds_required=True)
    pm.set_defaults(func=cmd_sample)

    pf = sub.add_parser("families", help="analytics over a family file")
    pf.add_argument("--in", dest="infile", required=True)
    pf.add_argument("--n", type=int, required=True)
    pf.add_argument("--out")
    pf.set_defaults(func=cmd_families)

    pb = sub.add_parser("build-k2", help="sequential k=2 coloring builder")
    common(pb, seeds_required=True)
    pb.add_argument("--h", type=int, required=True, help="target saving h'")
    pb.add_argument("--build-seed", type=int, default=0)
    pb.set_defaults(func=cmd_build_k2)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        # argparse uses exit code 2 for usage errors already
        raise
    try:
        return args.func(args)
    except SystemExit2:
        raise
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
