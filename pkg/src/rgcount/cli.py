"""Command-line front end.

Subcommands
-----------
gen         sample a G(n, p) graph into an edge-list file
exact       brute-force count of cliques / independent sets / clique covers
estimate    (epsilon, delta) Monte Carlo estimate, with oracle comparison for n <= 20
analytic    evaluate moments, nestings, f-polynomials and critical ratios exactly
experiment  run a parameter grid from a key = value spec file (or a preset)

Usage examples
--------------
  rgcount gen --n 12 --p 1/2 --seed 3 --out g12.txt
  rgcount exact g12.txt --target cliques --k 3
  rgcount estimate --n 12 --p 1/2 --seed 3 --k 3 --epsilon 0.1 --delta 0.1
  rgcount analytic fpoly --k 3 --j 4
  rgcount experiment --preset moment-sweep --set n=0..30 --set k=1..8
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import analytic, oracles
from .estimators import TARGETS, ConfigurationError, SampleConfig, estimate
from .experiments import ORACLE_MAX_N, ResultRow, format_fraction, parse_spec, run_experiment, write_rows
from .graph import GenSpec, GraphFormatError, generate_gnp, load_graph, save_graph

EXIT_USAGE = 2


def _prob(text: str) -> Fraction:
    try:
        return analytic.as_probability(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(rows: list[ResultRow], fmt: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            write_rows(rows, fmt, fh)
    else:
        sys.stdout.write(write_rows(rows, fmt))


def cmd_gen(args: argparse.Namespace) -> int:
    g = generate_gnp(GenSpec(args.n, args.p, args.seed))
    try:
        save_graph(g, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}: n={g.n} m={g.edge_count}", file=sys.stderr)
    return 0


def cmd_exact(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    work = (
        oracles.predicted_cover_work(g.n, args.k)
        if args.target == "covers"
        else oracles.predicted_clique_work(g.n, args.k)
    )
    if work > args.node_budget:
        print(f"warning: predicted work {work} exceeds node budget {args.node_budget}", file=sys.stderr)
    t0 = time.perf_counter()
    if args.target == "cliques":
        value = oracles.count_cliques_exact(g, args.k)
    elif args.target == "independent-sets":
        value = oracles.count_independent_sets_exact(g, args.k)
    else:
        if g.n % args.k:
            print(f"error: covers need k | n (k={args.k}, n={g.n})", file=sys.stderr)
            return EXIT_USAGE
        value = oracles.count_clique_covers_exact(g, args.k)
    row = ResultRow(
        experiment_id="exact",
        preset="exact",
        target=args.target,
        n=g.n,
        k=args.k,
        p="",
        seed="",
        estimate_exact=str(value),
        oracle=str(value),
        seconds=f"{time.perf_counter() - t0:.4f}",
        detail=f"graph={args.graph}",
    )
    _emit([row], args.format, args.out)
    return 0


def cmd_estimate(args: argparse.Namespace) -> int:
    if args.graph:
        g = load_graph(args.graph)
        source = f"graph={args.graph}"
    else:
        if args.n is None or args.p is None:
            print("error: give a graph file or both --n and --p", file=sys.stderr)
            return EXIT_USAGE
        gseed = args.graph_seed if args.graph_seed is not None else args.seed
        g = generate_gnp(GenSpec(args.n, args.p, gseed))
        source = f"gnp seed={gseed}"
    if args.target == "covers" and g.n % args.k:
        print(f"error: covers need k | n (k={args.k}, n={g.n})", file=sys.stderr)
        return EXIT_USAGE
    cfg = SampleConfig(args.epsilon, args.delta, args.rho, args.mode)
    t0 = time.perf_counter()
    rep = estimate(g, args.k, args.target, cfg, args.seed, p=args.p, exact=args.exact_mode)
    row = ResultRow(
        experiment_id="estimate",
        preset="estimate",
        target=args.target,
        n=g.n,
        k=args.k,
        p=format_fraction(args.p) if args.p is not None else "",
        seed=args.seed,
        epsilon=repr(args.epsilon),
        delta=repr(args.delta),
        mode=args.mode,
        samples=rep.samples,
        estimate_log10=repr(rep.estimate.log10) if not rep.estimate.is_zero else "-inf",
        estimate_exact=format_fraction(rep.estimate.exact) if args.exact_mode else "",
        empirical_crr=repr(rep.critical_ratio),
        analytic_crr=repr(float(rep.rho / 4)) if args.rho is None else "",
        detail=f"{source}; zeros={rep.zeros}; ci=[{float(rep.ci_low):.6g}, {float(rep.ci_high):.6g}]",
    )
    if g.n <= ORACLE_MAX_N:
        if args.target == "cliques":
            truth = oracles.count_cliques_exact(g, args.k)
        elif args.target == "independent-sets":
            truth = oracles.count_independent_sets_exact(g, args.k)
        else:
            truth = oracles.count_clique_covers_exact(g, args.k)
        row.oracle = str(truth)
        if truth:
            row.rel_error = repr(float(rep.estimate) / truth - 1)
    row.seconds = f"{time.perf_counter() - t0:.4f}"
    _emit([row], args.format, args.out)
    return 0


def _fmt_exact(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, Fraction)):
        return format_fraction(x)
    return repr(x)


_ANALYTIC_NEEDS = {
    "moment": ("n", "k", "p"),
    "moment-brute": ("n", "k", "p"),
    "stirling": ("k", "j"),
    "fmoment": ("n", "j", "p"),
    "nesting": ("k", "n", "p"),
    "nesting-brute": ("k", "n", "p"),
    "fpoly": ("k", "j"),
    "crr": ("k", "n", "p"),
    "crr-cover-step": ("k", "n", "p"),
    "crr-cover": ("k", "n", "p"),
    "h": ("k", "i", "n", "p"),
    "fbound": ("k", "i", "p"),
    "g": ("n", "i", "p"),
}


def cmd_analytic(args: argparse.Namespace) -> int:
    q = args.query
    missing = [f"--{name}" for name in _ANALYTIC_NEEDS[q] if getattr(args, name) is None]
    if missing:
        print(f"error: analytic {q} needs {' '.join(missing)}", file=sys.stderr)
        return EXIT_USAGE
    note = ""
    if q == "moment":
        value = analytic.binomial_moment_closed(args.n, args.k, args.p)
    elif q == "moment-brute":
        value = oracles.binomial_moment_bruteforce(args.n, args.k, args.p)
    elif q == "stirling":
        value = analytic.stirling_closed(args.k, args.j)
    elif q == "fmoment":
        value = analytic.factorial_moment_identity_check(args.n, args.j, args.p)
    elif q == "nesting":
        value = analytic.nesting_closed(args.k, args.n, args.p)
    elif q == "nesting-brute":
        value = oracles.nesting_bruteforce(args.k, args.n, args.p)
    elif q == "fpoly":
        value = analytic.f_polynomial(args.k, args.j)
        if value.is_zero() and not args.k <= args.j <= 2 * args.k - 1:
            note = f"note: (k={args.k}, j={args.j}) lies outside k <= j <= 2k-1; f is identically zero"
    elif q == "crr":
        value = analytic.crr_clique(args.k, args.n, args.p)
    elif q == "crr-cover-step":
        value = analytic.crr_cover_step(args.k, args.n, args.p, literal=args.literal)
    elif q == "crr-cover":
        value = analytic.crr_cover_total(args.k, args.n, args.p, literal=args.literal)
    elif q == "h":
        value = analytic.h_bound(args.k, args.i, args.n, args.p)
    elif q == "fbound":
        value = analytic.f_upper_bound_check(args.k, args.i, args.p)
    elif q == "g":
        value = analytic.g_exponent(args.n, args.i, args.eps_n, args.p)
    else:  # pragma: no cover - argparse restricts choices
        raise AssertionError(q)
    text = str(value) if q == "fpoly" else _fmt_exact(value)
    if args.format == "json":
        print(json.dumps({"query": q, "value": text, "note": note}))
    else:
        print(text)
    if note:
        print(note, file=sys.stderr)
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = ""
    if args.preset:
        text += f"\ntarget = {args.preset}\n"
    for kv in args.set or []:
        text += f"\n{kv}\n"
    spec = parse_spec(text)
    if args.jobs is not None:
        spec.jobs = args.jobs
    if args.format is not None:
        spec.format = args.format
    if args.out is not None:
        spec.output = args.out
    rows = run_experiment(spec)
    _emit(rows, spec.format, spec.output)
    failed = [r for r in rows if r.status != "ok"]
    for r in failed:
        print(f"failed row {r.experiment_id} (n={r.n}, k={r.k}, p={r.p}, seed={r.seed}): {r.detail}", file=sys.stderr)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rgcount", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("gen", help="sample a G(n, p) graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=_prob, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("exact", help="brute-force exact count")
    p.add_argument("graph")
    p.add_argument("--target", choices=TARGETS, default="cliques")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--node-budget", type=int, default=10**8)
    fmt_opts(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("estimate", help="Monte Carlo estimate")
    p.add_argument("graph", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=_prob, help="model edge probability (derives rho when --rho is absent)")
    p.add_argument("--graph-seed", type=int, help="seed for generating the graph (default: --seed)")
    p.add_argument("--target", choices=TARGETS, default="cliques")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--rho", type=float)
    p.add_argument("--mode", choices=("fixed", "median-of-means"), default="fixed")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact-mode", action="store_true", help="exact rational arithmetic for all moments")
    fmt_opts(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("analytic", help="exact analytic quantities")
    p.add_argument(
        "query",
        choices=(
            "moment", "moment-brute", "stirling", "fmoment", "nesting", "nesting-brute",
            "fpoly", "crr", "crr-cover-step", "crr-cover", "h", "fbound", "g",
        ),
    )
    p.add_argument("--n", type=int, help="n, or residual size l for crr-cover-step / h")
    p.add_argument("--k", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--p", type=_prob)
    p.add_argument("--eps-n", type=float, default=0.0)
    p.add_argument("--literal", action="store_true", help="use the mismatched residual sizes for cover ratios")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("experiment", help="run a parameter grid")
    p.add_argument("spec", nargs="?", help="key = value spec file")
    p.add_argument("--preset", help="preset name (overrides the spec file's target)")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="extra spec line; repeatable")
    p.add_argument("--jobs", type=int)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, GraphFormatError, analytic.UndefinedRatioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
