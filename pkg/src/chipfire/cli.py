"""Command-line entry point: ``chipfire <subcommand> ...``.

Exit codes: 0 success, 1 bad input or inadmissible parameters, 2 an
internal invariant was violated.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import bench as bench_mod
from .burning import BurnTrace, modified_dhar, reduce
from .divisors import Divisor, format_divisor, parse_divisor, sub, canonical, degree
from .errors import DomainError, InvariantViolation
from .families import build_family
from .gonality import gonality, gonality_sequence, rank
from .graph import Multigraph, edge_connectivity, format_graph, genus, read_graph
from .theory import brill_noether_bound, expected_sequence


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _load_graph(path: str) -> Multigraph:
    try:
        return read_graph(path)
    except OSError as exc:
        raise DomainError(f"cannot read graph file {path}: {exc.strerror}") from None


def _divisor_arg(g: Multigraph, args) -> Divisor:
    if getattr(args, "divisor", None):
        try:
            text = Path(args.divisor).read_text()
        except OSError as exc:
            raise DomainError(f"cannot read divisor file {args.divisor}: {exc.strerror}") from None
        lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
        text = " ".join(ln for ln in lines if ln.strip())
    elif args.chips is not None:
        text = args.chips
    else:
        raise DomainError("give the divisor with --chips or --divisor")
    return parse_divisor(text, g.n)


def _parse_params(text: str | None) -> dict[str, str]:
    params: dict[str, str] = {}
    if not text:
        return params
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise DomainError(f"bad parameter {item!r}; expected key=value")
        params[key.strip()] = value.strip()
    return params


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_family(args) -> int:
    g = build_family(args.name, _parse_params(args.params))
    _emit(format_graph(g), args.out)
    return 0


def cmd_rank(args) -> int:
    g = _load_graph(args.graph)
    g.require_connected()
    print(rank(g, _divisor_arg(g, args)))
    return 0


def cmd_reduce(args) -> int:
    g = _load_graph(args.graph)
    d = _divisor_arg(g, args)
    trace = BurnTrace(log_beta=True) if args.trace else None
    red, _ = reduce(g, args.q, d, trace)
    print(format_divisor(red))
    if trace is not None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["record", "index", "value"])
        writer.writerow(["passes", "", trace.passes])
        writer.writerow(["borrows", "", trace.borrows])
        for v, count in enumerate(trace.firings or [0] * g.n):
            writer.writerow(["firings", v, count])
        for i, entry in enumerate(trace.beta_log):
            writer.writerow(["beta", i, " ".join(str(x) for x in entry[args.q])])
    return 0


def cmd_eff(args) -> int:
    g = _load_graph(args.graph)
    found = modified_dhar(g, _divisor_arg(g, args))
    print("NONE" if found is None else format_divisor(found[0]))
    return 0


def cmd_gon(args) -> int:
    g = _load_graph(args.graph)
    result = gonality(g, args.r, reduced_only=args.reduced_only, jobs=args.jobs)
    print(f"gon_{args.r} = {result.value}")
    print(f"witness = {format_divisor(result.witness)}")
    return 0


def cmd_sequence(args) -> int:
    g = _load_graph(args.graph)
    seq = gonality_sequence(g, args.upto, reduced_only=args.reduced_only, jobs=args.jobs)
    for t in seq.terms:
        print(t)
    return 0


def cmd_expected(args) -> int:
    seq = expected_sequence(args.genus, args.gon1, args.upto, args.gon2)
    print(" ".join(str(t) for t in seq.terms))
    return 0


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    g.require_connected()
    gen = genus(g)
    problems: list[str] = []
    print(f"vertices = {g.n}")
    print(f"edges = {g.num_edges}")
    print(f"genus = {gen}")
    conn = edge_connectivity(g) if g.n >= 2 else None
    print(f"edge_connectivity = {conn if conn is not None else 'n/a'}")
    print(f"brill_noether_bound = {brill_noether_bound(gen)}")

    # Riemann-Roch on a few fixed divisors: K, 0, K - (0), (0), g*(0)
    k = canonical(g)
    spots = [k, (0,) * g.n, sub(k, _unit(g.n)), _unit(g.n), tuple(gen if v == 0 else 0 for v in range(g.n))]
    for d in spots:
        lhs = rank(g, d) - rank(g, sub(k, d))
        rhs = degree(d) + 1 - gen
        ok = lhs == rhs
        print(f"riemann_roch [{format_divisor(d)}] = {'ok' if ok else 'FAIL'}")
        if not ok:
            problems.append(f"Riemann-Roch fails on {d}")

    upto = gen + 1
    seq = gonality_sequence(g, upto, reduced_only=True, jobs=args.jobs)
    print("sequence = " + " ".join(str(t) for t in seq.terms))
    if conn is not None and seq.terms[0] < min(conn, g.n):
        problems.append(f"gon_1 = {seq.terms[0]} below min(edge connectivity, |V|)")
    if gen <= 5:
        table = expected_sequence(gen, seq.gon1 if gen >= 2 else None, upto)
        ok = table.terms == seq.terms
        print("table = " + " ".join(str(t) for t in table.terms) + (" (match)" if ok else " (MISMATCH)"))
        if not ok:
            problems.append("sequence differs from the genus table")
    for p in problems:
        print(f"violation: {p}")
    print("status = " + ("ok" if not problems else "FAIL"))
    return 2 if problems else 0


def _unit(n: int) -> Divisor:
    return tuple(1 if v == 0 else 0 for v in range(n))


def cmd_bench(args) -> int:
    cfg = bench_mod.BenchConfig(
        n_min=args.n_min, n_max=args.n_max, graphs_per_n=args.graphs_per_n,
        p=args.p, seed=args.seed, r=args.r, task=args.task, repeats=args.repeats,
    )
    rows = list(bench_mod.run_bench(cfg))
    bench_mod.write_rows(rows, args.out)
    if args.summary or args.plot:
        summary = bench_mod.summarize(rows)
        if args.summary:
            bench_mod.write_summary(summary, args.summary)
        if args.plot:
            bench_mod.write_plot_data(summary, args.plot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chipfire", description="Chip-firing divisors and graph gonality.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub_ = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub_.add_parser("family", help="write a named graph family")
    p.add_argument("--name", required=True)
    p.add_argument("--params", default="", help="comma-separated key=value pairs")
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)

    def divisor_flags(p: argparse.ArgumentParser, allow_file: bool) -> None:
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--chips", help='space-separated chips, e.g. "-1 2 0"')
        if allow_file:
            group.add_argument("--divisor", help="file holding the chip line")

    p = sub_.add_parser("rank", help="Baker-Norine rank of a divisor")
    p.add_argument("--graph", required=True)
    divisor_flags(p, True)
    p.set_defaults(func=cmd_rank)

    p = sub_.add_parser("reduce", help="q-reduced divisor")
    p.add_argument("--graph", required=True)
    divisor_flags(p, False)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="append a trace as CSV")
    p.set_defaults(func=cmd_reduce)

    p = sub_.add_parser("eff", help="effective equivalent divisor or NONE")
    p.add_argument("--graph", required=True)
    divisor_flags(p, False)
    p.set_defaults(func=cmd_eff)

    p = sub_.add_parser("gon", help="r-th gonality with witness")
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--reduced-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_gon)

    p = sub_.add_parser("sequence", help="gon_1 .. gon_upto, one per line")
    p.add_argument("--graph", required=True)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--reduced-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sequence)

    p = sub_.add_parser("expected", help="tabulated sequence for genus <= 6")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--gon1", type=int)
    p.add_argument("--gon2", type=int)
    p.add_argument("--upto", type=int, required=True)
    p.set_defaults(func=cmd_expected)

    p = sub_.add_parser("verify", help="consistency report for one graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub_.add_parser("bench", help="time the three winnability pipelines")
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--graphs-per-n", type=int, default=19)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r", type=int)
    p.add_argument("--task", choices=bench_mod.TASKS, default="decide_rank")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--out", required=True)
    p.add_argument("--summary")
    p.add_argument("--plot", help="tab-separated plot data file")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
