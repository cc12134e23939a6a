"""Timing comparison of the three winnability pipelines on random graphs.

For every vertex count ``n`` and graph id a connected ``G(n, p)`` graph is
drawn, a fixed panel of low-degree divisors is built, and the same task is
run with each pipeline (``full_reduce``, ``early_return``, ``modified``).
Outcomes must agree; a disagreement is a correctness bug and raises.
"""

from __future__ import annotations

import csv
import logging
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from statistics import median
from typing import Iterable, Iterator, Sequence

from .burning import BurnTrace
from .divisors import Divisor, degree, point, positive_part
from .errors import DomainError, InvariantViolation
from .families import MASK64, SplitMix64, mix64, random_connected
from .gonality import ORACLES, _opponent_moves, gonality, has_rank_at_least
from .graph import Multigraph, diameter

log = logging.getLogger(__name__)

ALGORITHMS = ("full_reduce", "early_return", "modified")
TASKS = ("decide_rank", "gonality")
ROW_HEADER = "n,graph_id,seed,algorithm,elapsed_ns,passes,total_firings,outcome"
SUMMARY_HEADER = "n,algorithm,mean_ns,median_ns,max_ns,mean_passes,mean_firings"
PANEL_DEGREES = (1, 2, 3, 4)


@dataclass(frozen=True)
class BenchConfig:
    n_min: int = 5
    n_max: int = 12
    graphs_per_n: int = 19
    p: float = 0.5
    seed: int = 0
    r: int | None = None
    task: str = "decide_rank"
    repeats: int = 5

    def __post_init__(self) -> None:
        if self.n_min < 2 or self.n_max < self.n_min:
            raise DomainError("need 2 <= n_min <= n_max")
        if self.graphs_per_n < 1:
            raise DomainError("graphs_per_n must be >= 1")
        if not 0 < self.p <= 1:
            raise DomainError("p must lie in (0, 1]")
        if self.r is not None and self.r < 1:
            raise DomainError("r must be >= 1")
        if self.task not in TASKS:
            raise DomainError(f"task must be one of {TASKS}")
        if self.repeats < 1:
            raise DomainError("repeats must be >= 1")

    @property
    def ranks(self) -> tuple[int, ...]:
        return (self.r,) if self.r is not None else (1, 2)


@dataclass(frozen=True)
class BenchRow:
    n: int
    graph_id: int
    seed: int
    algorithm: str
    elapsed_ns: int
    passes: int
    total_firings: int
    outcome: str
    # sum over modified_dhar calls of |V| * diam * deg(D^+); 0 for other pipelines
    firing_bound: int = field(default=0, compare=False)

    def csv_fields(self) -> list:
        return [self.n, self.graph_id, self.seed, self.algorithm,
                self.elapsed_ns, self.passes, self.total_firings, self.outcome]


@dataclass(frozen=True)
class SummaryRow:
    n: int
    algorithm: str
    mean_ns: Fraction
    median_ns: Fraction
    max_ns: int
    mean_passes: Fraction
    mean_firings: Fraction

    def csv_fields(self) -> list:
        return [self.n, self.algorithm, round(self.mean_ns), round(self.median_ns),
                self.max_ns, f"{float(self.mean_passes):.3f}", f"{float(self.mean_firings):.3f}"]


def instance_seed(base: int, n: int, graph_id: int) -> int:
    """``base XOR splitmix64_finalizer((n << 32) | graph_id)``."""
    return (base ^ mix64(((n << 32) | graph_id) & MASK64)) & MASK64


def divisor_panel(n: int, seed: int) -> list[Divisor]:
    """Low-degree effective divisors for one instance.

    For each degree ``k`` in 1..4: ``k`` chips stacked on a random vertex,
    then two divisors dropping ``k`` chips on independently chosen vertices.
    Drawn from a SplitMix64 stream seeded with ``seed ^ 1``.
    """
    rng = SplitMix64(seed ^ 1)
    panel = []
    for k in PANEL_DEGREES:
        panel.append(point(n, rng.below(n), k))
        for _ in range(2):
            chips = [0] * n
            for _ in range(k):
                chips[rng.below(n)] += 1
            panel.append(tuple(chips))
    return panel


class _Recorder:
    """Oracle wrapper that traces every call and checks the firing bounds."""

    def __init__(self, g: Multigraph, algorithm: str) -> None:
        self.g = g
        self.algorithm = algorithm
        self.oracle = ORACLES[algorithm]
        self.diam = diameter(g)
        self.passes = 0
        self.firings = 0
        self.bound = 0

    def __call__(self, g: Multigraph, d: Sequence[int], trace: BurnTrace | None = None) -> bool:
        t = BurnTrace()
        result = self.oracle(g, d, t)
        self.passes += t.passes
        self.firings += t.total_firings
        if self.algorithm == "modified":
            plus = degree(positive_part(d))
            per_vertex = self.diam * plus
            if t.max_firings > per_vertex or t.passes > g.n * per_vertex:
                raise InvariantViolation(
                    f"firing bound violated on {d}: max {t.max_firings} > {per_vertex} "
                    f"or passes {t.passes} > {g.n * per_vertex}"
                )
            self.bound += g.n * per_vertex
        return result


def _run_task(g: Multigraph, cfg: BenchConfig, panel: list[Divisor], oracle) -> str:
    if cfg.task == "decide_rank":
        return "".join(
            "1" if has_rank_at_least(g, d, r, oracle) else "0"
            for d in panel
            for r in cfg.ranks
        )
    return ";".join(
        str(gonality(g, r, reduced_only=True, oracle=oracle).value) for r in cfg.ranks
    )


def bench_instance(cfg: BenchConfig, n: int, graph_id: int) -> list[BenchRow]:
    """Run every pipeline on one instance; rows in ``ALGORITHMS`` order."""
    seed = instance_seed(cfg.seed, n, graph_id)
    g = random_connected(n, cfg.p, seed)
    panel = divisor_panel(n, seed)
    for r in cfg.ranks:
        _opponent_moves(g, r)
    rows = []
    for algorithm in ALGORITHMS:
        recorder = _Recorder(g, algorithm)
        outcome = _run_task(g, cfg, panel, recorder)
        oracle = ORACLES[algorithm]
        best = None
        for _ in range(cfg.repeats):
            t0 = time.perf_counter_ns()
            _run_task(g, cfg, panel, oracle)
            elapsed = time.perf_counter_ns() - t0
            best = elapsed if best is None else min(best, elapsed)
        rows.append(BenchRow(n, graph_id, seed, algorithm, best, recorder.passes,
                             recorder.firings, outcome, recorder.bound))
    outcomes = {row.outcome for row in rows}
    if len(outcomes) != 1:
        raise InvariantViolation(
            f"pipelines disagree on n={n} graph {graph_id}: "
            + ", ".join(f"{row.algorithm}={row.outcome}" for row in rows)
        )
    return rows


def run_bench(cfg: BenchConfig) -> Iterator[BenchRow]:
    """Rows ordered by ``(n, graph_id, algorithm)`` with ``ALGORITHMS`` order."""
    same_passes = 0
    total = 0
    for n in range(cfg.n_min, cfg.n_max + 1):
        for graph_id in range(cfg.graphs_per_n):
            rows = bench_instance(cfg, n, graph_id)
            total += 1
            same_passes += rows[1].passes == rows[2].passes
            yield from rows
    log.info("early_return and modified pass counts equal on %d of %d instances",
             same_passes, total)


def summarize(rows: Iterable[BenchRow]) -> list[SummaryRow]:
    """Per ``(n, algorithm)`` mean/median/max statistics, exact until output."""
    groups: dict[tuple[int, str], list[BenchRow]] = defaultdict(list)
    for row in rows:
        if row.algorithm == "modified" and row.firing_bound and row.total_firings > row.firing_bound:
            raise InvariantViolation(
                f"n={row.n} graph {row.graph_id}: {row.total_firings} firings "
                f"exceed the bound {row.firing_bound}"
            )
        groups[(row.n, row.algorithm)].append(row)
    if not groups:
        raise DomainError("nothing to summarize")
    order = {a: i for i, a in enumerate(ALGORITHMS)}
    out = []
    for (n, algorithm) in sorted(groups, key=lambda key: (key[0], order.get(key[1], 99))):
        group = groups[(n, algorithm)]
        count = len(group)
        elapsed = [Fraction(r.elapsed_ns) for r in group]
        out.append(SummaryRow(
            n, algorithm,
            mean_ns=sum(elapsed) / count,
            median_ns=median(elapsed),
            max_ns=max(r.elapsed_ns for r in group),
            mean_passes=Fraction(sum(r.passes for r in group), count),
            mean_firings=Fraction(sum(r.total_firings for r in group), count),
        ))
    return out


def write_rows(rows: Iterable[BenchRow], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(ROW_HEADER.split(","))
        for row in rows:
            writer.writerow(row.csv_fields())


def write_summary(summary: Iterable[SummaryRow], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER.split(","))
        for row in summary:
            writer.writerow(row.csv_fields())


def write_plot_data(summary: Sequence[SummaryRow], path: str | Path) -> None:
    """Tab-separated ``n`` vs mean nanoseconds, one column per pipeline."""
    table: dict[int, dict[str, Fraction]] = defaultdict(dict)
    for row in summary:
        table[row.n][row.algorithm] = row.mean_ns
    lines = ["# n\t" + "\t".join(ALGORITHMS)]
    for n in sorted(table):
        cells = [str(round(table[n][a])) if a in table[n] else "NaN" for a in ALGORITHMS]
        lines.append(f"{n}\t" + "\t".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")
