"""Dhar-style burning: iterated reduction and the debt-sourced variant.

Two pipelines decide whether a divisor is equivalent to an effective one:

* semi-reduce toward ``q`` then iterate Dhar passes from ``q`` until the
  whole graph burns (:func:`reduce`, or :func:`reduce_early` which stops as
  soon as debt is gone);
* :func:`modified_dhar`, which lights every vertex in debt at once and fires
  whatever survives, returning ``None`` when everything burns.

Both accept an optional :class:`BurnTrace` that is filled in place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Sequence

from .divisors import Divisor, FiringScript, normalize_script, sub, add
from .errors import DomainError
from .graph import Multigraph, diameter

ALL_BURNED: frozenset[int] = frozenset()


@dataclass
class BurnTrace:
    """Counters collected while a burning algorithm runs.

    ``firings[v]`` counts how often ``v`` was fired by burning passes (the
    borrow moves of semi-reduction are counted separately in ``borrows``).
    ``beta_log`` holds, for each pass, the distance profile of the current
    divisor seen from each tracked vertex; it is only filled when
    ``log_beta`` is set.
    """

    log_beta: bool = False
    passes: int = 0
    firings: list[int] = field(default_factory=list)
    borrows: int = 0
    fired_sets: list[frozenset[int]] = field(default_factory=list)
    beta_log: list[dict[int, tuple[int, ...]]] = field(default_factory=list)

    def _start(self, n: int) -> None:
        if not self.firings:
            self.firings = [0] * n

    @property
    def total_firings(self) -> int:
        return sum(self.firings)

    @property
    def max_firings(self) -> int:
        return max(self.firings, default=0)


def _burn(g: Multigraph, d: Sequence[int], in_w: list[bool]) -> list[int]:
    """Burn from every vertex not in ``in_w``; return ``outdeg`` of survivors.

    ``in_w`` is updated in place to the surviving set.  The returned list
    holds ``outdeg_W(v)`` for every survivor ``v``.
    """
    nbrs = g.neighbors
    n = g.n
    out = [0] * n
    stack = []
    for v in range(n):
        if in_w[v]:
            o = 0
            for u, m in nbrs[v]:
                if not in_w[u]:
                    o += m
            out[v] = o
            if d[v] < o:
                stack.append(v)
    while stack:
        v = stack.pop()
        if not in_w[v]:
            continue
        in_w[v] = False
        for u, m in nbrs[v]:
            if in_w[u]:
                out[u] += m
                if d[u] < out[u]:
                    stack.append(u)
    return out


def _fire(g: Multigraph, d: list[int], in_w: list[bool], out: list[int]) -> list[int]:
    """Fire the surviving set in place; return its members."""
    fired = [v for v in range(g.n) if in_w[v]]
    nbrs = g.neighbors
    for v in fired:
        d[v] -= out[v]
        for u, m in nbrs[v]:
            if not in_w[u]:
                d[u] += m
    return fired


def dhar_pass(g: Multigraph, sources: Iterable[int], d: Sequence[int]) -> frozenset[int]:
    """One burn from ``sources``: the unburned set, or ``ALL_BURNED`` (empty)."""
    src = frozenset(sources)
    if not src:
        raise DomainError("a burn needs at least one source")
    if len(d) != g.n:
        raise DomainError("divisor length does not match the graph")
    if not src <= set(range(g.n)):
        raise DomainError("source vertex out of range")
    if any(d[v] < 0 for v in range(g.n) if v not in src):
        raise DomainError("non-source vertices must be out of debt")
    in_w = [v not in src for v in range(g.n)]
    _burn(g, d, in_w)
    return frozenset(v for v in range(g.n) if in_w[v])


def is_reduced(g: Multigraph, q: int, d: Sequence[int]) -> bool:
    """Effective away from ``q`` and a burn from ``q`` consumes everything."""
    if any(d[v] < 0 for v in range(g.n) if v != q):
        return False
    return dhar_pass(g, [q], d) == ALL_BURNED


def compute_beta(g: Multigraph, q: int, d: Sequence[int]) -> tuple[int, ...]:
    """Chips at each distance ``0..diam`` from ``q``."""
    dist = g.distance_matrix[q]
    beta = [0] * (diameter(g) + 1)
    for v, x in enumerate(d):
        beta[dist[v]] += x
    return tuple(beta)


def semi_reduce(
    g: Multigraph, q: int, d: Sequence[int], trace: BurnTrace | None = None
) -> tuple[Divisor, FiringScript]:
    """Clear debt away from ``q`` by borrowing.

    While some ``v != q`` is in debt, ``v`` borrows (fires ``V - {v}``) as
    many times as needed to cover its own debt.  Borrow moves commute and
    stay legal under other borrows, so the result does not depend on the
    order in which debtors are served.
    """
    g.require_connected()
    if not 0 <= q < g.n:
        raise DomainError(f"vertex {q} out of range")
    val = g.valences
    nbrs = g.neighbors
    chips = list(d)
    script = [0] * g.n
    pending = [v for v in range(g.n) if v != q and chips[v] < 0]
    borrows = 0
    while pending:
        v = pending.pop()
        if chips[v] >= 0:
            continue
        times = -(chips[v] // val[v])  # ceil(-chips / val)
        chips[v] += times * val[v]
        script[v] -= times
        borrows += times
        for u, m in nbrs[v]:
            chips[u] -= times * m
            if u != q and chips[u] < 0:
                pending.append(u)
    if trace is not None:
        trace.borrows += borrows
    return tuple(chips), normalize_script(script)


def _iterate_from_q(
    g: Multigraph,
    q: int,
    d: Sequence[int],
    trace: BurnTrace | None,
    early: bool,
) -> tuple[Divisor, FiringScript, bool]:
    n = g.n
    chips, base = semi_reduce(g, q, d, trace)
    chips = list(chips)
    script = list(base)
    if trace is not None:
        trace._start(n)
    while True:
        if early and min(chips) >= 0:
            return tuple(chips), normalize_script(script), True
        if trace is not None and trace.log_beta:
            trace.beta_log.append({q: compute_beta(g, q, chips)})
        in_w = [True] * n
        in_w[q] = False
        out = _burn(g, chips, in_w)
        if not any(in_w):
            break
        fired = _fire(g, chips, in_w, out)
        for v in fired:
            script[v] += 1
        if trace is not None:
            trace.passes += 1
            for v in fired:
                trace.firings[v] += 1
            trace.fired_sets.append(frozenset(fired))
    return tuple(chips), normalize_script(script), False


def reduce(
    g: Multigraph, q: int, d: Sequence[int], trace: BurnTrace | None = None
) -> tuple[Divisor, FiringScript]:
    """The unique ``q``-reduced divisor equivalent to ``d`` and a witness script.

    ``apply_script(g, d, script)`` equals the returned divisor.
    """
    red, script, _ = _iterate_from_q(g, q, d, trace, early=False)
    return red, script


def reduce_early(
    g: Multigraph, q: int, d: Sequence[int], trace: BurnTrace | None = None
) -> tuple[Divisor, FiringScript, bool]:
    """Like :func:`reduce` but return as soon as the divisor is effective.

    The flag is ``True`` when the run stopped on an effective divisor and
    ``False`` when it ran to the reduced divisor (which then has debt at ``q``).
    """
    return _iterate_from_q(g, q, d, trace, early=True)


def modified_dhar(
    g: Multigraph, d: Sequence[int], trace: BurnTrace | None = None
) -> tuple[Divisor, FiringScript] | None:
    """Effective divisor equivalent to ``d`` plus script, or ``None`` if none exists.

    Each pass lights all vertices in debt, lets the fire spread, and fires
    the unburned set; the whole graph burning proves no effective
    equivalent exists.
    """
    g.require_connected()
    n = g.n
    if len(d) != n:
        raise DomainError("divisor length does not match the graph")
    chips = list(d)
    fired_count = [0] * n
    if trace is not None:
        trace._start(n)
    while True:
        if min(chips) >= 0:
            return tuple(chips), normalize_script(fired_count)
        in_w = [x >= 0 for x in chips]
        if trace is not None and trace.log_beta:
            trace.beta_log.append(
                {u: compute_beta(g, u, chips) for u in range(n) if not in_w[u]}
            )
        out = _burn(g, chips, in_w)
        if not any(in_w):
            return None
        fired = _fire(g, chips, in_w, out)
        for v in fired:
            fired_count[v] += 1
        if trace is not None:
            trace.passes += 1
            for v in fired:
                trace.firings[v] += 1
            trace.fired_sets.append(frozenset(fired))


def find_dominating(
    g: Multigraph, d: Sequence[int], e: Sequence[int], trace: BurnTrace | None = None
) -> Divisor | None:
    """A divisor equivalent to ``d`` that is ``>= e``, or ``None``."""
    if any(x < 0 for x in e):
        raise DomainError("the divisor to dominate must be effective")
    found = modified_dhar(g, sub(d, e), trace)
    if found is None:
        return None
    return add(found[0], e)


def reduced_divisors(g: Multigraph, q: int, deg: int) -> Iterator[Divisor]:
    """Every ``q``-reduced divisor of the given degree.

    A reduced divisor has ``0 <= d(v) < val(v)`` away from ``q`` (a lone
    vertex with ``val(v)`` chips could fire), so the search box is finite.
    """
    g.require_connected()
    others = [v for v in range(g.n) if v != q]
    for values in product(*(range(g.valences[v]) for v in others)):
        chips = [0] * g.n
        for v, x in zip(others, values):
            chips[v] = x
        chips[q] = deg - sum(values)
        if g.n == 1 or dhar_pass(g, [q], chips) == ALL_BURNED:
            yield tuple(chips)


def jacobian_order(g: Multigraph, q: int = 0) -> int:
    """Number of divisor classes of degree 0, counted via reduced representatives."""
    return sum(1 for _ in reduced_divisors(g, q, 0))
