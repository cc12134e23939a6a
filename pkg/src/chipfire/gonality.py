"""Divisor rank and brute-force k-th gonality.

``has_rank_at_least`` removes every effective divisor ``E`` of degree ``r``
from ``D`` and asks a winnability oracle whether ``D - E`` is equivalent to
an effective divisor.  The default oracle is :func:`~chipfire.burning.modified_dhar`;
the reduce-based pipelines are available for cross-checks and benchmarking.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice
from typing import Callable, Iterator, Sequence

from .burning import BurnTrace, is_reduced, modified_dhar, reduce, reduce_early
from .divisors import Divisor, canonical, degree, enumerate_effective, point, sub
from .errors import DomainError, InvariantViolation
from .graph import Multigraph, genus

Oracle = Callable[[Multigraph, Sequence[int], "BurnTrace | None"], bool]


def winnable_modified(g: Multigraph, d: Sequence[int], trace: BurnTrace | None = None) -> bool:
    return modified_dhar(g, d, trace) is not None


def winnable_full_reduce(
    g: Multigraph, d: Sequence[int], trace: BurnTrace | None = None
) -> bool:
    red, _ = reduce(g, 0, d, trace)
    return red[0] >= 0


def winnable_early(g: Multigraph, d: Sequence[int], trace: BurnTrace | None = None) -> bool:
    red, _, stopped = reduce_early(g, 0, d, trace)
    return stopped or red[0] >= 0


ORACLES: dict[str, Oracle] = {
    "modified": winnable_modified,
    "full_reduce": winnable_full_reduce,
    "early_return": winnable_early,
}


@dataclass(frozen=True)
class GonalityWitness:
    r: int
    value: int
    witness: Divisor


@dataclass(frozen=True)
class SequenceSpec:
    genus: int
    gon1: int
    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        for k, (a, b) in enumerate(zip(self.terms, self.terms[1:]), 1):
            if b <= a:
                raise InvariantViolation(f"gonality sequence not increasing at {k}: {self.terms}")
        if any(t < k for k, t in enumerate(self.terms, 1)):
            raise InvariantViolation(f"gon_k < k in {self.terms}")


@lru_cache(maxsize=512)
def _opponent_moves(g: Multigraph, r: int) -> tuple[Divisor, ...]:
    """Degree-``r`` effective divisors, stacked ``r * (v)`` at low-valence ``v`` first."""
    low = min(g.valences)
    probes = [point(g.n, v, r) for v in range(g.n) if g.valences[v] == low]
    seen = set(probes)
    rest = [e for e in enumerate_effective(g.n, r) if e not in seen]
    return tuple(probes + rest)


def has_rank_at_least(
    g: Multigraph,
    d: Sequence[int],
    r: int,
    oracle: Oracle = winnable_modified,
    trace: BurnTrace | None = None,
) -> bool:
    """Whether ``r(d) >= r``; stops at the first losing removal."""
    if r < 0:
        raise DomainError("rank threshold must be non-negative")
    if len(d) != g.n:
        raise DomainError("divisor length does not match the graph")
    if degree(d) < r:
        return False
    if r == 0:
        return oracle(g, d, trace)
    for e in _opponent_moves(g, r):
        if not oracle(g, sub(d, e), trace):
            return False
    return True


def rank(g: Multigraph, d: Sequence[int], oracle: Oracle = winnable_modified) -> int:
    """Baker-Norine rank; ``-1`` when ``d`` has no effective equivalent."""
    if not oracle(g, d, None):
        return -1
    r = 0
    while r < degree(d) and has_rank_at_least(g, d, r + 1, oracle):
        r += 1
    return r


def _candidates(g: Multigraph, r: int, k: int, reduced_only: bool) -> Iterator[Divisor]:
    """Degree-``k`` effective candidates in increasing lexicographic order.

    With ``reduced_only`` only 0-reduced divisors with at least ``r`` chips
    on vertex 0 are produced: every class has one 0-reduced member, and a
    0-reduced divisor of rank ``>= r`` must keep ``r`` chips at 0.
    """
    if not reduced_only:
        yield from enumerate_effective(g.n, k, ascending=True)
        return
    if g.n == 1:
        if k >= r:
            yield (k,)
        return
    for head in range(r, k + 1):
        for tail in enumerate_effective(g.n - 1, k - head, ascending=True):
            d = (head,) + tail
            if is_reduced(g, 0, d):
                yield d


def _scan(g: Multigraph, r: int, chunk: Sequence[Divisor], oracle: Oracle) -> int:
    for i, d in enumerate(chunk):
        if has_rank_at_least(g, d, r, oracle):
            return i
    return -1


def _scan_job(args: tuple[Multigraph, int, list[Divisor], str]) -> int:
    g, r, chunk, name = args
    return _scan(g, r, chunk, ORACLES[name])


def is_gon_gt(
    g: Multigraph,
    r: int,
    k: int,
    *,
    reduced_only: bool = False,
    jobs: int = 1,
    oracle: str | Oracle = "modified",
    chunk_size: int = 512,
) -> tuple[bool, Divisor | None]:
    """Decide ``gon_r(g) > k``.

    Returns ``(True, None)`` when no degree-``k`` divisor has rank ``>= r``,
    else ``(False, w)`` with ``w`` the lexicographically least winning
    candidate.  Parallel runs (``jobs > 1``) return the same witness and
    need ``oracle`` given by name.
    """
    if r < 1:
        raise DomainError("gonality index r must be >= 1")
    if k < 0:
        raise DomainError("degree k must be >= 0")
    if isinstance(oracle, str) and oracle not in ORACLES:
        raise DomainError(f"unknown oracle {oracle!r}")
    g.require_connected()
    stream = _candidates(g, r, k, reduced_only)
    if jobs <= 1 or not isinstance(oracle, str):
        check = ORACLES[oracle] if isinstance(oracle, str) else oracle
        for d in stream:
            if has_rank_at_least(g, d, r, check):
                return False, d
        return True, None
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        while True:
            wave = [list(c) for c in (islice(stream, chunk_size) for _ in range(jobs * 2))]
            wave = [c for c in wave if c]
            if not wave:
                return True, None
            hits = pool.map(_scan_job, [(g, r, c, oracle) for c in wave])
            for chunk, hit in zip(wave, hits):
                if hit >= 0:
                    return False, chunk[hit]


def gonality(
    g: Multigraph,
    r: int,
    *,
    reduced_only: bool = False,
    jobs: int = 1,
    start: int | None = None,
    oracle: str | Oracle = "modified",
) -> GonalityWitness:
    """Smallest degree of a rank-``r`` divisor, with the least such witness.

    Degrees ascend from ``max(r, start)``; ``start`` lets callers skip degrees
    already ruled out.  Degree ``genus + r`` always suffices.
    """
    if r < 1:
        raise DomainError("gonality index r must be >= 1")
    g.require_connected()
    ceiling = genus(g) + r
    for k in range(max(r, start or r), ceiling + 1):
        gt, witness = is_gon_gt(g, r, k, reduced_only=reduced_only, jobs=jobs, oracle=oracle)
        if not gt:
            return GonalityWitness(r, k, witness)
    raise InvariantViolation(f"no rank-{r} divisor of degree <= {ceiling}")


def gonality_sequence(
    g: Multigraph, upto: int, *, reduced_only: bool = False, jobs: int = 1
) -> SequenceSpec:
    """``gon_1 .. gon_upto``; indices ``>= genus`` use the closed form ``genus + r``."""
    if upto < 1:
        raise DomainError("need upto >= 1")
    g.require_connected()
    gen = genus(g)
    terms: list[int] = []
    for r in range(1, upto + 1):
        if r >= gen:
            terms.append(gen + r)
            continue
        start = terms[-1] + 1 if terms else r
        terms.append(gonality(g, r, reduced_only=reduced_only, jobs=jobs, start=start).value)
    return SequenceSpec(gen, terms[0], tuple(terms))


def rr_residual(g: Multigraph, d: Sequence[int]) -> int:
    """``r(D) - r(K - D) - deg(D) - 1 + g``; zero by Riemann-Roch."""
    k = canonical(g)
    return rank(g, d) - rank(g, sub(k, d)) - degree(d) - 1 + genus(g)


def clifford_index(g: Multigraph) -> int:
    """``min deg(D) - 2 r(D)`` over ``r(D) >= 1``, ``deg(D) <= genus - 1``."""
    g.require_connected()
    gen = genus(g)
    if gen < 2:
        raise DomainError("Clifford index needs genus >= 2")
    best = None
    for k in range(1, gen):
        for d in _candidates(g, 1, k, reduced_only=True):
            rk = rank(g, d)
            if rk >= 1 and (best is None or k - 2 * rk < best):
                best = k - 2 * rk
    if best is None:
        raise DomainError(
            f"no divisor of positive rank and degree <= {gen - 1}; Clifford index undefined"
        )
    return best
