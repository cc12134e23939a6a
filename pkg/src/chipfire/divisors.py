"""Divisors, firing scripts, and linear equivalence.

A divisor is a plain ``tuple`` of ints indexed by vertex; a firing script is
the same shape and records how often each vertex fired (negative entries
mean borrowing).  Applying script ``f`` to ``d`` gives ``d - L f``.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import DomainError
from .graph import Multigraph

Divisor = tuple[int, ...]
FiringScript = tuple[int, ...]


def _check_len(g: Multigraph, vec: Sequence[int], what: str = "divisor") -> None:
    if len(vec) != g.n:
        raise DomainError(f"{what} has length {len(vec)}, graph has {g.n} vertices")


def degree(d: Sequence[int]) -> int:
    return sum(d)


def is_effective(d: Sequence[int]) -> bool:
    return all(x >= 0 for x in d)


def support(d: Sequence[int]) -> frozenset[int]:
    return frozenset(v for v, x in enumerate(d) if x > 0)


def positive_part(d: Sequence[int]) -> Divisor:
    return tuple(max(x, 0) for x in d)


def negative_part(d: Sequence[int]) -> Divisor:
    return tuple(max(-x, 0) for x in d)


def add(d: Sequence[int], e: Sequence[int]) -> Divisor:
    return tuple(x + y for x, y in zip(d, e))


def sub(d: Sequence[int], e: Sequence[int]) -> Divisor:
    return tuple(x - y for x, y in zip(d, e))


def point(n: int, v: int, k: int = 1) -> Divisor:
    """The divisor ``k * (v)``."""
    return tuple(k if i == v else 0 for i in range(n))


def canonical(g: Multigraph) -> Divisor:
    return tuple(val - 2 for val in g.valences)


def apply_script(g: Multigraph, d: Sequence[int], f: Sequence[int]) -> Divisor:
    """Return ``d - L f``."""
    _check_len(g, d)
    _check_len(g, f, "firing script")
    return tuple(
        d[v] - g.valences[v] * f[v] + sum(m * f[u] for u, m in g.neighbors[v])
        for v in range(g.n)
    )


def indicator(n: int, w: Iterable[int]) -> FiringScript:
    w = set(w)
    return tuple(1 if v in w else 0 for v in range(n))


def fire_subset(g: Multigraph, d: Sequence[int], w: Iterable[int]) -> Divisor:
    """Fire every vertex of ``w`` once: one chip crosses each edge leaving ``w``."""
    w = frozenset(w)
    if not w:
        raise DomainError("cannot fire an empty set")
    if not w <= set(range(g.n)):
        raise DomainError("firing set has vertices outside the graph")
    _check_len(g, d)
    out = list(d)
    for v in w:
        for u, m in g.neighbors[v]:
            if u not in w:
                out[v] -= m
                out[u] += m
    return tuple(out)


def normalize_script(f: Sequence[int]) -> FiringScript:
    """Shift so the minimum entry is 0 (same divisor change)."""
    low = min(f)
    return tuple(x - low for x in f)


def is_principal(g: Multigraph, d: Sequence[int]) -> bool:
    return principal_witness(g, d) is not None


def principal_witness(g: Multigraph, d: Sequence[int]) -> FiringScript | None:
    """A script ``f`` with ``d - L f = 0``, or ``None`` if ``d`` is not principal.

    Uses reduced-divisor uniqueness: ``d`` is principal iff its 0-reduced
    representative is the zero divisor.
    """
    from .burning import reduce

    g.require_connected()
    _check_len(g, d)
    if degree(d) != 0:
        return None
    red, script = reduce(g, 0, d)
    if any(red):
        return None
    return script


def equivalent(
    g: Multigraph, d1: Sequence[int], d2: Sequence[int], *, witness: bool = False
) -> bool | tuple[bool, FiringScript | None]:
    """Linear equivalence test.

    With ``witness=True`` returns ``(flag, f)`` where, when ``flag`` holds,
    ``apply_script(g, d1, f) == d2``.
    """
    _check_len(g, d1)
    _check_len(g, d2)
    f = principal_witness(g, sub(d1, d2))
    if witness:
        return f is not None, f
    return f is not None


def count_effective(n: int, k: int) -> int:
    """``|Div_+^k|`` on ``n`` vertices (stars and bars)."""
    return comb(n + k - 1, k)


def enumerate_effective(n: int, k: int, *, ascending: bool = False) -> Iterator[Divisor]:
    """Stream every effective divisor of degree ``k`` on ``n`` vertices once.

    Default order is decreasing lexicographic, starting at ``(k, 0, ..., 0)``;
    ``ascending=True`` gives the reverse, starting at ``(0, ..., 0, k)``.
    """
    if k < 0:
        raise DomainError("degree must be non-negative")
    if n < 1:
        raise DomainError("need at least one vertex")
    if n == 1:
        yield (k,)
        return
    if ascending:
        yield from _ascending(n, k)
    else:
        yield from _descending(n, k)


def _descending(n: int, k: int) -> Iterator[Divisor]:
    a = [0] * n
    a[0] = k
    while True:
        yield tuple(a)
        # last position before the tail that can give a chip to the right
        i = n - 2
        while i >= 0 and a[i] == 0:
            i -= 1
        if i < 0:
            return
        tail = a[n - 1]
        a[n - 1] = 0
        a[i] -= 1
        a[i + 1] = tail + 1


def _ascending(n: int, k: int) -> Iterator[Divisor]:
    a = [0] * n
    a[n - 1] = k
    while True:
        yield tuple(a)
        j = n - 1
        while j >= 1 and a[j] == 0:
            j -= 1
        if j == 0:
            return
        s = a[j]
        a[j] = 0
        a[j - 1] += 1
        a[n - 1] = s - 1


def level_set_decomposition(
    g: Multigraph, f: Sequence[int], d: Sequence[int] | None = None
) -> tuple[list[frozenset[int]], list[Divisor]]:
    """Level sets ``A_i = {v : f(v) >= max(f) - i}`` and their divisor sequence.

    The divisor sequence starts at ``d`` (zero divisor if omitted) and fires
    ``A_0, A_1, ..., A_{k-1}`` in turn, ending at ``d - L (f - min f)``.
    """
    _check_len(g, f, "firing script")
    top = max(f)
    depth = top - min(f)
    sets = [frozenset(v for v in range(g.n) if f[v] >= top - i) for i in range(depth + 1)]
    current = tuple(d) if d is not None else (0,) * g.n
    _check_len(g, current)
    sequence = [current]
    for a in sets[:-1]:
        current = fire_subset(g, current, a)
        sequence.append(current)
    return sets, sequence


def parse_divisor(text: str, n: int | None = None) -> Divisor:
    """Parse a whitespace-separated chip line (accepts the unicode minus sign)."""
    try:
        d = tuple(int(x) for x in text.replace("−", "-").split())
    except ValueError:
        raise DomainError(f"not a divisor line: {text!r}") from None
    if n is not None and len(d) != n:
        raise DomainError(f"divisor has {len(d)} entries, graph has {n} vertices")
    return d


def format_divisor(d: Sequence[int]) -> str:
    return " ".join(str(x) for x in d)
