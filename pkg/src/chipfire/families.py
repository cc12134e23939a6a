"""Generators for the named graph families and seeded random graphs.

Every chain-shaped family (bananas, generalized bananas, the genus-g graphs
``G`` and ``H``) goes through :func:`chain`.  Random graphs use SplitMix64 so
that a ``(n, p, seed)`` triple names the same graph in any implementation.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DomainError
from .graph import Multigraph

MASK64 = (1 << 64) - 1
RANDOM_RETRY_CAP = 10**6


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014).

    ``next_u64`` advances the state by the golden-gamma increment and
    returns the mixed state; ``random`` takes the top 53 bits as a float in
    ``[0, 1)``.
    """

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & MASK64
        return mix64(self.state)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` (rejection sampling, no bias)."""
        if bound <= 0:
            raise DomainError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound


def mix64(z: int) -> int:
    """The SplitMix64 output finalizer."""
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def path(n: int) -> Multigraph:
    if n < 1:
        raise DomainError("path needs n >= 1")
    return Multigraph.from_edges(n, ((i, i + 1, 1) for i in range(n - 1)))


def cycle(n: int) -> Multigraph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return Multigraph.from_edges(n, ((i, (i + 1) % n, 1) for i in range(n)))


def complete(n: int) -> Multigraph:
    if n < 1:
        raise DomainError("complete graph needs n >= 1")
    return Multigraph.from_edges(
        n, ((u, v, 1) for u in range(n) for v in range(u + 1, n))
    )


def complete_bipartite(m: int, n: int) -> Multigraph:
    """``K_{m,n}``; vertices ``0..m-1`` form the first class."""
    if m < 1 or n < 1:
        raise DomainError("complete bipartite graph needs m, n >= 1")
    return Multigraph.from_edges(
        m + n, ((u, m + v, 1) for u in range(m) for v in range(n))
    )


def chain(mults: Sequence[int]) -> Multigraph:
    """Path-shaped multigraph: ``mults[i]`` edges join vertices ``i`` and ``i+1``."""
    mults = list(mults)
    if not mults:
        raise DomainError("chain needs at least one multiplicity")
    if any(m < 1 for m in mults):
        raise DomainError("chain multiplicities must be >= 1")
    return Multigraph.from_edges(
        len(mults) + 1, ((i, i + 1, m) for i, m in enumerate(mults))
    )


def banana(n: int) -> Multigraph:
    """Two vertices joined by ``n`` parallel edges."""
    if n < 1:
        raise DomainError("banana needs n >= 1")
    return chain([n])


def gen_banana(n: int, e: int) -> Multigraph:
    """``n`` vertices in a line, ``e`` edges between consecutive ones."""
    if n < 2 or e < 1:
        raise DomainError("generalized banana needs n >= 2 and e >= 1")
    return chain([e] * (n - 1))


def desc_banana_mults(a: int, b: int) -> list[int]:
    if not 2 <= a <= b:
        raise DomainError("descending banana needs 2 <= a <= b")
    return [b - a + i + 1 for i in range(1, a)]


def desc_banana(a: int, b: int) -> Multigraph:
    """``a`` vertices; ``b - a + i + 1`` edges between ``v_i`` and ``v_{i+1}``.

    Vertex ``v_1`` is index 0, so multiplicities grow toward the last
    vertex, ending with ``b``.
    """
    return chain(desc_banana_mults(a, b))


def random_connected(n: int, p: float, seed: int) -> Multigraph:
    """Sample G(n, p) until connected.

    A single SplitMix64 stream seeded with ``seed`` is consumed across
    attempts; within an attempt, pair ``(u, v)`` for ``u < v`` in ascending
    order is kept iff the next draw is ``< p``.
    """
    if n < 2:
        raise DomainError("random graph needs n >= 2")
    if not 0 < p <= 1:
        raise DomainError("edge probability must lie in (0, 1]")
    rng = SplitMix64(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(RANDOM_RETRY_CAP):
        g = Multigraph.from_edges(n, ((u, v, 1) for u, v in pairs if rng.random() < p))
        if g.connected:
            return g
    raise DomainError(f"no connected G({n}, {p}) sample within {RANDOM_RETRY_CAP} tries")


def _int(params: dict[str, str], key: str) -> int:
    try:
        return int(params[key])
    except KeyError:
        raise DomainError(f"missing parameter {key!r}") from None
    except ValueError:
        raise DomainError(f"parameter {key!r} must be an integer") from None


def build_family(name: str, params: dict[str, str]) -> Multigraph:
    """Dispatch a family name and string parameters (used by the CLI)."""
    if name == "path":
        return path(_int(params, "n"))
    if name == "cycle":
        return cycle(_int(params, "n"))
    if name == "complete":
        return complete(_int(params, "n"))
    if name == "bipartite":
        return complete_bipartite(_int(params, "m"), _int(params, "n"))
    if name == "banana":
        return banana(_int(params, "n"))
    if name == "genbanana":
        return gen_banana(_int(params, "n"), _int(params, "e"))
    if name == "descbanana":
        return desc_banana(_int(params, "a"), _int(params, "b"))
    if name == "chain":
        if "mults" not in params:
            raise DomainError("missing parameter 'mults' (e.g. mults=3:2:2)")
        try:
            mults = [int(x) for x in params["mults"].split(":")]
        except ValueError:
            raise DomainError("mults must be colon-separated integers") from None
        return chain(mults)
    if name == "random":
        try:
            p = float(params.get("p", "0.5"))
        except ValueError:
            raise DomainError("parameter 'p' must be a number") from None
        return random_connected(_int(params, "n"), p, _int(params, "seed"))
    raise DomainError(f"unknown family {name!r}")


FAMILY_NAMES = (
    "path", "cycle", "complete", "bipartite", "banana",
    "genbanana", "descbanana", "chain", "random",
)
