"""Closed forms, tables, and bound propagation for gonality sequences.

Nothing here searches for divisors except :func:`check_trigonal_conjecture`,
which compares computed gonalities against the trigonal-curve formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError
from .gonality import SequenceSpec, gonality, gonality_sequence
from .graph import Multigraph, genus as graph_genus

# Known gonality sequences by (genus, gon_1[, gon_2]), first six terms.
# Genus 6 rows assume every genus-6 graph has gon_1 <= 4.
SEQUENCE_TABLE: dict[tuple[int, ...], tuple[int, ...]] = {
    (0,): (1, 2, 3, 4, 5, 6),
    (1,): (2, 3, 4, 5, 6, 7),
    (2, 2): (2, 4, 5, 6, 7, 8),
    (3, 2): (2, 4, 6, 7, 8, 9),
    (3, 3): (3, 4, 6, 7, 8, 9),
    (4, 2): (2, 4, 6, 8, 9, 10),
    (4, 3): (3, 5, 6, 8, 9, 10),
    (5, 2): (2, 4, 6, 8, 10, 11),
    (5, 3): (3, 5, 7, 8, 10, 11),
    (5, 4): (4, 6, 7, 8, 10, 11),
    (6, 2): (2, 4, 6, 8, 10, 12),
    (6, 3, 5): (3, 5, 7, 9, 10, 12),
    (6, 3, 6): (3, 6, 7, 9, 10, 12),
    (6, 4, 5): (4, 5, 8, 9, 10, 12),
    (6, 4, 6): (4, 6, 8, 9, 10, 12),
}

CONDITIONAL_GENERA = frozenset({6})


def rho(g: int, r: int, d: int) -> int:
    """Brill-Noether number ``g - (r + 1)(g - d + r)``."""
    return g - (r + 1) * (g - d + r)


def brill_noether_bound(g: int) -> int:
    """``floor((g + 3) / 2)``, the conjectured ceiling on the first gonality."""
    return (g + 3) // 2


def _extend(genus: int, prefix: Sequence[int], upto: int) -> tuple[int, ...]:
    return tuple(prefix[k - 1] if k <= len(prefix) else genus + k for k in range(1, upto + 1))


def expected_sequence(
    genus: int, gon1: int | None, upto: int, gon2: int | None = None
) -> SequenceSpec:
    """The tabulated gonality sequence for a genus/first-gonality pair.

    Genus 6 is only determined once ``gon2`` is also given (for ``gon1``
    of 3 or 4), and its rows hold only if every genus-6 graph has first
    gonality at most 4.
    """
    if upto < 1:
        raise DomainError("need upto >= 1")
    if not 0 <= genus <= 6:
        raise DomainError(f"no tabulated sequences for genus {genus} (only 0..6)")
    if genus <= 1:
        return SequenceSpec(genus, genus + 1, _extend(genus, SEQUENCE_TABLE[(genus,)], upto))
    if gon1 is None:
        raise DomainError("gon1 is required for genus >= 2")
    bound = brill_noether_bound(genus)
    if not 2 <= gon1 <= bound:
        raise DomainError(
            f"gon1 = {gon1} is inadmissible for genus {genus}: "
            f"need 2 <= gon1 <= floor((g+3)/2) = {bound}"
        )
    key: tuple[int, ...] = (genus, gon1)
    if genus == 6 and gon1 != 2:
        if gon2 not in (5, 6):
            raise DomainError(
                f"genus 6 with gon1 = {gon1} is not determined by gon1; pass gon2 in {{5, 6}}"
            )
        key = (genus, gon1, gon2)
    elif gon2 is not None and SEQUENCE_TABLE[key][1] != gon2:
        raise DomainError(
            f"gon2 = {gon2} contradicts the genus-{genus}, gon1 = {gon1} sequence"
        )
    return SequenceSpec(genus, gon1, _extend(genus, SEQUENCE_TABLE[key], upto))


def genus_from_sequence(terms: Sequence[int]) -> int:
    """Recover the genus: the last index where the sequence jumps by more than one.

    A leading ``gon_0 = 0`` makes genus 1 (sequence ``2, 3, 4, ...``) and
    genus 0 (``1, 2, 3, ...``) fall out of the same rule.  The sequence
    must reach past the genus for the answer to be meaningful.
    """
    last = 0
    prev = 0
    for k, t in enumerate(terms, 1):
        if t - prev > 1:
            last = k
        prev = t
    return last


def trigonal_curve_gonality(g: int, k: int) -> int:
    """k-th gonality of a trigonal curve of genus ``g``."""
    if k >= g:
        return g + k
    if k <= (g - 1) // 3:
        return 3 * k
    return g + k - 1 - (g - k - 1) // 2


@dataclass(frozen=True)
class TrigonalRow:
    k: int
    computed: int
    predicted: int

    @property
    def match(self) -> bool:
        return self.computed == self.predicted


@dataclass(frozen=True)
class TrigonalReport:
    genus: int
    rows: tuple[TrigonalRow, ...]

    @property
    def mismatches(self) -> list[int]:
        return [row.k for row in self.rows if not row.match]


def check_trigonal_conjecture(g: Multigraph, *, reduced_only: bool = True) -> TrigonalReport:
    """Compare a trigonal graph's gonalities with the curve formula for ``k < genus``.

    From ``k = genus`` on both sides equal ``genus + k``, so those indices
    carry no information and are left out of the report.
    """
    if gonality(g, 1, reduced_only=reduced_only).value != 3:
        raise DomainError("graph does not have first gonality 3")
    gen = graph_genus(g)
    rows = ()
    if gen >= 2:
        seq = gonality_sequence(g, gen - 1, reduced_only=reduced_only)
        rows = tuple(
            TrigonalRow(k, seq.terms[k - 1], trigonal_curve_gonality(gen, k))
            for k in range(1, gen)
        )
    return TrigonalReport(gen, rows)


def expected_family_gonality(family: str, params: dict[str, int], r: int) -> int:
    """Closed-form ``gon_r`` for the named families where one is known.

    Raises :class:`DomainError` for any (family, r) without a formula.
    """
    if r < 1:
        raise DomainError("r must be >= 1")

    def need(*keys: str) -> list[int]:
        try:
            return [int(params[k]) for k in keys]
        except KeyError as exc:
            raise DomainError(f"missing parameter {exc.args[0]!r} for {family}") from None

    if family == "path":
        return r
    if family == "cycle":
        return r + 1
    if family == "banana":
        (n,) = need("n")
        if n == 1:
            return r
        # genus n - 1; hyperelliptic below the genus, g + r from there on
        return 2 * r if r < n - 1 else n - 1 + r
    if family == "genbanana":
        n, e = need("n", "e")
        if r == 1:
            return min(n, e)
        if r == 2:
            if n < e:
                return 2 * n
            if e < n:
                return 2 * e
            return 2 * n - 1
    if family == "descbanana":
        a, b = need("a", "b")
        if r == 1:
            return a
        if r == 2 and b <= 2 * a - 1:
            return b + 1
    if family == "bipartite":
        m, n = need("m", "n")
        if r == 1:
            return min(m, n)
        if r == 2:
            if m == n == 1:
                return 2
            if m == n:
                return 2 * m - 1
            return 2 * min(m, n)
    raise DomainError(f"no closed form for gon_{r} of family {family!r} with {params}")


# -- bound propagation -------------------------------------------------------


@dataclass
class GonalityFact:
    r: int
    lower: int | None = None
    upper: int | None = None


@dataclass(frozen=True)
class BoundsResult:
    genus: int
    lower: dict[int, int]
    upper: dict[int, int]
    rounds: int

    def exact(self, r: int) -> int | None:
        if self.lower[r] == self.upper[r]:
            return self.lower[r]
        return None

    def facts(self) -> list[GonalityFact]:
        return [GonalityFact(r, self.lower[r], self.upper[r]) for r in sorted(self.lower)]


def propagate_bounds(genus: int, facts: Iterable[GonalityFact | dict], *, span: int | None = None) -> BoundsResult:
    """Tighten lower/upper bounds on ``gon_1 .. gon_R`` until nothing changes.

    Rules applied each round:

    * ``gon_k <= g + k``, ``gon_k >= k`` (``>= k + 1`` unless ``g = 0``),
      ``gon_k = g + k`` for ``k >= g``, ``gon_{g-1} = 2g - 2`` for ``g >= 2``;
    * ``gon_{g-2} = 2g - 3`` once ``gon_1 >= 3`` and ``g >= 4``;
    * Clifford: ``gon_k >= 2k`` for ``k <= g``, and ``gon_k >= 2k + 1`` for
      ``2 <= k <= g - 2`` once ``gon_1 >= 3`` (a rank-``k`` divisor of
      degree ``2k`` in that range forces ``gon_1 = 2``);
    * strict monotonicity and subadditivity in both directions;
    * Riemann-Roch duality: a degree-``c`` divisor of rank ``k`` leaves
      ``K - D`` of degree ``2g - 2 - c`` and rank ``>= k + g - 1 - c``; and if
      ``gon_k >= c`` then any divisor of degree ``delta - 1 >= 2g - 1 - c`` has
      rank ``< k - g + delta``, so ``gon_{k - g + delta} >= delta``.

    Raises :class:`DomainError` when some lower bound exceeds its upper bound.
    """
    if genus < 0:
        raise DomainError("genus must be non-negative")
    facts = [f if isinstance(f, GonalityFact) else GonalityFact(**f) for f in facts]
    top = max([genus + 1, 2] + [f.r for f in facts])
    if span is not None:
        top = max(top, span)
    ks = range(1, top + 1)
    lo = {k: (k + 1 if genus >= 1 else k) for k in ks}
    hi = {k: genus + k for k in ks}
    for f in facts:
        if f.r < 1:
            raise DomainError("fact index r must be >= 1")
        if f.lower is not None:
            lo[f.r] = max(lo[f.r], f.lower)
        if f.upper is not None:
            hi[f.r] = min(hi[f.r], f.upper)

    def tighten_lo(k: int, v: int) -> bool:
        if 1 <= k <= top and v > lo[k]:
            lo[k] = v
            return True
        return False

    def tighten_hi(k: int, v: int) -> bool:
        if 1 <= k <= top and v < hi[k]:
            hi[k] = v
            return True
        return False

    rounds = 0
    changed = True
    while changed:
        rounds += 1
        changed = False
        for k in ks:
            if k >= genus:
                changed |= tighten_lo(k, genus + k)
                changed |= tighten_hi(k, genus + k)
        if genus >= 2:
            changed |= tighten_lo(genus - 1, 2 * genus - 2)
            changed |= tighten_hi(genus - 1, 2 * genus - 2)
        if genus >= 4 and lo[1] >= 3:
            changed |= tighten_lo(genus - 2, 2 * genus - 3)
            changed |= tighten_hi(genus - 2, 2 * genus - 3)
        for k in range(1, min(genus, top) + 1):
            changed |= tighten_lo(k, 2 * k)
            if lo[1] >= 3 and 2 <= k <= genus - 2:
                changed |= tighten_lo(k, 2 * k + 1)
        for k in ks:
            if k + 1 <= top:
                changed |= tighten_lo(k + 1, lo[k] + 1)
                changed |= tighten_hi(k, hi[k + 1] - 1)
            for b in range(1, top - k + 1):
                changed |= tighten_hi(k + b, hi[k] + hi[b])
                changed |= tighten_lo(k, lo[k + b] - hi[b])
            # duality, upper direction
            c = hi[k]
            changed |= tighten_hi(k + genus - 1 - c, 2 * genus - 2 - c)
            # duality, lower direction
            c = lo[k]
            delta = max(2 * genus - c, genus - k + 1)
            changed |= tighten_lo(k - genus + delta, delta)
        bad = [k for k in ks if lo[k] > hi[k]]
        if bad:
            k = bad[0]
            raise DomainError(
                f"inconsistent facts for genus {genus}: gon_{k} >= {lo[k]} but <= {hi[k]}"
            )
    return BoundsResult(genus, dict(lo), dict(hi), rounds)
