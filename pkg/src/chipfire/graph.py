"""Finite loopless multigraphs stored as dense multiplicity matrices.

Vertices are the integers ``0..n-1``.  A :class:`Multigraph` is immutable;
derived data (neighbour lists, valences, all-pairs distances) is computed
lazily and cached on the instance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx

from .errors import DisconnectedGraphError, DomainError

VertexSet = frozenset


@dataclass(frozen=True)
class Multigraph:
    n: int
    mult: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError("a graph needs at least one vertex")
        if len(self.mult) != self.n or any(len(row) != self.n for row in self.mult):
            raise DomainError("multiplicity matrix must be n x n")
        for u in range(self.n):
            if self.mult[u][u] != 0:
                raise DomainError(f"loop at vertex {u}")
            for v in range(u + 1, self.n):
                m = self.mult[u][v]
                if m != self.mult[v][u]:
                    raise DomainError(f"asymmetric multiplicity at ({u}, {v})")
                if m < 0:
                    raise DomainError(f"negative multiplicity at ({u}, {v})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]]) -> "Multigraph":
        """Build from ``(u, v, mult)`` triples; repeated pairs accumulate."""
        if n < 1:
            raise DomainError("a graph needs at least one vertex")
        rows = [[0] * n for _ in range(n)]
        for u, v, m in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if m < 0:
                raise DomainError("edge multiplicity must be non-negative")
            rows[u][v] += m
            rows[v][u] += m
        return cls(n, tuple(tuple(r) for r in rows))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "Multigraph":
        return cls(len(rows), tuple(tuple(int(x) for x in r) for r in rows))

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, edges={self.edges()})"

    def edges(self) -> list[tuple[int, int, int]]:
        """Edge classes ``(u, v, mult)`` with ``u < v``, in ascending order."""
        return [
            (u, v, self.mult[u][v])
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if self.mult[u][v]
        ]

    @cached_property
    def neighbors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``neighbors[v]`` lists ``(u, mult)`` pairs with ``mult > 0``."""
        return tuple(
            tuple((u, m) for u, m in enumerate(row) if m) for row in self.mult
        )

    @cached_property
    def valences(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.mult)

    @cached_property
    def num_edges(self) -> int:
        return sum(self.valences) // 2

    @cached_property
    def connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u, _ in self.neighbors[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    @cached_property
    def distance_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(_bfs(self, q)) for q in range(self.n))

    def require_connected(self) -> None:
        if not self.connected:
            raise DisconnectedGraphError("operation requires a connected graph")


def _bfs(g: Multigraph, q: int) -> list[int]:
    dist = [-1] * g.n
    dist[q] = 0
    queue = deque([q])
    while queue:
        v = queue.popleft()
        for u, _ in g.neighbors[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    if min(dist) < 0:
        raise DisconnectedGraphError(f"some vertex is unreachable from {q}")
    return dist


def _check_vertex(g: Multigraph, v: int) -> None:
    if not 0 <= v < g.n:
        raise DomainError(f"vertex {v} out of range 0..{g.n - 1}")


def genus(g: Multigraph) -> int:
    """First Betti number ``|E| - |V| + 1``."""
    return g.num_edges - g.n + 1


def valence(g: Multigraph, v: int) -> int:
    _check_vertex(g, v)
    return g.valences[v]


def outdeg(g: Multigraph, a: Iterable[int], v: int) -> int:
    """Edges from ``v`` to vertices outside ``a``, counted with multiplicity."""
    a = set(a)
    if v not in a:
        raise DomainError(f"vertex {v} is not in the given set")
    return sum(m for u, m in g.neighbors[v] if u not in a)


def laplacian(g: Multigraph) -> list[list[int]]:
    return [
        [g.valences[v] if v == w else -g.mult[v][w] for w in range(g.n)]
        for v in range(g.n)
    ]


def distances(g: Multigraph, q: int) -> tuple[int, ...]:
    """BFS hop distances from ``q``; parallel edges count as one hop."""
    _check_vertex(g, q)
    return g.distance_matrix[q]


def diameter(g: Multigraph) -> int:
    return max(max(row) for row in g.distance_matrix)


def edge_connectivity(g: Multigraph) -> int:
    """Minimum total multiplicity of an edge cut (Stoer-Wagner)."""
    if g.n < 2:
        raise DomainError("edge connectivity needs at least two vertices")
    g.require_connected()
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_weighted_edges_from(g.edges())
    cut, _ = nx.stoer_wagner(h)
    return int(cut)


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def spanning_tree_count(g: Multigraph, deleted: int = 0) -> int:
    """Matrix-tree theorem: a principal minor of the Laplacian."""
    g.require_connected()
    _check_vertex(g, deleted)
    lap = laplacian(g)
    keep = [i for i in range(g.n) if i != deleted]
    return bareiss_determinant([[lap[i][j] for j in keep] for i in keep])


# -- text format -------------------------------------------------------------


def parse_graph(text: str) -> Multigraph:
    """Parse the ``vertices``/``edge`` directive format."""
    n = None
    edges: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                if parts[0] != "vertices" or len(parts) != 2:
                    raise DomainError("first directive must be 'vertices <n>'")
                n = int(parts[1])
                if n < 1:
                    raise DomainError("vertex count must be positive")
                continue
            if parts[0] != "edge" or len(parts) != 4:
                raise DomainError(f"expected 'edge <u> <v> <mult>', got {line!r}")
            u, v, m = (int(x) for x in parts[1:])
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise DomainError(f"line {lineno}: {exc}") from None
            raise DomainError(f"line {lineno}: not an integer in {line!r}") from None
        if not 0 <= u < v < n:
            raise DomainError(f"line {lineno}: need 0 <= u < v < {n}, got ({u}, {v})")
        if m < 1:
            raise DomainError(f"line {lineno}: multiplicity must be >= 1")
        if (u, v) in edges:
            raise DomainError(f"line {lineno}: duplicate edge ({u}, {v})")
        edges[(u, v)] = m
    if n is None:
        raise DomainError("empty graph file")
    return Multigraph.from_edges(n, ((u, v, m) for (u, v), m in edges.items()))


def format_graph(g: Multigraph) -> str:
    lines = [f"vertices {g.n}"]
    lines += [f"edge {u} {v} {m}" for u, v, m in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> Multigraph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Multigraph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g))
