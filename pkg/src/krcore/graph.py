"""Attributed graph model, induced-subgraph helpers and k-core peeling.

Vertices are dense integers ``0..n-1``; the external identifiers read from
input files are kept in ``AttributedGraph.labels`` so results can be mapped
back.  Vertex subsets are plain Python sets (or frozensets) of ids.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-domain vertex queries."""


@dataclass(frozen=True)
class KeywordAttr:
    """Weighted keyword multiset, e.g. the venues an author published at."""

    weights: Mapping[str, float] = field(hash=False)

    def __post_init__(self):
        for token, w in self.weights.items():
            if not w > 0:
                raise GraphError(f"keyword {token!r} has non-positive weight {w}")


@dataclass(frozen=True)
class PointAttr:
    """A 2D location; for geo data ``x`` is latitude and ``y`` longitude."""

    x: float
    y: float


VertexAttr = KeywordAttr | PointAttr


class AttributedGraph:
    """Immutable undirected simple graph with one attribute per vertex.

    Self-loops and repeated edges are dropped at construction; the number of
    dropped items is available as ``dropped_self_loops`` and
    ``dropped_duplicates``.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        attrs: Sequence[VertexAttr],
        labels: Sequence[Hashable] | None = None,
    ):
        if len(attrs) != n:
            raise GraphError(f"expected {n} attributes, got {len(attrs)}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        self.dropped_self_loops = 0
        self.dropped_duplicates = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                self.dropped_self_loops += 1
                continue
            if v in nbrs[u]:
                self.dropped_duplicates += 1
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.attrs: tuple[VertexAttr, ...] = tuple(attrs)
        self.labels: tuple[Hashable, ...] = tuple(labels) if labels is not None else tuple(range(n))
        self._adjsets = nbrs

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def vertices(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adj[u]

    def edges(self) -> Iterable[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            for v in row:
                if u < v:
                    yield u, v

    def filter_edges(self, keep: Callable[[int, int], bool]) -> AttributedGraph:
        """Copy of the graph keeping only edges for which ``keep(u, v)`` holds."""
        return AttributedGraph(
            self.n, [(u, v) for u, v in self.edges() if keep(u, v)], self.attrs, self.labels
        )

    def __repr__(self):
        return f"AttributedGraph(n={self.n}, m={self.m})"


def degree_in(g: AttributedGraph, u: int, subset: Iterable[int]) -> int:
    """Number of neighbours of ``u`` inside ``subset`` (which must contain ``u``)."""
    s = subset if isinstance(subset, (set, frozenset)) else set(subset)
    if u not in s:
        raise GraphError(f"vertex {u} is not in the subset")
    return sum(1 for v in g.adj[u] if v in s)


def k_core(g: AttributedGraph, subset: Iterable[int], k: int) -> set[int]:
    """Largest subset of ``subset`` whose induced min degree is at least ``k``.

    Queue-driven peeling; every induced edge is touched at most twice.
    """
    if k < 1:
        raise GraphError("k must be >= 1")
    alive = set(subset)
    deg = {u: sum(1 for v in g.adj[u] if v in alive) for u in alive}
    queue = deque(u for u, d in deg.items() if d < k)
    removed = set(queue)
    while queue:
        u = queue.popleft()
        alive.discard(u)
        for v in g.adj[u]:
            if v in alive and v not in removed:
                deg[v] -= 1
                if deg[v] < k:
                    removed.add(v)
                    queue.append(v)
    return alive


def connected_components(g: AttributedGraph, subset: Iterable[int]) -> list[set[int]]:
    """Components of the subgraph induced by ``subset``, ordered by smallest id."""
    remaining = set(subset)
    comps = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        remaining.discard(start)
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.adj[u]:
                if v in remaining:
                    remaining.discard(v)
                    comp.add(v)
                    stack.append(v)
        comps.append(comp)
    return comps


def induced_edge_count(g: AttributedGraph, subset: Iterable[int]) -> int:
    s = subset if isinstance(subset, (set, frozenset)) else set(subset)
    return sum(1 for u in s for v in g.adj[u] if v in s) // 2


def core_numbers(adj: Mapping[int, Iterable[int]]) -> dict[int, int]:
    """Core number of every vertex via bucket-ordered peeling.

    ``adj`` maps each vertex to its neighbours; neighbours outside the keys
    are ignored, so a restricted view of a bigger graph can be passed in.
    """
    nbrs = {u: [v for v in vs if v in adj] for u, vs in adj.items()}
    deg = {u: len(vs) for u, vs in nbrs.items()}
    if not deg:
        return {}
    maxdeg = max(deg.values())
    buckets: list[set[int]] = [set() for _ in range(maxdeg + 1)]
    for u, d in deg.items():
        buckets[d].add(u)
    core: dict[int, int] = {}
    current = 0
    for _ in range(len(deg)):
        while not buckets[current]:
            current += 1
        u = min(buckets[current])
        buckets[current].discard(u)
        core[u] = current
        for v in nbrs[u]:
            if v in core:
                continue
            dv = deg[v]
            if dv > current:
                buckets[dv].discard(v)
                deg[v] = dv - 1
                buckets[dv - 1].add(v)
        # a decrement can only land in bucket ``current``, so no need to rewind
    return core
