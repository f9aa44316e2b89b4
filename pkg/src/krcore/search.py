"""Search nodes (M, C, E), preprocessing and candidate refinement.

Inside a component every vertex set is an int bitmask over the component's
local positions (see :class:`SimilarityIndex`).  Degree and dissimilar-pair
counts are popcounts of masked adjacency rows, so they are always consistent
with the sets and never need incremental bookkeeping.
"""

from __future__ import annotations

import enum
import os
from collections import Counter
from dataclasses import dataclass, field

from .graph import AttributedGraph, connected_components, k_core
from .similarity import SimilarityIndex, Threshold, build_similarity_index, check_attributes, is_similar


class BudgetExceeded(RuntimeError):
    """The global search-node budget ran out."""


class InvariantError(AssertionError):
    pass


class Branch(enum.Enum):
    EXPAND = "expand"
    SHRINK = "shrink"


def bits(mask: int):
    """Yield the positions of set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


_check_invariants = os.environ.get("KRCORE_CHECK_INVARIANTS", "") not in ("", "0")


def set_invariant_checks(enabled: bool) -> bool:
    """Toggle per-node invariant assertions; returns the previous setting."""
    global _check_invariants
    previous, _check_invariants = _check_invariants, enabled
    return previous


def invariant_checks_enabled() -> bool:
    return _check_invariants


@dataclass
class Stats:
    nodes_visited: int = 0
    early_terminations: int = 0
    maximal_checks: int = 0
    maximal_check_nodes: int = 0
    bound_cutoffs: int = 0
    invariant_checks: int = 0
    leaves: int = 0
    prunes_by_kind: Counter = field(default_factory=Counter)
    node_budget: int | None = None

    def tick(self) -> None:
        self.nodes_visited += 1
        if self.node_budget is not None and self.total_nodes() > self.node_budget:
            raise BudgetExceeded(f"node budget of {self.node_budget} exhausted")

    def tick_check(self) -> None:
        self.maximal_check_nodes += 1
        if self.node_budget is not None and self.total_nodes() > self.node_budget:
            raise BudgetExceeded(f"node budget of {self.node_budget} exhausted")

    def total_nodes(self) -> int:
        return self.nodes_visited + self.maximal_check_nodes

    def merge(self, other: Stats) -> None:
        for name in ("nodes_visited", "early_terminations", "maximal_checks", "maximal_check_nodes",
                     "bound_cutoffs", "invariant_checks", "leaves"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.prunes_by_kind.update(other.prunes_by_kind)

    def as_dict(self) -> dict:
        return {
            "nodes_visited": self.nodes_visited,
            "leaves": self.leaves,
            "prunes_by_kind": dict(sorted(self.prunes_by_kind.items())),
            "early_terminations": self.early_terminations,
            "maximal_checks": self.maximal_checks,
            "maximal_check_nodes": self.maximal_check_nodes,
            "bound_cutoffs": self.bound_cutoffs,
        }


@dataclass(frozen=True, order=True)
class KrCore:
    """A (k,r)-core as a sorted tuple of graph vertex ids."""

    vertices: tuple[int, ...]

    @classmethod
    def of(cls, vertices) -> KrCore:
        return cls(tuple(sorted(vertices)))

    @property
    def size(self) -> int:
        return len(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.vertices


class Component:
    """One connected k-core component prepared for search.

    ``adj[i]`` is the structural neighbourhood of local vertex ``i`` (after
    dissimilar edges were deleted) and ``dis[i]`` its dissimilar set.
    """

    def __init__(self, graph: AttributedGraph, index: SimilarityIndex, k: int):
        self.index = index
        self.k = k
        self.dis = index.dissimilar
        pos = index.pos
        self.adj = []
        for v in index.vertices:
            m = 0
            for w in graph.adj[v]:
                j = pos.get(w)
                if j is not None:
                    m |= 1 << j
            self.adj.append(m)
        self.full = (1 << len(index)) - 1
        # (degree, -id) of the best-connected vertex, for ordering components
        self.top = max((len(graph.adj[v]), -v) for v in index.vertices)

    def __len__(self):
        return len(self.index)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.index.vertices

    def to_ids(self, mask: int) -> list[int]:
        return self.index.unmask(mask)

    def to_mask(self, ids) -> int:
        return self.index.mask(ids)

    def degree(self, i: int, within: int) -> int:
        return (self.adj[i] & within).bit_count()

    def peel(self, alive: int, k: int | None = None) -> int:
        """Mask of vertices removed when taking the k-core of ``alive``."""
        if k is None:
            k = self.k
        adj = self.adj
        removed = 0
        stack = [i for i in bits(alive) if (adj[i] & alive).bit_count() < k]
        while stack:
            i = stack.pop()
            b = 1 << i
            if not alive & b:
                continue
            alive ^= b
            removed |= b
            for j in bits(adj[i] & alive):
                if (adj[j] & alive).bit_count() < k:
                    stack.append(j)
        return removed

    def reach(self, seed: int, within: int) -> int:
        """Vertices of ``within`` connected to any vertex of the ``seed`` mask."""
        seen = seed
        frontier = seen
        adj = self.adj
        while frontier:
            nxt = 0
            for i in bits(frontier):
                nxt |= adj[i]
            nxt &= within & ~seen
            seen |= nxt
            frontier = nxt
        return seen

    def split(self, mask: int) -> list[int]:
        """Connected pieces of ``mask``, ordered by lowest position."""
        out = []
        while mask:
            piece = self.reach(mask & -mask, mask)
            out.append(piece)
            mask &= ~piece
        return out

    def edges_within(self, mask: int) -> int:
        return sum((self.adj[i] & mask).bit_count() for i in bits(mask)) // 2

    def dp_within(self, mask: int) -> int:
        return sum((self.dis[i] & mask).bit_count() for i in bits(mask)) // 2

    def similar_to_all(self, mask: int, of: int) -> int:
        """Members of ``mask`` that have no dissimilar vertex in ``of``."""
        dis = self.dis
        out = 0
        for i in bits(mask):
            if not dis[i] & of:
                out |= 1 << i
        return out


@dataclass(frozen=True)
class SearchState:
    comp: Component
    M: int
    C: int
    E: int = 0

    @property
    def k(self) -> int:
        return self.comp.k

    @property
    def MC(self) -> int:
        return self.M | self.C

    def deg_mc(self, i: int) -> int:
        return (self.comp.adj[i] & (self.M | self.C)).bit_count()

    def dp_c(self, i: int) -> int:
        return (self.comp.dis[i] & self.C).bit_count()

    def dp_m(self, i: int) -> int:
        return (self.comp.dis[i] & self.M).bit_count()

    def dp_total_c(self) -> int:
        return self.comp.dp_within(self.C)

    def ids(self) -> tuple[list[int], list[int], list[int]]:
        to = self.comp.to_ids
        return to(self.M), to(self.C), to(self.E)


def prepare(g: AttributedGraph, k: int, threshold: Threshold) -> list[Component]:
    """Drop dissimilar edges, take the k-core and index each connected piece."""
    if k < 1:
        raise ValueError("k must be >= 1")
    check_attributes(g, threshold.metric)
    pruned = g.filter_edges(lambda u, v: is_similar(g, u, v, threshold))
    core = k_core(pruned, range(g.n), k)
    return [
        Component(pruned, build_similarity_index(g, piece, threshold), k)
        for piece in connected_components(pruned, core)
    ]


def initial_state(comp: Component) -> SearchState:
    return SearchState(comp, 0, comp.full, 0)


def preprocess(g: AttributedGraph, k: int, threshold: Threshold) -> list[SearchState]:
    return [initial_state(c) for c in prepare(g, k, threshold)]


def refine(s: SearchState, moved: int, branch: Branch, stats: Stats | None = None) -> SearchState | None:
    """Child of ``s`` after moving local vertex ``moved`` along ``branch``.

    Returns None when the child cannot contain a (k,r)-core that includes M.
    """
    bit = 1 << moved
    if not s.C & bit:
        raise ValueError(f"vertex {moved} is not a candidate")
    comp = s.comp
    M, C, E = s.M, s.C & ~bit, s.E
    counts = stats.prunes_by_kind if stats is not None else Counter()
    if branch is Branch.EXPAND:
        M |= bit
        dropped = C & comp.dis[moved]
        C &= ~dropped
        E &= ~comp.dis[moved]
        counts["similarity"] += dropped.bit_count()
        removed = 0
    else:
        removed = bit
    return _settle(comp, M, C, E, removed, counts)


def _settle(comp: Component, M: int, C: int, E: int, removed: int, counts: Counter) -> SearchState | None:
    peeled = comp.peel(M | C)
    if peeled & M:
        counts["chosen_removed"] += 1
        return None
    counts["structure"] += peeled.bit_count()
    C &= ~peeled
    removed |= peeled
    if M:
        reach = comp.reach(M & -M, M | C)
        if M & ~reach:
            counts["disconnected"] += 1
            return None
        cut = C & ~reach
        if cut:
            counts["connectivity"] += cut.bit_count()
            C &= ~cut
            removed |= cut
    E |= comp.similar_to_all(removed, M)
    E &= ~(M | C)
    return SearchState(comp, M, C, E)


def restrict(s: SearchState) -> SearchState | None:
    """Apply the pruning rules to a hand-built state."""
    comp = s.comp
    C = s.C & ~_dissimilar_to(comp, s.C, s.M)
    E = s.E & ~_dissimilar_to(comp, s.E, s.M)
    return _settle(comp, s.M, C, E, 0, Counter())


def _dissimilar_to(comp: Component, mask: int, of: int) -> int:
    return mask & ~comp.similar_to_all(mask, of)


def check_invariants(s: SearchState, stats: Stats | None = None) -> None:
    comp, M, C, E = s.comp, s.M, s.C, s.E
    if M & C or M & E or C & E:
        raise InvariantError("M, C and E must be disjoint")
    mc = M | C
    for i in bits(M):
        if comp.dis[i] & mc:
            raise InvariantError(f"similarity invariant broken at local vertex {i}")
    for i in bits(mc):
        if (comp.adj[i] & mc).bit_count() < comp.k:
            raise InvariantError(f"degree invariant broken at local vertex {i}")
    for i in bits(E):
        if comp.dis[i] & M:
            raise InvariantError(f"excluded vertex {i} is dissimilar to M")
    if stats is not None:
        stats.invariant_checks += 1


def sf_mask(s: SearchState) -> int:
    """Candidates with no dissimilar partner inside C."""
    return s.comp.similar_to_all(s.C, s.C)


def sf_set(s: SearchState) -> set[int]:
    return set(s.comp.to_ids(sf_mask(s)))


def promote_validated(s: SearchState) -> SearchState:
    """Move similarity-free candidates with >= k neighbours in M into M."""
    comp, k = s.comp, s.comp.k
    M, C = s.M, s.C
    free = comp.similar_to_all(C, C)
    changed = True
    while changed:
        changed = False
        for i in bits(free & C):
            if (comp.adj[i] & M).bit_count() >= k:
                M |= 1 << i
                C &= ~(1 << i)
                changed = True
    if M == s.M:
        return s
    return SearchState(comp, M, C, comp.similar_to_all(s.E, M))
