"""Clique-based baseline: maximal cliques of the similarity graph, then k-cores.

Every (k,r)-core is a clique of the similarity graph, so the maximal cores
can be recovered from the k-cores of the maximal cliques, after filtering
the ones contained in others.
"""

from __future__ import annotations

from collections.abc import Mapping

from .enumeration import EnumResult, drop_contained
from .graph import AttributedGraph
from .search import KrCore, Stats, bits, prepare
from .similarity import Threshold


class CliqueBudgetExceeded(RuntimeError):
    pass


def _masks(adj: Mapping[int, set[int]]) -> tuple[list[int], list[int]]:
    verts = sorted(adj)
    pos = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for v, nbrs in adj.items():
        for w in nbrs:
            if w in pos and w != v:
                rows[pos[v]] |= 1 << pos[w]
                rows[pos[w]] |= 1 << pos[v]
    return verts, rows


def _cliques_masked(rows: list[int], budget: int | None) -> list[int]:
    """Bron-Kerbosch with Tomita pivoting over bitmask rows."""
    out: list[int] = []
    stack = [(0, (1 << len(rows)) - 1, 0)]
    while stack:
        R, P, X = stack.pop()
        if not P:
            if not X:
                out.append(R)
                if budget is not None and len(out) > budget:
                    raise CliqueBudgetExceeded(f"more than {budget} maximal cliques")
            continue
        pivot = max(bits(P | X), key=lambda u: ((rows[u] & P).bit_count(), -u))
        branch = []
        for v in bits(P & ~rows[pivot]):
            b = 1 << v
            branch.append((R | b, P & rows[v], X & rows[v]))
            P &= ~b
            X |= b
        stack.extend(reversed(branch))
    return out


def maximal_cliques(adj: Mapping[int, set[int]], budget: int | None = None) -> list[tuple[int, ...]]:
    """All maximal cliques of ``adj`` as sorted tuples, in canonical order."""
    verts, rows = _masks(adj)
    cliques = [tuple(verts[i] for i in bits(m)) for m in _cliques_masked(rows, budget)]
    return sorted(cliques, key=lambda c: (-len(c), c))


def clique_based_enum(g: AttributedGraph, k: int, threshold: Threshold,
                      clique_budget: int | None = None) -> EnumResult:
    stats = Stats()
    found: list[KrCore] = []
    for comp in prepare(g, k, threshold):
        sim_rows = [comp.full & ~comp.dis[i] & ~(1 << i) for i in range(len(comp))]
        for clique in _cliques_masked(sim_rows, clique_budget):
            stats.nodes_visited += 1
            core = clique & ~comp.peel(clique)
            for piece in comp.split(core):
                found.append(KrCore.of(comp.to_ids(piece)))
    return EnumResult(drop_contained(found), stats)
