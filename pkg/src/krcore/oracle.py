"""Brute-force ground truth.

Deliberately shares nothing with the search engine: it works on the raw
graph, re-derives the k-core by repeated deletion and checks every subset of
each component from scratch.
"""

from __future__ import annotations

from .enumeration import EnumResult, NaiveCapExceeded
from .graph import AttributedGraph
from .search import KrCore, Stats
from .similarity import Threshold, is_similar

DEFAULT_ORACLE_CAP = 20


def is_kr_core(g: AttributedGraph, vertices, k: int, threshold: Threshold) -> bool:
    """Direct check of connectivity, min degree >= k and pairwise similarity."""
    vs = set(vertices)
    if not vs:
        return False
    for u in vs:
        if sum(1 for w in g.adj[u] if w in vs) < k:
            return False
    ordered = sorted(vs)
    for i, u in enumerate(ordered):
        for v in ordered[i + 1:]:
            if not is_similar(g, u, v, threshold):
                return False
    seen = {ordered[0]}
    todo = [ordered[0]]
    while todo:
        u = todo.pop()
        for w in g.adj[u]:
            if w in vs and w not in seen:
                seen.add(w)
                todo.append(w)
    return seen == vs


def _components_of_k_core(g: AttributedGraph, k: int) -> list[list[int]]:
    alive = set(range(g.n))
    while True:
        low = [u for u in alive if sum(1 for w in g.adj[u] if w in alive) < k]
        if not low:
            break
        alive.difference_update(low)
    comps = []
    left = set(alive)
    while left:
        start = min(left)
        comp, todo = {start}, [start]
        while todo:
            u = todo.pop()
            for w in g.adj[u]:
                if w in left and w not in comp:
                    comp.add(w)
                    todo.append(w)
        left -= comp
        comps.append(sorted(comp))
    return comps


def _component_cores(g: AttributedGraph, verts: list[int], k: int, threshold: Threshold, stats: Stats,
                     maximal: bool = True) -> list[int]:
    n = len(verts)
    adj = [0] * n
    sim = [0] * n
    for i, u in enumerate(verts):
        for j, v in enumerate(verts):
            if i == j:
                continue
            if g.has_edge(u, v):
                adj[i] |= 1 << j
            if is_similar(g, u, v, threshold):
                sim[i] |= 1 << j
    valid = []
    for subset in range(1, 1 << n):
        stats.nodes_visited += 1
        ok = True
        rest = subset
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            others = subset & ~(1 << i)
            if others & ~sim[i] or bin(adj[i] & subset).count("1") < k:
                ok = False
                break
        if not ok:
            continue
        start = subset & -subset
        seen, frontier = start, start
        while frontier:
            nxt = 0
            f = frontier
            while f:
                i = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= adj[i]
            frontier = nxt & subset & ~seen
            seen |= frontier
        if seen == subset:
            valid.append(subset)
    if not maximal:
        return valid
    valid.sort(key=lambda s: -bin(s).count("1"))
    kept: list[int] = []
    for s in valid:
        if not any(s & o == s and s != o for o in kept):
            kept.append(s)
    return kept


def brute_force_mkrc(g: AttributedGraph, k: int, threshold: Threshold, cap: int = DEFAULT_ORACLE_CAP) -> EnumResult:
    stats = Stats()
    cores = []
    for verts in _components_of_k_core(g, k):
        if len(verts) > cap:
            raise NaiveCapExceeded(f"component of {len(verts)} vertices exceeds the oracle cap of {cap}")
        for mask in _component_cores(g, verts, k, threshold, stats):
            cores.append(KrCore.of(v for i, v in enumerate(verts) if mask >> i & 1))
    cores.sort(key=lambda c: (-c.size, c.vertices))
    return EnumResult(cores, stats)


def brute_force_maximum(g: AttributedGraph, k: int, threshold: Threshold,
                        cap: int = DEFAULT_ORACLE_CAP) -> KrCore | None:
    cores = brute_force_mkrc(g, k, threshold, cap).cores
    return cores[0] if cores else None


def all_kr_cores(g: AttributedGraph, k: int, threshold: Threshold, cap: int = DEFAULT_ORACLE_CAP) -> list[frozenset[int]]:
    """Every (k,r)-core of ``g``, maximal or not."""
    out = []
    for verts in _components_of_k_core(g, k):
        if len(verts) > cap:
            raise NaiveCapExceeded(f"component of {len(verts)} vertices exceeds the oracle cap of {cap}")
        for mask in _component_cores(g, verts, k, threshold, Stats(), maximal=False):
            out.append(frozenset(v for i, v in enumerate(verts) if mask >> i & 1))
    return out
