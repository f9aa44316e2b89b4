"""Enumeration of maximal (k,r)-cores.

``naive_enum`` is the reference binary-tree search (optionally with the two
candidate pruning rules), ``advanced_enum`` adds candidate retention, early
termination and the excluded-set maximal check.
"""

from __future__ import annotations

import os
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .graph import AttributedGraph
from .ordering import OrderStrategy, choose_vertex_checkmax
from .search import (
    Branch,
    Component,
    KrCore,
    SearchState,
    Stats,
    bits,
    check_invariants,
    initial_state,
    invariant_checks_enabled,
    lowest,
    prepare,
    promote_validated,
    refine,
    restrict,
    sf_mask,
)
from .similarity import Threshold

DEFAULT_NAIVE_CAP = 20
DEFAULT_NODE_BUDGET = 10**8


class NaiveCapExceeded(RuntimeError):
    """A component is too large for exhaustive enumeration."""


@dataclass
class EnumResult:
    cores: list[KrCore] = field(default_factory=list)
    stats: Stats = field(default_factory=Stats)

    def core_set(self) -> set[tuple[int, ...]]:
        return {c.vertices for c in self.cores}


def canonical(cores: Iterable[KrCore]) -> list[KrCore]:
    """Deduplicate and sort by size (descending), then vertex list."""
    return sorted(set(cores), key=lambda c: (-c.size, c.vertices))


def drop_contained(cores: Iterable[KrCore]) -> list[KrCore]:
    """Keep only the cores not strictly contained in another one."""
    kept: list[frozenset[int]] = []
    for c in canonical(cores):
        s = frozenset(c.vertices)
        if not any(s < other for other in kept):
            kept.append(s)
    return canonical(KrCore.of(s) for s in kept)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("KRCORE_THREADS", "1")))
    except ValueError:
        return 1


def _run_components(job: Callable, comps: list[Component], *args) -> tuple[list[KrCore], Stats]:
    """Apply ``job(comp, *args) -> (cores, stats)`` to every component.

    With ``KRCORE_THREADS`` > 1 the components are farmed out to worker
    processes; the node budget then applies to each worker separately.
    """
    cores: list[KrCore] = []
    total = Stats()
    workers = min(_threads(), len(comps))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(job, comps, *[[a] * len(comps) for a in args]))
    else:
        results = (job(c, *args) for c in comps)
    for found, stats in results:
        cores.extend(found)
        total.merge(stats)
    return cores, total


# -- naive search ------------------------------------------------------------


def naive_component(comp: Component, pruning: bool, order: OrderStrategy | None,
                    node_budget: int | None = None) -> tuple[list[KrCore], Stats]:
    """Every (k,r)-core of one component, maximal or not."""
    stats = Stats(node_budget=node_budget)
    found: set[KrCore] = set()
    k = comp.k
    if not pruning:
        stack = [(0, comp.full)]
        while stack:
            M, C = stack.pop()
            stats.tick()
            if C:
                b = C & -C
                stack.append((M, C ^ b))
                stack.append((M | b, C ^ b))
                continue
            stats.leaves += 1
            if M and all(comp.degree(i, M) >= k for i in bits(M)) and comp.dp_within(M) == 0:
                found.update(KrCore.of(comp.to_ids(p)) for p in comp.split(M))
        return list(found), stats

    chooser = order.chooser() if order is not None else None
    states = [initial_state(comp)]
    while states:
        s = states.pop()
        stats.tick()
        if invariant_checks_enabled():
            check_invariants(s, stats)
        if not s.C:
            stats.leaves += 1
            if s.M:
                found.update(KrCore.of(comp.to_ids(p)) for p in comp.split(s.M))
            continue
        cand = s.C & ~sf_mask(s)
        if cand and chooser is not None:
            u, _ = chooser(s, cand)
        else:
            u = lowest(s.C)
        for branch in (Branch.SHRINK, Branch.EXPAND):
            child = refine(s, u, branch, stats)
            if child is not None:
                states.append(child)
    return list(found), stats


def naive_enum(g: AttributedGraph, k: int, threshold: Threshold, pruning_enabled: bool = False,
               order: OrderStrategy | None = None, naive_cap: int = DEFAULT_NAIVE_CAP,
               node_budget: int | None = DEFAULT_NODE_BUDGET) -> EnumResult:
    """Exhaustive enumeration followed by the pairwise containment filter.

    With ``pruning_enabled`` only the structure and similarity pruning rules
    (plus the two trivial terminations) are applied; this is the BasicEnum
    configuration.  ``order`` picks among non-similarity-free candidates in
    that mode; otherwise the lowest local id is branched on.
    """
    comps = prepare(g, k, threshold)
    for comp in comps:
        if len(comp) > naive_cap:
            raise NaiveCapExceeded(f"component of {len(comp)} vertices exceeds the naive cap of {naive_cap}")
    cores, stats = _run_components(naive_component, comps, pruning_enabled, order, node_budget)
    return EnumResult(drop_contained(cores), stats)


# -- advanced search ---------------------------------------------------------


def early_termination(s: SearchState) -> bool:
    """True when every core below this node extends by excluded vertices."""
    comp, k = s.comp, s.comp.k
    M, C, E = s.M, s.C, s.E
    if not E or not M:
        return False
    adj = comp.adj
    free_c = comp.similar_to_all(E, C)
    for u in bits(free_c):
        if (adj[u] & M).bit_count() >= k:
            return True
    free = comp.similar_to_all(free_c, E)
    if not free:
        return False
    # anchored peel: only excluded-side vertices may go
    alive = M | free
    stack = [i for i in bits(free) if (adj[i] & alive).bit_count() < k]
    while stack:
        i = stack.pop()
        b = 1 << i
        if not alive & b:
            continue
        alive ^= b
        for j in bits(adj[i] & alive & free):
            if (adj[j] & alive).bit_count() < k:
                stack.append(j)
    return bool(comp.reach(M, alive) & free)


def is_maximal_mask(comp: Component, core: int, excluded: int, stats: Stats | None = None) -> bool:
    """Search ``core`` + subsets of ``excluded`` for a strictly larger core."""
    root = restrict(SearchState(comp, core, excluded & ~core, 0))
    states = [root] if root is not None else []
    while states:
        s = states.pop()
        if stats is not None:
            stats.tick_check()
        free = sf_mask(s)
        if free == s.C:
            if s.M | s.C != core:
                return False
            continue
        u, _ = choose_vertex_checkmax(s, s.C & ~free)
        for branch in (Branch.SHRINK, Branch.EXPAND):
            child = refine(s, u, branch)
            if child is not None:
                states.append(child)
    return True


def check_maximal(core: KrCore | Iterable[int], excluded: Iterable[int], s: SearchState,
                  stats: Stats | None = None) -> bool:
    """Whether ``core`` has no strictly larger (k,r)-core inside core ∪ excluded."""
    comp = s.comp
    vertices = core.vertices if isinstance(core, KrCore) else core
    return is_maximal_mask(comp, comp.to_mask(vertices), comp.to_mask(excluded), stats)


def advanced_component(comp: Component, order: OrderStrategy,
                       node_budget: int | None = None) -> tuple[list[KrCore], Stats]:
    stats = Stats(node_budget=node_budget)
    found: list[KrCore] = []
    chooser = order.chooser()
    checking = invariant_checks_enabled()
    states = [initial_state(comp)]
    while states:
        s = states.pop()
        stats.tick()
        if checking:
            check_invariants(s, stats)
        s = promote_validated(s)
        if early_termination(s):
            stats.early_terminations += 1
            continue
        free = sf_mask(s)
        if free == s.C:
            stats.leaves += 1
            whole = s.M | s.C
            for piece in comp.split(whole):
                stats.maximal_checks += 1
                if is_maximal_mask(comp, piece, s.E | (whole & ~piece), stats):
                    found.append(KrCore.of(comp.to_ids(piece)))
            continue
        u, _ = chooser(s, s.C & ~free)
        for branch in (Branch.SHRINK, Branch.EXPAND):
            child = refine(s, u, branch, stats)
            if child is not None:
                states.append(child)
    return found, stats


def advanced_enum(g: AttributedGraph, k: int, threshold: Threshold,
                  order: OrderStrategy | None = None,
                  node_budget: int | None = DEFAULT_NODE_BUDGET) -> EnumResult:
    comps = prepare(g, k, threshold)
    cores, stats = _run_components(advanced_component, comps, order or OrderStrategy.d1_then_d2(), node_budget)
    return EnumResult(canonical(cores), stats)
