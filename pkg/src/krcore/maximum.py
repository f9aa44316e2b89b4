"""Maximum (k,r)-core search with pluggable size upper bounds.

All bounds look at J', the similarity graph induced by M ∪ C: a (k,r)-core
is a clique of J', so clique-size estimates on J' bound its size.  The
(k,k')-core bound additionally keeps the structural k-core condition on J
while peeling J' by similarity degree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .enumeration import DEFAULT_NODE_BUDGET
from .graph import AttributedGraph
from .ordering import DEFAULT_LAMBDA, OrderStrategy
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
    prepare,
    promote_validated,
    refine,
    sf_mask,
)
from .enumeration import early_termination
from .similarity import Threshold


class BoundKind(enum.Enum):
    NAIVE = "naive"
    COLOR = "color"
    KCORE = "kcore"
    KKCORE = "kkcore"


@dataclass
class MaxResult:
    best: KrCore | None = None
    stats: Stats = field(default_factory=Stats)

    @property
    def size(self) -> int:
        return self.best.size if self.best is not None else 0


def _similar_rows(s: SearchState) -> dict[int, int]:
    comp, mc = s.comp, s.M | s.C
    return {i: mc & ~comp.dis[i] & ~(1 << i) for i in bits(mc)}


def ub_naive(s: SearchState) -> int:
    return (s.M | s.C).bit_count()


def ub_color(s: SearchState) -> int:
    """Colours used by a greedy largest-degree-first colouring of J'."""
    rows = _similar_rows(s)
    order = sorted(rows, key=lambda i: (-rows[i].bit_count(), i))
    classes: list[int] = []
    for i in order:
        for c, members in enumerate(classes):
            if not members & rows[i]:
                classes[c] |= 1 << i
                break
        else:
            classes.append(1 << i)
    return len(classes)


def ub_kcore(s: SearchState) -> int:
    """Degeneracy of J' plus one."""
    rows = _similar_rows(s)
    if not rows:
        return 0
    alive = 0
    for i in rows:
        alive |= 1 << i
    best = 0
    while alive:
        i = min(bits(alive), key=lambda j: ((rows[j] & alive).bit_count(), j))
        best = max(best, (rows[i] & alive).bit_count())
        alive &= ~(1 << i)
    return best + 1


def ub_kkcore(s: SearchState) -> int:
    """Largest k' admitting a (k,k')-core inside M ∪ C, plus one.

    Similarity-degree peeling driven by a bucket array; removing a vertex
    also lowers structural degrees and drags out every vertex that falls
    below k.
    """
    comp, k = s.comp, s.comp.k
    mc = s.M | s.C
    if not mc:
        return 0
    sim_rows = _similar_rows(s)
    adj = comp.adj
    dsim = {i: row.bit_count() for i, row in sim_rows.items()}
    deg = {i: (adj[i] & mc).bit_count() for i in sim_rows}
    top = max(dsim.values())
    buckets: list[set[int]] = [set() for _ in range(top + 1)]
    for i, d in dsim.items():
        buckets[d].add(i)
    alive = mc
    level = 0
    kmax = 0

    def drop(u: int, kp: int) -> None:
        nonlocal alive
        stack = [u]
        doomed = 1 << u
        while stack:
            x = stack.pop()
            alive &= ~(1 << x)
            buckets[dsim[x]].discard(x)
            for v in bits(sim_rows[x] & alive):
                dv = dsim[v]
                if dv > kp:
                    buckets[dv].discard(v)
                    dsim[v] = dv - 1
                    buckets[dv - 1].add(v)
            for v in bits(adj[x] & alive):
                deg[v] -= 1
                if deg[v] < k and not doomed >> v & 1:
                    doomed |= 1 << v
                    stack.append(v)

    while alive:
        while not buckets[level]:
            level += 1
        u = min(buckets[level])
        kp = dsim[u]
        kmax = max(kmax, kp)
        drop(u, kp)
    return kmax + 1


BOUNDS = {
    BoundKind.NAIVE: ub_naive,
    BoundKind.COLOR: ub_color,
    BoundKind.KCORE: ub_kcore,
    BoundKind.KKCORE: ub_kkcore,
}


def _search_component(comp: Component, bound: BoundKind, order: OrderStrategy,
                      best: KrCore | None, stats: Stats, probe=None) -> KrCore | None:
    ub = BOUNDS[bound]
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
        size = best.size if best is not None else 0
        if probe is not None:
            probe(s, size)
        if ub(s) <= size:
            stats.bound_cutoffs += 1
            continue
        free = sf_mask(s)
        if free == s.C:
            stats.leaves += 1
            pieces = [KrCore.of(comp.to_ids(p)) for p in comp.split(s.M | s.C)]
            top = min(pieces, key=lambda c: (-c.size, c.vertices))
            if top.size > size:
                best = top
            continue
        u, first = chooser(s, s.C & ~free)
        second = Branch.SHRINK if first is Branch.EXPAND else Branch.EXPAND
        for branch in (second, first):
            child = refine(s, u, branch, stats)
            if child is not None:
                states.append(child)
    return best


def _ordered_components(comps: list[Component]) -> list[Component]:
    if not comps:
        return comps
    lead = max(comps, key=lambda c: c.top)
    return [lead] + sorted((c for c in comps if c is not lead), key=lambda c: (-len(c), c.vertices[0]))


def find_maximum(g: AttributedGraph, k: int, threshold: Threshold, bound: BoundKind = BoundKind.KKCORE,
                 lam: float = DEFAULT_LAMBDA, order: OrderStrategy | None = None,
                 node_budget: int | None = DEFAULT_NODE_BUDGET) -> MaxResult:
    """Largest (k,r)-core of ``g``, or ``best=None`` if there is none.

    Components are visited starting with the one holding the highest-degree
    vertex, then by decreasing size.  Among equally large cores the first
    one reached wins.
    """
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    order = order or OrderStrategy.lambda_score(lam)
    comps = prepare(g, k, threshold)
    comps = _ordered_components(comps)
    stats = Stats(node_budget=node_budget)
    best = None
    for comp in comps:
        if best is not None and len(comp) <= best.size:
            stats.bound_cutoffs += 1
            continue
        best = _search_component(comp, bound, order, best, stats)
    return MaxResult(best, stats)


def cutoff_profile(g: AttributedGraph, k: int, threshold: Threshold, lam: float = DEFAULT_LAMBDA,
                   order: OrderStrategy | None = None) -> tuple[dict[BoundKind, int], int]:
    """How many nodes each bound would cut along one shared search trajectory.

    The trajectory is the naive-bound search; at every node all bounds are
    evaluated against the incumbent size, so the counts are directly
    comparable.  Returns the per-bound counts and the number of nodes seen.
    """
    order = order or OrderStrategy.lambda_score(lam)
    counts = {b: 0 for b in BoundKind}
    seen = 0

    def probe(s: SearchState, size: int) -> None:
        nonlocal seen
        seen += 1
        for b, fn in BOUNDS.items():
            if fn(s) <= size:
                counts[b] += 1

    stats = Stats()
    best = None
    for comp in _ordered_components(prepare(g, k, threshold)):
        best = _search_component(comp, BoundKind.NAIVE, order, best, stats, probe)
    return counts, seen
