"""Synthetic instances: explicit similar/dissimilar patterns and planted communities."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable

from .graph import AttributedGraph, KeywordAttr, PointAttr
from .similarity import Metric, Threshold

# Jaccard is positive exactly for pairs sharing a token, so any tiny positive
# cut-off turns "shares a token" into the similarity predicate.
PATTERN_THRESHOLD = Threshold(Metric.WEIGHTED_JACCARD, 1e-9)


def from_pattern(n: int, edges: Iterable[tuple[int, int]],
                 dissimilar: Iterable[tuple[int, int]] = ()) -> tuple[AttributedGraph, Threshold]:
    """Graph whose dissimilar pairs are exactly ``dissimilar`` under the returned threshold.

    Every vertex carries a private token plus one token per similar pair it
    belongs to, so two vertices overlap iff they are meant to be similar.
    """
    bad = {frozenset(p) for p in dissimilar}
    tokens: list[dict[str, float]] = [{f"v{u}": 1.0} for u in range(n)]
    for u, v in itertools.combinations(range(n), 2):
        if frozenset((u, v)) not in bad:
            tokens[u][f"p{u}_{v}"] = 1.0
            tokens[v][f"p{u}_{v}"] = 1.0
    return AttributedGraph(n, edges, [KeywordAttr(t) for t in tokens]), PATTERN_THRESHOLD


def complete_edges(vertices: Iterable[int]) -> list[tuple[int, int]]:
    return list(itertools.combinations(sorted(vertices), 2))


def random_instance(n: int, p_edge: float, p_dissimilar: float, seed: int) -> tuple[AttributedGraph, Threshold]:
    """G(n, p) structure with each vertex pair independently dissimilar."""
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p_edge]
    dis = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p_dissimilar]
    return from_pattern(n, edges, dis)


def planted_communities(n: int = 50_000, avg_degree: float = 8.0, community_size: int = 40,
                        dissimilar_rate: float = 0.01, inter_fraction: float = 0.1,
                        seed: int = 0) -> tuple[AttributedGraph, Threshold]:
    """Geo-attributed graph with dense, spatially separated communities.

    Members of a community sit uniformly on a segment of length 1; the
    Euclidean threshold is chosen so that a fraction ``dissimilar_rate`` of
    the pairs inside a community are farther apart than it.  Communities are
    placed far from each other, so every inter-community edge is dissimilar.
    """
    rng = random.Random(seed)
    # uniform on [0, 1]: P(|X - Y| > r) = (1 - r)^2
    r = 1.0 - dissimilar_rate ** 0.5
    groups = [list(range(s, min(s + community_size, n))) for s in range(0, n, community_size)]
    attrs: list[PointAttr] = [None] * n  # type: ignore[list-item]
    edges = []
    intra_degree = avg_degree * (1 - inter_fraction)
    for gi, members in enumerate(groups):
        for v in members:
            attrs[v] = PointAttr(10.0 * gi + rng.random(), 0.0)
        p_in = min(1.0, intra_degree / max(1, len(members) - 1))
        edges.extend((u, v) for u, v in itertools.combinations(members, 2) if rng.random() < p_in)
    for _ in range(int(n * avg_degree * inter_fraction / 2)):
        edges.append((rng.randrange(n), rng.randrange(n)))
    return AttributedGraph(n, edges, attrs), Threshold(Metric.EUCLIDEAN, r)
