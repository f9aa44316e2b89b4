"""Attribute similarity, the similar/dissimilar predicate and per-component pair index."""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .graph import AttributedGraph, KeywordAttr, PointAttr, VertexAttr

EARTH_RADIUS_KM = 6371.0


class ConfigError(ValueError):
    """Metric/attribute mismatch or an unusable threshold."""


class Metric(enum.Enum):
    WEIGHTED_JACCARD = "jaccard"
    EUCLIDEAN = "euclidean"
    HAVERSINE = "haversine"

    @property
    def is_distance(self) -> bool:
        return self is not Metric.WEIGHTED_JACCARD

    @property
    def attr_type(self) -> type:
        return PointAttr if self.is_distance else KeywordAttr


@dataclass(frozen=True)
class Threshold:
    """Similarity rule: a metric plus the cut-off ``r``.

    For Jaccard two vertices are similar when the score is >= r, for the
    distance metrics when the distance is <= r.  The boundary is similar in
    both cases.
    """

    metric: Metric
    r: float

    def __post_init__(self):
        if not math.isfinite(self.r):
            raise ConfigError(f"threshold must be finite, got {self.r}")

    def accepts(self, score: float) -> bool:
        return score <= self.r if self.metric.is_distance else score >= self.r


def weighted_jaccard(a: KeywordAttr, b: KeywordAttr) -> float:
    wa, wb = a.weights, b.weights
    if not wa and not wb:
        raise ConfigError("weighted Jaccard is undefined for two empty keyword sets")
    lo = hi = 0.0
    for t in wa.keys() | wb.keys():
        x, y = wa.get(t, 0.0), wb.get(t, 0.0)
        lo += min(x, y)
        hi += max(x, y)
    return lo / hi


def haversine_km(a: PointAttr, b: PointAttr) -> float:
    lat1, lon1, lat2, lon2 = map(math.radians, (a.x, a.y, b.x, b.y))
    h = math.sin((lat2 - lat1) / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def similarity_score(a: VertexAttr, b: VertexAttr, metric: Metric) -> float:
    want = metric.attr_type
    if not isinstance(a, want) or not isinstance(b, want):
        raise ConfigError(f"{metric.value} needs {want.__name__} attributes")
    if metric is Metric.WEIGHTED_JACCARD:
        return weighted_jaccard(a, b)
    if metric is Metric.EUCLIDEAN:
        return math.hypot(a.x - b.x, a.y - b.y)
    return haversine_km(a, b)


def is_similar(g: AttributedGraph, u: int, v: int, threshold: Threshold) -> bool:
    if u == v:
        raise ValueError("similarity is only defined between distinct vertices")
    return threshold.accepts(similarity_score(g.attrs[u], g.attrs[v], threshold.metric))


def check_attributes(g: AttributedGraph, metric: Metric) -> None:
    want = metric.attr_type
    for u, a in enumerate(g.attrs):
        if not isinstance(a, want):
            raise ConfigError(f"vertex {g.labels[u]!r}: {metric.value} needs {want.__name__} attributes")
        if want is KeywordAttr and not a.weights:
            raise ConfigError(f"vertex {g.labels[u]!r} has an empty keyword set")


def _dissimilar_matrix(attrs: list[VertexAttr], threshold: Threshold) -> np.ndarray:
    """Boolean matrix, True where the pair is dissimilar (diagonal False)."""
    n = len(attrs)
    metric = threshold.metric
    if metric is Metric.WEIGHTED_JACCARD:
        bad = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in range(i + 1, n):
                if not threshold.accepts(weighted_jaccard(attrs[i], attrs[j])):
                    bad[i, j] = bad[j, i] = True
        return bad
    xy = np.array([(a.x, a.y) for a in attrs], dtype=float).reshape(n, 2)
    if metric is Metric.EUCLIDEAN:
        dist = np.hypot(xy[:, None, 0] - xy[None, :, 0], xy[:, None, 1] - xy[None, :, 1])
    else:
        lat, lon = np.radians(xy[:, 0]), np.radians(xy[:, 1])
        h = (
            np.sin((lat[:, None] - lat[None, :]) / 2) ** 2
            + np.cos(lat)[:, None] * np.cos(lat)[None, :] * np.sin((lon[:, None] - lon[None, :]) / 2) ** 2
        )
        dist = 2 * EARTH_RADIUS_KM * np.arcsin(np.minimum(1.0, np.sqrt(h)))
    bad = dist > threshold.r
    np.fill_diagonal(bad, False)
    return bad


class SimilarityIndex:
    """All-pairs similar/dissimilar relation inside one component.

    Component vertices get local positions ``0..len-1`` in ascending global id
    order.  ``dissimilar[i]`` is an int bitmask over local positions; the
    search engine works on these masks directly.
    """

    def __init__(self, vertices: Iterable[int], dissimilar: list[int]):
        self.vertices: tuple[int, ...] = tuple(vertices)
        self.pos = {v: i for i, v in enumerate(self.vertices)}
        self.dissimilar = dissimilar

    def __len__(self):
        return len(self.vertices)

    def mask(self, subset: Iterable[int]) -> int:
        m = 0
        for v in subset:
            m |= 1 << self.pos[v]
        return m

    def unmask(self, mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.vertices[low.bit_length() - 1])
            mask ^= low
        return out

    def is_similar(self, u: int, v: int) -> bool:
        if u == v:
            raise ValueError("similarity is only defined between distinct vertices")
        return not (self.dissimilar[self.pos[u]] >> self.pos[v]) & 1

    def dp_vertex(self, u: int, subset: Iterable[int]) -> int:
        """DP(u, S): vertices of S dissimilar to u."""
        return (self.dissimilar[self.pos[u]] & self.mask(subset)).bit_count()

    def sp_vertex(self, u: int, subset: Iterable[int]) -> int:
        """SP(u, S): vertices of S other than u that are similar to u."""
        s = self.mask(subset)
        return (s & ~self.dissimilar[self.pos[u]] & ~(1 << self.pos[u])).bit_count()

    def dp(self, subset: Iterable[int]) -> int:
        """DP(S): dissimilar pairs inside S."""
        s = self.mask(subset)
        return sum((self.dissimilar[i] & s).bit_count() for i in _bits(s)) // 2

    def dissimilar_pairs(self) -> int:
        return sum(d.bit_count() for d in self.dissimilar) // 2


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def build_similarity_index(g: AttributedGraph, component: Iterable[int], threshold: Threshold) -> SimilarityIndex:
    verts = sorted(component)
    if not verts:
        raise ValueError("cannot index an empty component")
    bad = _dissimilar_matrix([g.attrs[v] for v in verts], threshold)
    masks = []
    for row in bad:
        m = 0
        for j in np.flatnonzero(row):
            m |= 1 << int(j)
        masks.append(m)
    return SimilarityIndex(verts, masks)


def similarity_graph(idx: SimilarityIndex, subset: Iterable[int]) -> dict[int, set[int]]:
    """Adjacency of the similarity graph restricted to ``subset``."""
    members = sorted(subset)
    s = idx.mask(members)
    out = {}
    for v in members:
        i = idx.pos[v]
        out[v] = set(idx.unmask(s & ~idx.dissimilar[i] & ~(1 << i)))
    return out
