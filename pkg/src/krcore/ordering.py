"""Vertex and branch selection.

Each candidate branch is scored by simulating its refinement on a scratch
copy restricted to the two-hop neighbourhood of the candidate:

* ``delta1``: fraction of the dissimilar pairs in C that disappear;
* ``delta2``: fraction of the edges of M ∪ C that disappear.

Enumeration ranks vertices by the summed delta1 of both branches (smaller
summed delta2 breaks ties); the maximum search uses ``lam * delta1 - delta2``
per branch and explores the better branch first.
"""

from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass

from .search import Branch, SearchState, bits, sf_mask

DEFAULT_LAMBDA = 5.0


@dataclass(frozen=True)
class BranchScore:
    delta1: float
    delta2: float

    def weighted(self, lam: float) -> float:
        return lam * self.delta1 - self.delta2


@dataclass(frozen=True)
class OrderStrategy:
    """Which vertex to branch on next.

    ``kind`` is one of ``"d1d2"``, ``"lambda"``, ``"degree"`` or ``"random"``.
    """

    kind: str = "d1d2"
    lam: float = DEFAULT_LAMBDA
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("d1d2", "lambda", "degree", "random"):
            raise ValueError(f"unknown order strategy {self.kind!r}")
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")

    @classmethod
    def d1_then_d2(cls) -> OrderStrategy:
        return cls("d1d2")

    @classmethod
    def lambda_score(cls, lam: float = DEFAULT_LAMBDA) -> OrderStrategy:
        return cls("lambda", lam=lam)

    @classmethod
    def degree(cls) -> OrderStrategy:
        return cls("degree")

    @classmethod
    def random(cls, seed: int = 0) -> OrderStrategy:
        return cls("random", seed=seed)

    def chooser(self) -> Callable[[SearchState, int], tuple[int, Branch]]:
        """Callable ``(state, candidates) -> (vertex, preferred branch)``.

        A fresh chooser is needed per search so the random variant replays
        the same sequence for the same seed.
        """
        if self.kind == "d1d2":
            return lambda s, cand: (choose_vertex_enum(s, cand), Branch.EXPAND)
        if self.kind == "lambda":
            lam = self.lam
            return lambda s, cand: choose_vertex_max(s, lam, cand)
        if self.kind == "degree":
            return lambda s, cand: choose_vertex_checkmax(s, cand)
        rng = random.Random(self.seed)
        return lambda s, cand: (rng.choice(list(bits(cand))), Branch.EXPAND)


def _window(s: SearchState, u: int) -> int:
    """Vertices of M ∪ C within two structural hops of ``u``."""
    adj, mc = s.comp.adj, s.M | s.C
    ball = (1 << u) | (adj[u] & mc)
    for i in bits(adj[u] & mc):
        ball |= adj[i]
    return ball & mc


def simulate(s: SearchState, u: int, branch: Branch) -> tuple[int, int]:
    """Approximate (C', M' ∪ C') after taking ``branch`` on ``u``.

    Cascading structural removals are only followed inside the two-hop
    window of ``u`` and of the vertices removed directly by the move.
    """
    comp, k = s.comp, s.comp.k
    adj = comp.adj
    bit = 1 << u
    mc = s.M | s.C
    C = s.C & ~bit
    if branch is Branch.EXPAND:
        C &= ~comp.dis[u]
        alive = s.M | bit | C
    else:
        alive = s.M | C
    window = _window(s, u)
    for i in bits(mc & ~alive):
        window |= adj[i] & mc
    stack = [i for i in bits(window & alive) if (adj[i] & alive).bit_count() < k]
    while stack:
        i = stack.pop()
        b = 1 << i
        if not alive & b:
            continue
        alive ^= b
        for j in bits(adj[i] & alive & window):
            if (adj[j] & alive).bit_count() < k:
                stack.append(j)
    return C & alive, alive


def branch_scores(s: SearchState, u: int) -> tuple[BranchScore, BranchScore]:
    """(expand, shrink) scores of vertex ``u``; needs DP(C) > 0."""
    comp = s.comp
    dp = comp.dp_within(s.C)
    if dp == 0:
        raise ValueError("branch scores need at least one dissimilar pair in C")
    edges = comp.edges_within(s.M | s.C)
    out = []
    for branch in (Branch.EXPAND, Branch.SHRINK):
        c2, mc2 = simulate(s, u, branch)
        d1 = (dp - comp.dp_within(c2)) / dp
        d2 = (edges - comp.edges_within(mc2)) / edges if edges else 0.0
        out.append(BranchScore(d1, d2))
    return out[0], out[1]


def _candidates(s: SearchState, cand: int | None) -> int:
    if cand is None:
        cand = s.C & ~sf_mask(s)
    if not cand:
        raise ValueError("no candidate vertex to choose from")
    return cand


def enum_key(expand: BranchScore, shrink: BranchScore) -> tuple[float, float]:
    """Sort key for enumeration: smaller is better."""
    return (-(expand.delta1 + shrink.delta1), expand.delta2 + shrink.delta2)


def max_preference(expand: BranchScore, shrink: BranchScore, lam: float) -> tuple[float, Branch]:
    """Best weighted score of a vertex and the branch achieving it (expand on ties)."""
    se, ss = expand.weighted(lam), shrink.weighted(lam)
    return (se, Branch.EXPAND) if se >= ss else (ss, Branch.SHRINK)


def pick_enum(scored) -> int:
    """``scored`` yields ``(vertex, expand, shrink)`` in ascending vertex order."""
    best_key, best = None, -1
    for u, e, sh in scored:
        key = enum_key(e, sh)
        if best_key is None or key < best_key:
            best_key, best = key, u
    return best


def pick_max(scored, lam: float) -> tuple[int, Branch]:
    best_score, best = None, None
    for u, e, sh in scored:
        score, branch = max_preference(e, sh, lam)
        if best_score is None or score > best_score:
            best_score, best = score, (u, branch)
    return best


def choose_vertex_enum(s: SearchState, cand: int | None = None) -> int:
    """Largest summed delta1, then smallest summed delta2, then lowest id."""
    return pick_enum((u, *branch_scores(s, u)) for u in bits(_candidates(s, cand)))


def choose_vertex_max(s: SearchState, lam: float = DEFAULT_LAMBDA, cand: int | None = None) -> tuple[int, Branch]:
    return pick_max(((u, *branch_scores(s, u)) for u in bits(_candidates(s, cand))), lam)


def choose_vertex_checkmax(s: SearchState, cand: int | None = None) -> tuple[int, Branch]:
    """Highest degree in M ∪ C (lowest id on ties); always expand first."""
    if cand is None:
        cand = s.C
    if not cand:
        raise ValueError("no candidate vertex to choose from")
    adj, mc = s.comp.adj, s.M | s.C
    best = max(bits(cand), key=lambda i: ((adj[i] & mc).bit_count(), -i))
    return best, Branch.EXPAND
