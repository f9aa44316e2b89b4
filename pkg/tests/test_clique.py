import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krcore.clique import CliqueBudgetExceeded, clique_based_enum, maximal_cliques
from krcore.enumeration import advanced_enum
from krcore.generate import random_instance


def _brute_cliques(adj):
    verts = sorted(adj)
    cliques = [set(c) for r in range(1, len(verts) + 1) for c in itertools.combinations(verts, r)
               if all(b in adj[a] for a, b in itertools.combinations(c, 2))]
    return {tuple(sorted(c)) for c in cliques if not any(c < d for d in cliques)}


def _random_adj(n, p, seed):
    rng = random.Random(seed)
    adj = {v: set() for v in range(n)}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def test_small_cases():
    assert maximal_cliques({0: {1}, 1: {0}, 2: set()}) == [(0, 1), (2,)]
    tri = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}, 3: {2}}
    tri[2].add(3)
    assert maximal_cliques(tri) == [(0, 1, 2), (2, 3)]


def test_budget():
    adj = {v: set() for v in range(5)}
    with pytest.raises(CliqueBudgetExceeded):
        maximal_cliques(adj, budget=3)


@given(st.integers(1, 11), st.floats(0.0, 1.0), st.integers(0, 10_000))
@settings(max_examples=80, deadline=None)
def test_matches_subset_enumeration(n, p, seed):
    adj = _random_adj(n, p, seed)
    assert set(maximal_cliques(adj)) == _brute_cliques(adj)


def test_baseline_examples(fix_k6d, fix_path3):
    g, t = fix_k6d
    assert clique_based_enum(g, 2, t).core_set() == {(0, 1, 2, 3, 4), (1, 2, 3, 4, 5)}
    assert clique_based_enum(fix_path3[0], 2, fix_path3[1]).cores == []


@given(st.integers(0, 10_000), st.sampled_from([0.0, 0.1, 0.3]), st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_baseline_matches_advanced(seed, p_dis, k):
    g, t = random_instance(13, 0.35, p_dis, seed)
    assert clique_based_enum(g, k, t).core_set() == advanced_enum(g, k, t).core_set()
