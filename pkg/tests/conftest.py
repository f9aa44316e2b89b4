from __future__ import annotations

import pytest

from krcore.generate import complete_edges, from_pattern
from krcore.search import Component, SearchState
from krcore.similarity import build_similarity_index, is_similar

# (k,r)-core acceptance lines collected by tests/test_acceptance.py
REPORT: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)


def k5():
    return from_pattern(5, complete_edges(range(5)))


def path3():
    return from_pattern(3, [(0, 1), (1, 2)])


def k6d():
    return from_pattern(6, complete_edges(range(6)), [(0, 5)])


def c6():
    return from_pattern(6, [(i, (i + 1) % 6) for i in range(6)])


@pytest.fixture
def fix_k5():
    return k5()


@pytest.fixture
def fix_path3():
    return path3()


@pytest.fixture
def fix_k6d():
    return k6d()


@pytest.fixture
def fix_c6():
    return c6()


def whole_component(g, threshold, k) -> Component:
    """Component over every vertex, dissimilar edges removed but no k-core taken."""
    pruned = g.filter_edges(lambda u, v: is_similar(g, u, v, threshold))
    return Component(pruned, build_similarity_index(g, range(g.n), threshold), k)


def make_state(g, threshold, k, M=(), C=(), E=()) -> SearchState:
    comp = whole_component(g, threshold, k)
    return SearchState(comp, comp.to_mask(M), comp.to_mask(C), comp.to_mask(E))


@pytest.fixture
def state_of():
    return make_state
