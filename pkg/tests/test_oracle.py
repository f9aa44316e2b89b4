import itertools

import pytest

from krcore.enumeration import NaiveCapExceeded
from krcore.generate import complete_edges, from_pattern, random_instance
from krcore.oracle import all_kr_cores, brute_force_maximum, brute_force_mkrc, is_kr_core


def test_membership_checks(fix_k6d, fix_c6):
    g, t = fix_k6d
    assert is_kr_core(g, range(5), 2, t)
    assert not is_kr_core(g, range(6), 2, t)
    assert not is_kr_core(g, [], 2, t)
    gc, tc = fix_c6
    assert is_kr_core(gc, range(6), 2, tc)
    assert not is_kr_core(gc, [0, 1, 2], 2, tc)


def test_disconnected_sets_are_not_cores():
    g, t = from_pattern(6, complete_edges(range(3)) + complete_edges(range(3, 6)))
    assert not is_kr_core(g, range(6), 2, t)
    assert brute_force_mkrc(g, 2, t).core_set() == {(0, 1, 2), (3, 4, 5)}


def test_oracle_examples(fix_k6d, fix_path3):
    g, t = fix_k6d
    assert brute_force_mkrc(g, 2, t).core_set() == {(0, 1, 2, 3, 4), (1, 2, 3, 4, 5)}
    assert brute_force_maximum(g, 2, t).size == 5
    assert brute_force_maximum(fix_path3[0], 2, fix_path3[1]) is None


def test_cap():
    g, t = from_pattern(7, complete_edges(range(7)))
    with pytest.raises(NaiveCapExceeded):
        brute_force_mkrc(g, 2, t, cap=6)


@pytest.mark.parametrize("seed", range(5))
def test_all_cores_agree_with_membership_check(seed):
    g, t = random_instance(9, 0.45, 0.15, seed)
    listed = set(all_kr_cores(g, 2, t))
    direct = {frozenset(c) for r in range(1, 10) for c in itertools.combinations(range(9), r)
              if is_kr_core(g, c, 2, t)}
    assert listed == direct
    maximal = {frozenset(c.vertices) for c in brute_force_mkrc(g, 2, t).cores}
    assert maximal == {c for c in direct if not any(c < d for d in direct)}
