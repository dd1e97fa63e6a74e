"""Shared fixtures: the running examples and the averaging-data brace corpus."""
from __future__ import annotations

import functools

import pytest

from ybe_forge import groups
from ybe_forge.averaging import GroupEndoMap, averaging_brace_data, diskew_from_left_avg, is_averaging_pair
from ybe_forge.digroup import GDigroup, from_group_action

# S3 indices: 0 id, 1 (23), 2 (12), 3 (123), 4 (132), 5 (13)
S3_F = (0, 2, 2, 0, 0, 2)  # onto <(12)>, kernel A3
# V4 indices: 0 1, 1 a, 2 b, 3 ab
KLEIN_F = (0, 0, 2, 2)  # f(a) = 1, f(b) = b
KLEIN_G = (0, 0, 3, 3)  # g(a) = 1, g(b) = ab


@functools.lru_cache(maxsize=None)
def brace_corpus(name: str):
    """Every (side, pair, h) on the group together with its brace, deduplicated by tables."""
    G = groups.by_name(name)
    data = averaging_brace_data(G)
    distinct = {}
    for d in data:
        B = d.brace()
        distinct.setdefault((B.digroup.vdash, B.digroup.dashv, B.circ), (d, B))
    return data, list(distinct.values())


@pytest.fixture(scope="session")
def S3():
    return groups.s3()


@pytest.fixture(scope="session")
def V4():
    return groups.klein()


@pytest.fixture(scope="session")
def s3_pair(S3):
    return is_averaging_pair(S3_F, S3_F, S3)


@pytest.fixture(scope="session")
def s3_brace(s3_pair):
    return diskew_from_left_avg(s3_pair, S3_F)


@pytest.fixture(scope="session")
def klein_pair(V4):
    return is_averaging_pair(KLEIN_F, KLEIN_G, V4)


@pytest.fixture(scope="session")
def v4_triple(V4):
    """(f, f, h) with f the retraction onto <b> and h onto <ab>."""
    p = is_averaging_pair(KLEIN_F, KLEIN_F, V4)
    return p, GroupEndoMap(V4, KLEIN_G), diskew_from_left_avg(p, KLEIN_G)


@pytest.fixture(scope="session")
def z4_action_digroup():
    """Z4 = <g> acting on {1, 2} with g acting as the swap."""
    swap = (1, 0)
    return from_group_action(groups.cyclic(4), 2, [(0, 1), swap, (0, 1), swap])


@pytest.fixture(scope="session")
def s3_points_digroup():
    import itertools

    from ybe_forge.tables import inverse

    perms = sorted(itertools.permutations(range(3)))
    return from_group_action(groups.s3(), 3, [inverse(p) for p in perms])


def group_digroup(name: str) -> GDigroup:
    return GDigroup.from_group(groups.by_name(name))
