import random

import pytest


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def brute_edges(points, ranges):
    """Independent of IncidenceGraph: per-pair containment via raw predicates."""
    from kkfree.geometry import contains
    return frozenset((i, j) for j, r in enumerate(ranges)
                     for i, p in enumerate(points) if contains(r, p))
