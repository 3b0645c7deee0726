import math
import random
from fractions import Fraction as F

import pytest

from kkfree import generators as gens
from kkfree.errors import InvalidInputError, NotApplicableError
from kkfree.geometry import Ball, Halfspace, Hyperplane, pt
from kkfree.incidence import find_kkk, incidences_bruteforce
from kkfree.levels import (census_schedule, depth, depth_census,
                           iterated_log2, level, level_partition,
                           shallow_census)


def test_level_worked():
    hs = [Hyperplane((0,), 0), Hyperplane((0,), 2)]
    assert level(pt(0, 1), hs) == 1


def test_level_below_all():
    hs = [Hyperplane((1,), 0), Hyperplane((-1,), 0)]
    assert level(pt(0, -5), hs) == 0


def test_level_counts_boundary():
    hs = [Hyperplane((0,), 1), Hyperplane((0,), 5)]
    assert level(pt(0, 1), hs) == 1  # on the first, below the second


def test_depth_basics():
    disks = [Ball(pt(0, 0), 4), Ball(pt(1, 0), 4), Ball(pt(10, 10), 1)]
    assert depth(pt(0, 0), disks) == 2
    assert depth(pt(0, 0), []) == 0


def test_depth_matches_sum(rng):
    shapes = gens.random_balls(rng, 20, 2, 50, 40)
    for p in gens.random_points(rng, 50, 2, 60):
        from kkfree.geometry import contains
        assert depth(p, shapes) == sum(contains(s, p) for s in shapes)


def test_level_partition_all_shallow():
    hs = [Hyperplane((0,), 100)] * 5
    prof = level_partition([pt(0, 0), pt(1, 1)], hs, 2)
    assert prof.classes[0] == (0, 1)


def test_level_partition_threshold_one():
    hs = [Hyperplane((0,), 0), Hyperplane((0,), 10)]
    # r = m: threshold m/r = 1, so class 0 means level 0 (below everything).
    prof = level_partition([pt(0, -1), pt(0, 5)], hs, 2)
    assert prof.classes[0] == (0,)
    assert prof.class_of(1) == 1


def test_level_partition_partitions(rng):
    pts = gens.random_points(rng, 60, 2, 100)
    hs = [h.boundary for h in gens.random_halfspaces(rng, 30, 2)]
    for r in (1, 2, 5, 30):
        prof = level_partition(pts, hs, r)
        seen = [i for cls in prof.classes for i in cls]
        assert sorted(seen) == list(range(60))
        for ci, cls in enumerate(prof.classes):
            for i in cls:
                assert prof.class_of(i) == ci


def test_shallow_census_all_zero():
    pts = [pt(0, -100), pt(1, -50)]
    halfspaces = [Halfspace(Hyperplane((0,), 0), "upper") for _ in range(8)]
    row = shallow_census(pts, halfspaces, 2, 2)
    assert row.observed == 0


def test_shallow_census_band_and_reference():
    # Summit point above all 8 boundaries: level 8, band [m/r, 2m/r) = [4, 8)
    # misses it; closed band [4, 8] catches it.
    halfspaces = [Halfspace(Hyperplane((s,), 0), "upper")
                  for s in (1, -1, 2, -2, 3, -3, 4, -4)]
    pts = [pt(0, 1), pt(50, -10 ** 6)]
    row = shallow_census(pts, halfspaces, 2, 2)
    assert row.observed == 0 and row.observed_closed == 1
    assert row.reference == 4.0  # k * r^(d//2) = 2 * 2


def test_shallow_census_requires_upper():
    pts = [pt(0, 0)]
    lower = [Halfspace(Hyperplane((0,), 0), "lower")] * 4
    with pytest.raises(InvalidInputError):
        shallow_census(pts, lower, 1, 2)


def test_shallow_census_rejects_kkk():
    pts = [pt(0, 10), pt(1, 10)]
    halfspaces = [Halfspace(Hyperplane((0,), 0), "upper")] * 8
    with pytest.raises(NotApplicableError):
        shallow_census(pts, halfspaces, 2, 2)


def test_depth_census_disjoint_shapes():
    shapes = [Ball(pt(10 * i, 0), 1) for i in range(8)]
    pts = [pt(10 * i, 0) for i in range(4)]
    row = depth_census(pts, shapes, 2, 2, lambda r: r)
    assert row.observed == 0  # band [4, 8): depths are all <= 1


def test_census_constructed_family():
    pts, halfplanes = gens.census_halfplane_instance(64)
    g = incidences_bruteforce(pts, halfplanes)
    assert find_kkk(g, 2).free
    bounds = [h.boundary for h in halfplanes]
    levels = [level(p, bounds) for p in pts]
    assert max(levels) >= 8  # the summit is genuinely deep
    for r in (2, 4, 8, 16):
        row = shallow_census(pts, halfplanes, 2, r,
                             precomputed_levels=levels,
                             skip_free_check=True)
        assert row.ratio is None or row.ratio <= 32


# ---------------------------------------------------------------------------
# schedules

def test_schedule_starts_at_2k():
    for k in (1, 2, 5, 64):
        for mode in ("general", "fat"):
            s = census_schedule(k, 4 * k, mode)
            assert s.thresholds[0] == 2 * k


def test_schedule_general_worked():
    s = census_schedule(2, 16, "general", c=4)
    assert s.thresholds[0] == 4
    assert s.thresholds[-1] >= 16
    assert len(s) <= 4


def test_schedule_fat_small_constant_plus_logstar():
    s = census_schedule(2, 2 ** 16, "fat")
    assert s.thresholds[-1] >= 2 ** 16
    assert len(s) <= 6 + iterated_log2(2 ** 16)


def test_schedule_rejects_small_m():
    with pytest.raises(InvalidInputError):
        census_schedule(4, 7)


def test_schedule_lengths_over_sweep():
    # Explicit inequalities with constants frozen from a reference sweep
    # (worst observed ratios ~2.13 general, ~1.5 fat).
    for k in (1, 2, 3, 4, 8, 16, 32, 64):
        for log_m in range(int(math.log2(2 * k)) + 1, 21):
            m = 2 ** log_m
            if m < 2 * k:
                continue
            g = census_schedule(k, m, "general")
            assert all(a < b for a, b in zip(g.thresholds, g.thresholds[1:]))
            assert g.thresholds[-1] >= m
            ref = max(1.0, math.log2(k)) + math.log2(max(2, math.log2(m)))
            assert len(g) <= 3 * ref + 2, (k, m, len(g))
            f = census_schedule(k, m, "fat")
            assert all(a < b for a, b in zip(f.thresholds, f.thresholds[1:]))
            assert f.thresholds[-1] >= m
            ref_f = max(1.0, math.log2(max(2.0, math.log2(k)))) \
                + iterated_log2(m)
            assert len(f) <= 2 * ref_f + 4, (k, m, len(f))


def test_iterated_log():
    assert iterated_log2(1) == 0
    assert iterated_log2(2) == 1
    assert iterated_log2(16) == 3
    assert iterated_log2(2 ** 16) == 4
