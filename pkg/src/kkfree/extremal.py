"""Lower-bound instance generators, the favorability verifier, and
closed-form bound evaluators for overlaying reference curves."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import InvalidInputError
from .geometry import Box, Line2, Point, pt
from .incidence import incidences_bruteforce
from .levels import iterated_log2
from .reductions import Reduction, pointline_to_5d


def elekes_grid(n_param: int) -> tuple[list[Point], list[Line2]]:
    """Grid construction with N^4 point-line incidences and no K_{2,2}.

    Points are {1..N} x {1..2N^2}; lines are y = a x + b for a in {1..N} and
    b in {1..N^2}.  Every line meets exactly N grid points (one per x) and
    two distinct lines share at most one point.
    """
    if n_param < 1:
        raise InvalidInputError("N must be >= 1")
    n = n_param
    points = [pt(x, y) for x in range(1, n + 1) for y in range(1, 2 * n * n + 1)]
    lines = [Line2(a, b) for a in range(1, n + 1) for b in range(1, n * n + 1)]
    return points, lines


def lower_bound_5d(n_param: int) -> Reduction:
    """Compose the grid construction with the 5D embedding."""
    points, lines = elekes_grid(n_param)
    return pointline_to_5d(points, lines)


# ---------------------------------------------------------------------------
# favorability

@dataclass(frozen=True)
class FavorabilityVerdict:
    """Outcome of the two-condition box-family check.

    Condition 1: every box holds at least ``threshold`` points.  Condition 2:
    any two boxes share at most one point.  Condition 2 is equivalent to
    K_{2,2}-freeness of the incidence graph; condition 1 forces at least
    m * threshold incidences.
    """

    favorable: bool
    failed_condition: int | None = None
    witness: tuple = ()
    incidence_floor: int | None = None


def verify_favorable(points: list[Point], boxes: list[Box],
                     threshold: int) -> FavorabilityVerdict:
    graph = incidences_bruteforce(points, boxes)
    for j in range(len(boxes)):
        if len(graph.points_in_range(j)) < threshold:
            return FavorabilityVerdict(False, 1, (j,))
    for j1 in range(len(boxes)):
        for j2 in range(j1 + 1, len(boxes)):
            shared = graph.points_in_range(j1) & graph.points_in_range(j2)
            if len(shared) > 1:
                return FavorabilityVerdict(
                    False, 2, (j1, j2, tuple(sorted(shared)[:2])))
    return FavorabilityVerdict(True, None, (),
                               incidence_floor=len(boxes) * threshold)


# ---------------------------------------------------------------------------
# bound formulas

FAMILIES = ("interval", "box", "halfspace", "ball", "union", "fat")


@dataclass(frozen=True)
class BoundFormula:
    """Closed-form reference bound with an explicit constant slot.

    ``family`` selects the expression; ``d`` the dimension where relevant;
    ``epsilon`` the slack exponent for box-type bounds; ``f0`` the
    union-complexity reference for the "union" family.
    """

    family: str
    d: int = 2
    epsilon: float = 0.5
    f0: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidInputError(f"unknown bound family: {self.family!r}")
        if self.family == "union" and self.f0 is None:
            raise InvalidInputError("union family needs a reference f0")


def _glog(x: float) -> float:
    """log2 with the small-argument guard: values below 2 count as 1."""
    return math.log2(x) if x >= 2 else 1.0


def _gloglog(x: float) -> float:
    """log2 log2 with the guard: values below 4 count as 1."""
    return math.log2(math.log2(x)) if x >= 4 else 1.0


def eval_bound(formula: BoundFormula, n: int, m: int, k: int,
               constant: float = 1.0) -> float:
    """Evaluate the chosen closed form at (n, m, k) times the constant.

    Returned as a float: several families involve fractional powers, so the
    value is generally irrational.  Guarded logarithms keep tiny parameters
    (n = 1, m < 4) well defined; the guards substitute 1.
    """
    if n < 1 or m < 0 or k < 1:
        raise InvalidInputError("need n >= 1, m >= 0, k >= 1")
    fam, d = formula.family, formula.d
    if fam == "interval":
        value = k * n + 3 * k * m
    elif fam == "box":
        ratio = _glog(n) / _gloglog(n)
        value = (k * n * ratio ** (d - 1)
                 + k * m * _glog(n) ** (d - 2 + formula.epsilon))
    elif fam == "halfspace":
        if d <= 3:
            value = k * (n + m)
        else:
            h = d // 2
            value = (k ** (2 / (h + 1)) * (m * n) ** (h / (h + 1))
                     + k * (n + m))
    elif fam == "ball":
        if d == 2:
            value = k * (n + m)
        else:
            h = (d + 1) // 2
            value = (k ** (2 / (h + 1)) * (m * n) ** (h / (h + 1))
                     + k * (n + m))
    elif fam == "union":
        logk = math.log2(k) if k >= 2 else 0.0
        value = k * n + k * formula.f0(float(m)) * (_gloglog(m) + logk)
    else:  # fat
        star = iterated_log2(float(m))
        llk = math.log2(math.log2(k)) if k >= 4 else 0.0
        value = k * n + k * m * star * (star + llk)
    return constant * value
