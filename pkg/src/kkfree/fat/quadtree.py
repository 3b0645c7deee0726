"""Quadtree squares, shift alignment, centroid splitting, stabbing grids.

Quadtree squares are half-open dyadic cells of the unit square; all
membership tests are exact on rationals.  Diameters are carried squared so
comparisons against powers of two stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import IntegrityError, InvalidInputError
from ..geometry import Point, Rat

MAX_LEVEL = 64

SHIFTS = (Fraction(0), Fraction(1, 3), Fraction(2, 3))


@dataclass(frozen=True)
class QuadtreeSquare:
    """The half-open cell [i/2^l, (i+1)/2^l) x [j/2^l, (j+1)/2^l)."""

    level: int
    i: int
    j: int

    def __post_init__(self):
        if self.level < 0:
            raise InvalidInputError("negative level")
        if not (0 <= self.i < (1 << self.level)
                and 0 <= self.j < (1 << self.level)):
            raise InvalidInputError("square outside the unit square")

    @property
    def side(self) -> Fraction:
        return Fraction(1, 1 << self.level)

    @property
    def x0(self) -> Fraction:
        return Fraction(self.i, 1 << self.level)

    @property
    def y0(self) -> Fraction:
        return Fraction(self.j, 1 << self.level)

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        s = 1 << (self.level + 1)
        return (Fraction(2 * self.i + 1, s), Fraction(2 * self.j + 1, s))

    def contains_xy(self, x: Rat, y: Rat) -> bool:
        side = self.side
        return (self.x0 <= x < self.x0 + side
                and self.y0 <= y < self.y0 + side)

    def contains_point(self, p: Point) -> bool:
        return self.contains_xy(p[0], p[1])

    def children(self) -> tuple["QuadtreeSquare", ...]:
        lv, i, j = self.level + 1, 2 * self.i, 2 * self.j
        return (QuadtreeSquare(lv, i, j), QuadtreeSquare(lv, i + 1, j),
                QuadtreeSquare(lv, i, j + 1), QuadtreeSquare(lv, i + 1, j + 1))


def square_containing(x: Rat, y: Rat, level: int) -> QuadtreeSquare:
    scale = 1 << level
    return QuadtreeSquare(level, math.floor(Fraction(x) * scale),
                          math.floor(Fraction(y) * scale))


# ---------------------------------------------------------------------------
# alignment

BBox = tuple[Rat, Rat, Rat, Rat]  # xlo, ylo, xhi, yhi


def bbox_of(points_xy) -> BBox:
    xs = [p[0] for p in points_xy]
    ys = [p[1] for p in points_xy]
    return (min(xs), min(ys), max(xs), max(ys))


def diameter_sq_of(points_xy) -> Rat:
    pts = list(points_xy)
    best = 0
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            dx = pts[a][0] - pts[b][0]
            dy = pts[a][1] - pts[b][1]
            best = max(best, dx * dx + dy * dy)
    return best


def alignment_level(diam_sq: Rat) -> int:
    """Largest level whose cell side (a power of 1/2) is still >= 4 * diameter.

    Comparisons are squared: side^2 >= 16 * diam_sq.  A zero diameter is
    capped at MAX_LEVEL; when even the unit cell is smaller than four
    diameters, level 0 (the unit cell itself) is used.
    """
    if diam_sq < 0:
        raise InvalidInputError("negative squared diameter")
    if diam_sq == 0:
        return MAX_LEVEL
    level = 0
    # side(level+1)^2 = 1 / 4^(level+1)
    while level < MAX_LEVEL and 16 * Fraction(diam_sq) * (4 ** (level + 1)) <= 1:
        level += 1
    return level


def is_aligned(bbox: BBox, diam_sq: Rat) -> bool:
    """True iff some quadtree square of the alignment level contains the shape.

    The shape is described by its bounding box; only the cell containing the
    lower-left corner can work, so one exact check decides.
    """
    xlo, ylo, xhi, yhi = bbox
    if not (0 <= xlo and 0 <= ylo and xhi < 1 and yhi < 1):
        raise InvalidInputError("shape must lie inside the unit square")
    level = alignment_level(diam_sq)
    sq = square_containing(xlo, ylo, level)
    side = sq.side
    return xhi < sq.x0 + side and yhi < sq.y0 + side


def shift_align(bbox: BBox, diam_sq: Rat) -> Fraction:
    """A shift s in {0, 1/3, 2/3} making the diagonally shifted shape aligned.

    One always exists: modulo any cell side 2^-l, the three diagonal shifts
    reduce to offsets {0, 1/3, 2/3} of the side, and the misaligned window
    per axis is shorter than a third of the side, so it can reject at most
    one shift per axis.
    """
    for shift in SHIFTS:
        shifted = (bbox[0] + shift, bbox[1] + shift,
                   bbox[2] + shift, bbox[3] + shift)
        if is_aligned(shifted, diam_sq):
            return shift
    raise IntegrityError("no diagonal third-shift aligns the shape")


# ---------------------------------------------------------------------------
# centroid squares

def centroid_square(points_xy: list[tuple[Rat, Rat]],
                    max_level: int = MAX_LEVEL) -> QuadtreeSquare:
    """A minimal quadtree square holding at least a fifth of the points.

    Greedy descent: while some child holds >= n/5 points, move into the
    first such child (fixed scan order), so the result is deterministic and
    no strictly smaller square below it qualifies.  Since the four half-open
    children partition a cell, the returned square then holds fewer than
    4n/5 points, and the complement holds at most 4n/5.  Point multisets
    that never separate (coincident locations) stop at ``max_level``; the
    explicit rebalance loop below the descent only engages in that
    degenerate case.
    """
    sq, _inside = centroid_square_with_members(points_xy, max_level)
    return sq


def centroid_square_with_members(points_xy, max_level: int = MAX_LEVEL):
    n = len(points_xy)
    if n < 1:
        raise InvalidInputError("need at least one point")
    for x, y in points_xy:
        if not (0 <= x < 1 and 0 <= y < 1):
            raise InvalidInputError("points must lie in the unit square")
    need = Fraction(n, 5)
    sq = QuadtreeSquare(0, 0, 0)
    members = list(points_xy)
    while sq.level < max_level:
        nxt = _qualifying_child(sq, members, need)
        if nxt is None:
            break
        sq, members = nxt
    # Rebalance guard: with duplicate-heavy inputs the capped square may hold
    # more than 4n/5 points; descend toward the heaviest child then.
    while len(members) > Fraction(4 * n, 5) and sq.level < max_level:
        best = None
        for child in sq.children():
            inside = [p for p in members if child.contains_xy(p[0], p[1])]
            if best is None or len(inside) > len(best[1]):
                best = (child, inside)
        if not best or not best[1]:
            break
        sq, members = best
    return sq, members


def _qualifying_child(sq: QuadtreeSquare, members, need: Fraction):
    for child in sq.children():
        inside = [p for p in members if child.contains_xy(p[0], p[1])]
        if len(inside) >= need:
            return child, inside
    return None


# ---------------------------------------------------------------------------
# stabbing grids

def stabbing_points(square: QuadtreeSquare, delta: float) -> list[Point]:
    """A fixed grid stabbing every delta-fat triangle of diameter >= r/4
    that meets the square (side r).

    Any such triangle contains a disk of radius rho(delta) * r within r/4 of
    the square (worst case: a vertex of angle exactly delta touching the
    square), so a grid of spacing sqrt(2) * rho over the square dilated by
    r/4 always hits one.  The grid size grows like 1/delta^4; callers that
    cannot afford that must pair a sparser grid with a verification
    fallback.
    """
    if not (0 < delta <= math.pi / 3):
        raise InvalidInputError("fatness must be in (0, pi/3]")
    s2 = math.sin(delta / 2)
    rho = (math.sin(delta) / 4) * s2 / (1 + s2)
    spacing_f = 0.9 * math.sqrt(2) * rho
    # Rationalize the spacing (round down so the guarantee is kept).
    denom = 1 << 16
    spacing = Fraction(math.floor(spacing_f * denom), denom)
    if spacing <= 0:
        raise InvalidInputError("fatness too small for a rational grid")
    r = square.side
    h = spacing * r
    x_start = square.x0 - r / 4
    y_start = square.y0 - r / 4
    extent = r + r / 2
    steps = int(extent / h) + 1
    out = []
    for a in range(steps + 1):
        for b in range(steps + 1):
            out.append(Point((x_start + a * h, y_start + b * h)))
    cx, cy = square.center
    out.append(Point((cx, cy)))
    return out
