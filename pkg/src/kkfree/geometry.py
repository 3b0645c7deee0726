"""Exact geometric primitives: ranges, containment, duality, lifting.

All coordinates are exact rationals (``int`` or ``fractions.Fraction``);
every predicate is decided exactly, with no floating point anywhere.
Ranges are closed: a point on the boundary is contained.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from typing import Union

from .errors import DimensionMismatchError, InvalidInputError, UnsupportedInputError

Rat = Union[int, Fraction]


def as_rat(value) -> Rat:
    """Coerce to an exact rational, keeping ints as ints."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, str):
        return as_rat(Fraction(value))
    raise InvalidInputError(f"not an exact rational: {value!r}")


def rat_str(value: Rat) -> str:
    """Serialize a rational as 'p' or 'p/q'."""
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class Point:
    """A point in R^d with exact rational coordinates."""

    coords: tuple[Rat, ...]

    def __post_init__(self):
        if len(self.coords) < 1:
            raise InvalidInputError("point needs at least one coordinate")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Rat:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)


def pt(*coords) -> Point:
    return Point(tuple(as_rat(c) for c in coords))


@dataclass(frozen=True)
class Hyperplane:
    """Non-vertical hyperplane in graph form: x_d = offset + sum_i slopes[i] * x_i.

    ``d = len(slopes) + 1``.  Vertical hyperplanes are unrepresentable by
    construction, which is what duality requires.
    """

    slopes: tuple[Rat, ...]
    offset: Rat

    @property
    def dim(self) -> int:
        return len(self.slopes) + 1

    def height_at(self, prefix: tuple[Rat, ...]) -> Rat:
        """Value of x_d on the hyperplane above the first d-1 coordinates."""
        if len(prefix) != len(self.slopes):
            raise DimensionMismatchError("hyperplane/prefix dimension mismatch")
        return self.offset + sum(a * x for a, x in zip(self.slopes, prefix))

    def side_of(self, p: Point) -> int:
        """+1 if p strictly above, 0 if on, -1 if strictly below."""
        if p.dim != self.dim:
            raise DimensionMismatchError("hyperplane/point dimension mismatch")
        diff = p[p.dim - 1] - self.height_at(p.coords[:-1])
        return (diff > 0) - (diff < 0)


@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace bounded by a non-vertical hyperplane.

    ``side`` is "upper" (points on or above the boundary) or "lower".
    """

    boundary: Hyperplane
    side: str  # "upper" | "lower"

    def __post_init__(self):
        if self.side not in ("upper", "lower"):
            raise InvalidInputError(f"bad halfspace side: {self.side!r}")

    @property
    def dim(self) -> int:
        return self.boundary.dim


@dataclass(frozen=True)
class LinearHalfspace:
    """Closed halfspace in general position: coeffs . x <= rhs (sense 'le') or >= ('ge').

    Needed where the bounding hyperplane may be vertical or is more natural in
    implicit form (degree-2 Veronese images, exponential orthant maps).
    """

    coeffs: tuple[Rat, ...]
    rhs: Rat
    sense: str = "le"

    def __post_init__(self):
        if self.sense not in ("le", "ge"):
            raise InvalidInputError(f"bad sense: {self.sense!r}")
        if not any(c != 0 for c in self.coeffs):
            raise InvalidInputError("zero normal vector")

    @property
    def dim(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class Ball:
    """Closed ball; the squared radius is stored exactly."""

    center: Point
    radius_sq: Rat

    def __post_init__(self):
        if self.radius_sq < 0:
            raise InvalidInputError("negative squared radius")

    @property
    def dim(self) -> int:
        return self.center.dim


@dataclass(frozen=True)
class Box:
    """Axis-parallel box; ``None`` bounds are unbounded sides.

    Covers intervals (d=1), orthants (one bounded side per axis) and 3-sided
    rectangles as special cases.
    """

    lows: tuple[Rat | None, ...]
    highs: tuple[Rat | None, ...]

    def __post_init__(self):
        if len(self.lows) != len(self.highs):
            raise InvalidInputError("lows/highs length mismatch")
        for lo, hi in zip(self.lows, self.highs):
            if lo is not None and hi is not None and lo > hi:
                raise InvalidInputError("box has lo > hi on some axis")

    @property
    def dim(self) -> int:
        return len(self.lows)

    def is_bounded(self) -> bool:
        return all(b is not None for b in self.lows + self.highs)


def interval(lo: Rat | None, hi: Rat | None) -> Box:
    """1-dimensional box."""
    return Box((None if lo is None else as_rat(lo),),
               (None if hi is None else as_rat(hi),))


def box2(xlo, xhi, ylo, yhi) -> Box:
    conv = lambda v: None if v is None else as_rat(v)
    return Box((conv(xlo), conv(ylo)), (conv(xhi), conv(yhi)))


@dataclass(frozen=True)
class Wedge2:
    """Planar wedge {(x, y) : y <= a x + b, x <= c}."""

    a: Rat
    b: Rat
    c: Rat

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class Wedge3:
    """Spatial wedge {(x, y, z) : y <= a x + b, z <= c}."""

    a: Rat
    b: Rat
    c: Rat

    @property
    def dim(self) -> int:
        return 3


@dataclass(frozen=True)
class Curtain:
    """Planar curtain {(x, y) : y <= a x + b, lo <= x <= hi}.

    Either end of the x-range may be ``None`` (unbounded); a wedge is the
    special case with one open end.
    """

    a: Rat
    b: Rat
    lo: Rat | None
    hi: Rat | None

    def __post_init__(self):
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise InvalidInputError("curtain has lo > hi")

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class Triangle:
    """Closed planar triangle given by its three vertices."""

    v0: Point
    v1: Point
    v2: Point

    def __post_init__(self):
        for v in (self.v0, self.v1, self.v2):
            if v.dim != 2:
                raise InvalidInputError("triangle vertices must be planar")

    @property
    def dim(self) -> int:
        return 2

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return (self.v0, self.v1, self.v2)

    def signed_area2(self) -> Rat:
        """Twice the signed area (positive for counter-clockwise vertices)."""
        return cross(sub(self.v1, self.v0), sub(self.v2, self.v0))


@dataclass(frozen=True)
class Line2:
    """Non-vertical planar line y = a x + b, as a (measure-zero) range.

    Incidence means lying exactly on the line.
    """

    a: Rat
    b: Rat

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class Polyhedron:
    """Intersection of slabs orthogonal to a fixed list of directions.

    Constraint i is ``lows[i] <= normals[i] . x <= highs[i]`` with ``None``
    meaning unbounded; generalizes a box, whose directions are the axes.
    """

    normals: tuple[tuple[Rat, ...], ...]
    lows: tuple[Rat | None, ...]
    highs: tuple[Rat | None, ...]

    def __post_init__(self):
        if not (len(self.normals) == len(self.lows) == len(self.highs)):
            raise InvalidInputError("polyhedron constraint arity mismatch")

    @property
    def dim(self) -> int:
        return len(self.normals[0]) if self.normals else 0


Range = Union[Box, Halfspace, LinearHalfspace, Ball, Wedge2, Wedge3, Curtain,
              Triangle, Line2, Polyhedron]


# ---------------------------------------------------------------------------
# vector helpers

def dot(u: tuple[Rat, ...], v: tuple[Rat, ...]) -> Rat:
    if len(u) != len(v):
        raise DimensionMismatchError("dot of different dimensions")
    return sum(a * b for a, b in zip(u, v))


def sub(p: Point, q: Point) -> tuple[Rat, ...]:
    return tuple(a - b for a, b in zip(p.coords, q.coords))


def cross(u: tuple[Rat, ...], v: tuple[Rat, ...]) -> Rat:
    """2D cross product u x v."""
    return u[0] * v[1] - u[1] * v[0]


def norm_sq(coords: tuple[Rat, ...]) -> Rat:
    return sum(c * c for c in coords)


def in_bounds(x: Rat, lo: Rat | None, hi: Rat | None) -> bool:
    """Closed-interval membership with None as +-infinity."""
    if lo is not None and x < lo:
        return False
    if hi is not None and x > hi:
        return False
    return True


# ---------------------------------------------------------------------------
# containment

def _check_dim(r, p: Point):
    if r.dim != p.dim:
        raise DimensionMismatchError(
            f"range dimension {r.dim} vs point dimension {p.dim}")


@singledispatch
def contains(r: Range, p: Point) -> bool:
    """True iff p lies in the closed range r (exact arithmetic)."""
    raise InvalidInputError(f"unsupported range type: {type(r).__name__}")


@contains.register
def _(r: Box, p: Point) -> bool:
    _check_dim(r, p)
    return all(in_bounds(x, lo, hi)
               for x, lo, hi in zip(p.coords, r.lows, r.highs))


@contains.register
def _(r: Halfspace, p: Point) -> bool:
    _check_dim(r, p)
    side = r.boundary.side_of(p)
    return side >= 0 if r.side == "upper" else side <= 0


@contains.register
def _(r: LinearHalfspace, p: Point) -> bool:
    _check_dim(r, p)
    value = dot(r.coeffs, p.coords)
    return value <= r.rhs if r.sense == "le" else value >= r.rhs


@contains.register
def _(r: Ball, p: Point) -> bool:
    _check_dim(r, p)
    return norm_sq(sub(p, r.center)) <= r.radius_sq


@contains.register
def _(r: Wedge2, p: Point) -> bool:
    _check_dim(r, p)
    return p[1] <= r.a * p[0] + r.b and p[0] <= r.c


@contains.register
def _(r: Wedge3, p: Point) -> bool:
    _check_dim(r, p)
    return p[1] <= r.a * p[0] + r.b and p[2] <= r.c


@contains.register
def _(r: Curtain, p: Point) -> bool:
    _check_dim(r, p)
    return p[1] <= r.a * p[0] + r.b and in_bounds(p[0], r.lo, r.hi)


@contains.register
def _(r: Triangle, p: Point) -> bool:
    _check_dim(r, p)
    s0 = _edge_side(r.v0, r.v1, p)
    s1 = _edge_side(r.v1, r.v2, p)
    s2 = _edge_side(r.v2, r.v0, p)
    if r.signed_area2() == 0:
        # Degenerate triangle: membership means lying on the segment hull.
        return _on_degenerate(r, p)
    return (s0 >= 0 and s1 >= 0 and s2 >= 0) or (s0 <= 0 and s1 <= 0 and s2 <= 0)


@contains.register
def _(r: Line2, p: Point) -> bool:
    _check_dim(r, p)
    return p[1] == r.a * p[0] + r.b


@contains.register
def _(r: Polyhedron, p: Point) -> bool:
    _check_dim(r, p)
    return all(in_bounds(dot(nrm, p.coords), lo, hi)
               for nrm, lo, hi in zip(r.normals, r.lows, r.highs))


def _edge_side(u: Point, v: Point, p: Point) -> int:
    val = cross(sub(v, u), sub(p, u))
    return (val > 0) - (val < 0)


def _on_degenerate(r: Triangle, p: Point) -> bool:
    for u, v in ((r.v0, r.v1), (r.v1, r.v2), (r.v2, r.v0)):
        if _edge_side(u, v, p) == 0:
            xs = sorted((u[0], v[0]))
            ys = sorted((u[1], v[1]))
            if xs[0] <= p[0] <= xs[1] and ys[0] <= p[1] <= ys[1]:
                return True
    return False


# ---------------------------------------------------------------------------
# duality and lifting

def dualize(obj: Point | Hyperplane) -> Hyperplane | Point:
    """Point/hyperplane duality.

    A point p maps to the hyperplane x_d = -p_d + sum_{i<d} p_i x_i; a
    hyperplane with slopes (a_1..a_{d-1}) and offset a_d maps to the point
    (a_1, ..., a_{d-1}, -a_d).  The map is an involution and reverses the
    above/below relation.
    """
    if isinstance(obj, Point):
        if obj.dim < 2:
            raise UnsupportedInputError("duality needs dimension >= 2")
        return Hyperplane(slopes=obj.coords[:-1], offset=-obj.coords[-1])
    if isinstance(obj, Hyperplane):
        return Point(obj.slopes + (-obj.offset,))
    raise UnsupportedInputError(f"cannot dualize {type(obj).__name__}")


def point_above(p: Point, h: Hyperplane) -> bool:
    """Strictly above the hyperplane in the last coordinate."""
    return h.side_of(p) > 0


def point_below(p: Point, h: Hyperplane) -> bool:
    return h.side_of(p) < 0


def lift(p: Point) -> Point:
    """Paraboloid lift: append the squared norm as a new coordinate."""
    return Point(p.coords + (norm_sq(p.coords),))


def lift_ball(b: Ball) -> Halfspace:
    """Image of a ball under the paraboloid lift.

    ||p - c||^2 <= r^2 becomes, for the lifted point, the lower halfspace
    x_{d+1} <= 2 c . x + (r^2 - ||c||^2).
    """
    slopes = tuple(2 * c for c in b.center.coords)
    offset = b.radius_sq - norm_sq(b.center.coords)
    return Halfspace(Hyperplane(slopes=slopes, offset=offset), side="lower")
