from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kkfree.errors import (DimensionMismatchError, InvalidInputError,
                           UnsupportedInputError)
from kkfree.geometry import (Ball, Box, Curtain, Halfspace, Hyperplane, Line2,
                             LinearHalfspace, Point, Polyhedron, Triangle,
                             Wedge2, Wedge3, box2, contains, dualize,
                             interval, lift, lift_ball, point_above, pt)

rationals = st.fractions(min_value=-100, max_value=100,
                         max_denominator=64)


def test_box_boundary_is_inside():
    assert contains(box2(0, 1, 0, 1), pt(0, 1))


def test_ball_boundary():
    # 3^2 + 4^2 = 5^2: the origin is exactly on the sphere.
    assert contains(Ball(pt(3, 4), 25), pt(0, 0))
    assert not contains(Ball(pt(3, 4), 24), pt(0, 0))


def test_lower_halfspace_by_substitution():
    h = Halfspace(Hyperplane((1,), 3), "lower")  # x2 <= 3 + x1
    assert not contains(h, pt(1, 5))  # 5 > 4
    assert contains(h, pt(1, 4))      # boundary
    assert contains(h, pt(1, 3))


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionMismatchError):
        contains(box2(0, 1, 0, 1), pt(0, 0, 0))


def test_dualize_worked_example():
    h = Hyperplane((1,), 3)  # x2 = 3 + x1
    assert dualize(h) == Point((1, -3))


@given(st.lists(rationals, min_size=2, max_size=5))
def test_dualize_involution_points(coords):
    p = Point(tuple(coords))
    assert dualize(dualize(p)) == p


@given(st.lists(rationals, min_size=1, max_size=4), rationals)
def test_dualize_involution_hyperplanes(slopes, offset):
    h = Hyperplane(tuple(slopes), offset)
    assert dualize(dualize(h)) == h


@given(st.lists(rationals, min_size=2, max_size=4), st.data())
def test_order_reversal(coords, data):
    p = Point(tuple(coords))
    d = p.dim
    slopes = tuple(data.draw(rationals) for _ in range(d - 1))
    offset = data.draw(rationals)
    h = Hyperplane(slopes, offset)
    p_dual = dualize(p)
    h_dual = dualize(h)
    # p above h  <=>  the dual point of h lies above the dual hyperplane of p
    assert point_above(p, h) == point_above(h_dual, p_dual)


def test_lift_zero():
    assert lift(pt(0, 0)) == Point((0, 0, 0))


def test_lift_ball_worked_example():
    hs = lift_ball(Ball(pt(3, 4), 25))
    assert hs.side == "lower"
    assert hs.boundary == Hyperplane((6, 8), 0)
    assert contains(hs, lift(pt(0, 0)))  # equality case


@given(st.lists(rationals, min_size=2, max_size=3), st.data())
def test_lift_preserves_incidence(center, data):
    d = len(center)
    p = Point(tuple(data.draw(rationals) for _ in range(d)))
    radius_sq = abs(data.draw(rationals))
    ball = Ball(Point(tuple(center)), radius_sq)
    assert contains(ball, p) == contains(lift_ball(ball), lift(p))


def test_vertical_duality_unsupported():
    with pytest.raises(UnsupportedInputError):
        dualize(pt(5))  # 1D points have no graph-form dual


def test_wedges_and_curtains():
    w2 = Wedge2(1, 1, 1)
    assert contains(w2, pt(1, 2))       # both constraints tight
    assert not contains(w2, pt(2, 0))   # x > c
    w3 = Wedge3(2, 1, 4)
    assert contains(w3, pt(1, 2, 3))
    assert not contains(w3, pt(1, 4, 3))
    c = Curtain(1, 0, -1, 2)
    assert contains(c, pt(2, 2))
    assert not contains(c, pt(3, 0))    # outside the x-range
    assert contains(Curtain(0, 0, None, None), pt(-1000, -1))


def test_line_incidence_is_exact():
    line = Line2(F(1, 3), F(1, 7))
    on = pt(F(3), F(1) + F(1, 7))
    assert contains(line, on)
    assert not contains(line, pt(F(3), F(1) + F(1, 7) + F(1, 10 ** 12)))


def test_unbounded_box_orthant():
    orthant = Box((None, None, None), (1, 2, 3))
    assert contains(orthant, pt(1, 2, 3))
    assert contains(orthant, pt(-100, -100, -100))
    assert not contains(orthant, pt(2, 0, 0))


def test_degenerate_interval():
    with pytest.raises(InvalidInputError):
        interval(2, 1)


def _triangle_oracle(tri: Triangle, p: Point) -> bool:
    # Independent check: solve p = v0 + s*(v1-v0) + t*(v2-v0) exactly.
    ax, ay = tri.v1[0] - tri.v0[0], tri.v1[1] - tri.v0[1]
    bx, by = tri.v2[0] - tri.v0[0], tri.v2[1] - tri.v0[1]
    px, py = p[0] - tri.v0[0], p[1] - tri.v0[1]
    det = ax * by - ay * bx
    if det == 0:
        return False  # oracle handles nondegenerate triangles only
    s = F(px * by - py * bx) / det
    t = F(ax * py - ay * px) / det
    return s >= 0 and t >= 0 and s + t <= 1


@given(st.data())
@settings(max_examples=200)
def test_triangle_containment_vs_barycentric(data):
    coords = [data.draw(rationals) for _ in range(6)]
    tri = Triangle(Point((coords[0], coords[1])),
                   Point((coords[2], coords[3])),
                   Point((coords[4], coords[5])))
    if tri.signed_area2() == 0:
        return
    p = Point((data.draw(rationals), data.draw(rationals)))
    assert contains(tri, p) == _triangle_oracle(tri, p)


def test_polyhedron_strips():
    # Two strip directions: (1,0) and (1,1).
    poly = Polyhedron(((1, 0), (1, 1)), (0, 1), (2, 3))
    assert contains(poly, pt(1, 2))      # dot products (1, 3)
    assert not contains(poly, pt(1, 3))  # second dot product = 4 > 3


def test_linear_halfspace_senses():
    ge = LinearHalfspace((1, 1), 2, "ge")
    assert contains(ge, pt(1, 1))
    assert not contains(ge, pt(0, 0))
