"""Range reporting for fat triangles: centroid quadtree recursion with
per-node slanted-range structures around the node square's center.

Exactness is unconditional: every query path either answers a whole subtree
through the apex decomposition (three apex triangles per query, handled per
sign cell in the transformed domain), reports or prunes by subtree bounding
box, or falls through to leaf tests.  The apex decomposition requires the
node's apex to lie inside the query; when it does not, the walk simply
descends, so no stabbing assumption is ever trusted for correctness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InvalidInputError
from ..geometry import Point, Triangle, cross
from ..reductions import apex_cell_constraints
from .quadtree import SHIFTS, centroid_square, diameter_sq_of
from .slanted import QueryStats, SlantedRangeTree

FAT_LEAF_SIZE = 48
CURTAIN_LEAF_SIZE = 8
DEFAULT_DELTA = math.pi / 6


@dataclass(frozen=True)
class FatTriangle(Triangle):
    """Triangle with a declared minimum-angle bound (radians)."""

    min_angle_bound: float = 0.0

    def __post_init__(self):
        super().__post_init__()
        if self.min_angle_bound < 0:
            raise InvalidInputError("negative fatness bound")


def min_angle(tri: Triangle) -> float:
    """Measured smallest angle, in radians (float measurement only)."""
    vs = [(float(v[0]), float(v[1])) for v in tri.vertices]
    best = math.pi
    for i in range(3):
        ox, oy = vs[i]
        ax, ay = vs[(i + 1) % 3][0] - ox, vs[(i + 1) % 3][1] - oy
        bx, by = vs[(i + 2) % 3][0] - ox, vs[(i + 2) % 3][1] - oy
        na, nb = math.hypot(ax, ay), math.hypot(bx, by)
        if na == 0 or nb == 0:
            return 0.0
        c = max(-1.0, min(1.0, (ax * bx + ay * by) / (na * nb)))
        best = min(best, math.acos(c))
    return best


# ---------------------------------------------------------------------------
# frame

@dataclass(frozen=True)
class FrameMap:
    """Affine map of instance coordinates into the core square [0, 1/4)^2.

    Built from the point bounding box expanded by ten percent, so the three
    diagonal third-shifts keep everything inside the unit square.
    """

    origin: tuple[Fraction, Fraction]
    scale: Fraction

    def to_frame(self, p: Point) -> tuple[Fraction, Fraction]:
        return ((Fraction(p[0]) - self.origin[0]) * self.scale,
                (Fraction(p[1]) - self.origin[1]) * self.scale)

    def header(self) -> dict:
        return {"origin": [str(self.origin[0]), str(self.origin[1])],
                "scale": str(self.scale)}


def make_frame(points: list[Point]) -> FrameMap:
    if not points:
        return FrameMap((Fraction(0), Fraction(0)), Fraction(1, 4))
    xs = [Fraction(p[0]) for p in points]
    ys = [Fraction(p[1]) for p in points]
    extent = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(0))
    if extent == 0:
        extent = Fraction(1)
    margin = extent / 20
    span = extent + 2 * margin
    return FrameMap((min(xs) - margin, min(ys) - margin),
                    Fraction(1, 4) / span)


# ---------------------------------------------------------------------------
# structure

class _FatNode:
    __slots__ = ("start", "end", "count", "bbox", "square", "apex",
                 "pos_tree", "neg_tree", "axis_pts", "inside", "outside")

    def __init__(self):
        self.inside = self.outside = None
        self.pos_tree = self.neg_tree = None
        self.axis_pts = ()
        self.square = None
        self.apex = None


@dataclass
class FatStratum:
    shift: Fraction
    root: _FatNode | None
    dfs_order: list[int]
    coords: list[tuple[Fraction, Fraction]]


@dataclass
class FatReportStructure:
    frame: FrameMap
    delta: float
    n: int
    leaf_size: int
    strata: list[FatStratum]
    degenerate: bool = False  # duplicate-heavy build; balance not guaranteed

    def stored_entries(self) -> int:
        """Total stored slots: tree nodes, per-node structure entries, DFS
        order arrays, and side buckets."""
        total = 0
        for stratum in self.strata:
            total += len(stratum.dfs_order)
            stack = [stratum.root] if stratum.root else []
            while stack:
                node = stack.pop()
                total += 1 + len(node.axis_pts)
                for tree in (node.pos_tree, node.neg_tree):
                    if tree is not None:
                        total += tree.stored_entries()
                for child in (node.inside, node.outside):
                    if child is not None:
                        stack.append(child)
        return total

    def max_depth(self) -> int:
        best = 0
        for stratum in self.strata:
            stack = [(stratum.root, 0)] if stratum.root else []
            while stack:
                node, d = stack.pop()
                best = max(best, d)
                for child in (node.inside, node.outside):
                    if child is not None:
                        stack.append((child, d + 1))
        return best


@dataclass
class FatQueryStats:
    nodes_visited: int = 0
    curtain_stats: QueryStats = field(default_factory=QueryStats)
    point_tests: int = 0
    reported: int = 0
    curtain_answers: int = 0
    stratum: int = 0
    out_of_frame: bool = False

    @property
    def work(self) -> int:
        """Honest per-query work: every node touched plus every individual
        entry or point test, across the fat tree and its slanted trees."""
        return (self.nodes_visited + self.point_tests
                + self.curtain_stats.nodes_visited
                + self.curtain_stats.entry_tests)


def build_fat_structure(points: list[Point], delta: float = DEFAULT_DELTA,
                        leaf_size: int = FAT_LEAF_SIZE,
                        curtain_leaf: int = CURTAIN_LEAF_SIZE) -> FatReportStructure:
    """Build the three shifted centroid trees over the points."""
    if not (0 < delta <= math.pi / 3):
        raise InvalidInputError("fatness bound must be in (0, pi/3]")
    for p in points:
        if p.dim != 2:
            raise InvalidInputError("fat structure needs planar points")
    frame = make_frame(points)
    base = [frame.to_frame(p) for p in points]
    structure = FatReportStructure(frame, delta, len(points), leaf_size, [])
    for shift in SHIFTS:
        coords = [(x + shift, y + shift) for x, y in base]
        stratum = FatStratum(shift, None, [], coords)
        if points:
            stratum.root = _build_node(stratum, list(range(len(points))),
                                       leaf_size, curtain_leaf, structure)
        structure.strata.append(stratum)
    return structure


def _build_node(stratum: FatStratum, idxs: list[int], leaf_size: int,
                curtain_leaf: int, structure: FatReportStructure) -> _FatNode:
    node = _FatNode()
    node.count = len(idxs)
    coords = stratum.coords
    node.bbox = (min(coords[i][0] for i in idxs),
                 min(coords[i][1] for i in idxs),
                 max(coords[i][0] for i in idxs),
                 max(coords[i][1] for i in idxs))
    node.start = len(stratum.dfs_order)
    distinct = len({coords[i] for i in idxs}) > 1
    if len(idxs) <= leaf_size or not distinct:
        stratum.dfs_order.extend(sorted(idxs))
        node.end = len(stratum.dfs_order)
        if not distinct and len(idxs) > leaf_size:
            structure.degenerate = True
        return node
    sq = centroid_square([coords[i] for i in idxs])
    inside_idx = [i for i in idxs if sq.contains_xy(*coords[i])]
    outside_idx = [i for i in idxs if not sq.contains_xy(*coords[i])]
    if not inside_idx or not outside_idx:
        # Degenerate split; keep the node a leaf to guarantee termination.
        structure.degenerate = True
        stratum.dfs_order.extend(sorted(idxs))
        node.end = len(stratum.dfs_order)
        return node
    node.square = sq
    gx, gy = sq.center
    node.apex = (gx, gy)
    pos_entries, neg_entries, axis_pts = [], [], []
    for i in idxs:
        x, y = coords[i]
        if x > gx:
            big_x = x - gx
            pos_entries.append(((y - gy) / big_x, Fraction(-1) / big_x, i))
        elif x < gx:
            big_x = gx - x
            neg_entries.append(((y - gy) / big_x, Fraction(-1) / big_x, i))
        else:
            axis_pts.append(i)
    node.pos_tree = SlantedRangeTree(pos_entries, curtain_leaf) if pos_entries else None
    node.neg_tree = SlantedRangeTree(neg_entries, curtain_leaf) if neg_entries else None
    node.axis_pts = tuple(axis_pts)
    node.inside = _build_node(stratum, inside_idx, leaf_size, curtain_leaf,
                              structure)
    node.outside = _build_node(stratum, outside_idx, leaf_size, curtain_leaf,
                               structure)
    node.end = len(stratum.dfs_order)
    return node


# ---------------------------------------------------------------------------
# queries

def fat_query(structure: FatReportStructure, tri: Triangle,
              min_angle_tolerance: float = 1e-9) -> tuple[list[int], FatQueryStats]:
    """Exactly the points inside the closed query triangle, with stats.

    The query must be at least as fat as the structure's configured bound
    (measured; rejected otherwise with the measured angle).
    """
    measured = min_angle(tri)
    if measured + min_angle_tolerance < structure.delta:
        raise InvalidInputError(
            f"query triangle thinner than configured fatness: "
            f"measured {measured:.4f} < {structure.delta:.4f}")
    stats = FatQueryStats()
    if structure.n == 0:
        return [], stats
    frame_verts = [structure.frame.to_frame(v) for v in tri.vertices]
    in_core = all(0 <= x < Fraction(1, 4) and 0 <= y < Fraction(1, 4)
                  for x, y in frame_verts)
    stratum_index = 0
    if in_core:
        diam_sq = diameter_sq_of(frame_verts)
        stratum_index = _aligned_stratum(frame_verts, diam_sq)
    else:
        stats.out_of_frame = True
    stats.stratum = stratum_index
    stratum = structure.strata[stratum_index]
    shift = stratum.shift
    verts = [(x + shift, y + shift) for x, y in frame_verts]
    out: set[int] = set()
    _query_node(stratum, stratum.root, verts, out, stats)
    stats.reported = len(out)
    return sorted(out), stats


def _aligned_stratum(frame_verts, diam_sq) -> int:
    from .quadtree import bbox_of, is_aligned
    bbox = bbox_of(frame_verts)
    for idx, shift in enumerate(SHIFTS):
        shifted = (bbox[0] + shift, bbox[1] + shift,
                   bbox[2] + shift, bbox[3] + shift)
        if is_aligned(shifted, diam_sq):
            return idx
    return 0


def _query_node(stratum: FatStratum, node: _FatNode, verts, out: set,
                stats: FatQueryStats):
    stats.nodes_visited += 1
    rel = _tri_bbox_relation(verts, node.bbox)
    if rel == "disjoint":
        return
    if rel == "covered":
        out.update(stratum.dfs_order[node.start:node.end])
        return
    if node.inside is None:  # leaf
        coords = stratum.coords
        for i in stratum.dfs_order[node.start:node.end]:
            stats.point_tests += 1
            if _tri_contains_xy(verts, coords[i]):
                out.add(i)
        return
    if _tri_contains_xy(verts, node.apex):
        stats.curtain_answers += 1
        _apex_answer(stratum, node, verts, out, stats)
        return
    _query_node(stratum, node.inside, verts, out, stats)
    _query_node(stratum, node.outside, verts, out, stats)


def _apex_answer(stratum: FatStratum, node: _FatNode, verts, out: set,
                 stats: FatQueryStats):
    gx, gy = node.apex
    coords = stratum.coords
    for a in range(3):
        va, vb = verts[a], verts[(a + 1) % 3]
        a_local = (va[0] - gx, va[1] - gy)
        b_local = (vb[0] - gx, vb[1] - gy)
        for sigma, tree in ((1, node.pos_tree), (-1, node.neg_tree)):
            if tree is None:
                continue
            res = apex_cell_constraints(a_local, b_local, sigma)
            if res in ("degenerate", "empty"):
                continue
            ulo, uhi, slope, intercept = res
            hits = tree.query(ulo, uhi, slope, intercept, stats.curtain_stats)
            out.update(hits)
    for i in node.axis_pts:
        stats.point_tests += 1
        if _tri_contains_xy(verts, coords[i]):
            out.add(i)


# ---------------------------------------------------------------------------
# exact triangle/box predicates on coordinate pairs

def _tri_contains_xy(verts, xy) -> bool:
    (x, y) = xy
    s = []
    for a in range(3):
        ux, uy = verts[a]
        vx, vy = verts[(a + 1) % 3]
        val = (vx - ux) * (y - uy) - (vy - uy) * (x - ux)
        s.append((val > 0) - (val < 0))
    return all(v >= 0 for v in s) or all(v <= 0 for v in s)


def _tri_bbox_relation(verts, bbox) -> str:
    """Exact SAT classification: "disjoint", "covered" (box inside the
    triangle), or "partial"."""
    xlo, ylo, xhi, yhi = bbox
    txlo = min(v[0] for v in verts)
    txhi = max(v[0] for v in verts)
    tylo = min(v[1] for v in verts)
    tyhi = max(v[1] for v in verts)
    if txhi < xlo or txlo > xhi or tyhi < ylo or tylo > yhi:
        return "disjoint"
    v0, v1, v2 = verts
    area2 = cross((v1[0] - v0[0], v1[1] - v0[1]),
                  (v2[0] - v0[0], v2[1] - v0[1]))
    if area2 < 0:
        v1, v2 = v2, v1
    elif area2 == 0:
        return "partial"  # degenerate query; leaf tests decide
    corners = ((xlo, ylo), (xhi, ylo), (xhi, yhi), (xlo, yhi))
    all_inside = True
    for a, b in ((v0, v1), (v1, v2), (v2, v0)):
        ex, ey = b[0] - a[0], b[1] - a[1]
        sides = [(ex * (cy - a[1]) - ey * (cx - a[0])) for cx, cy in corners]
        if all(s < 0 for s in sides):
            return "disjoint"
        if any(s < 0 for s in sides):
            all_inside = False
    return "covered" if all_inside else "partial"
