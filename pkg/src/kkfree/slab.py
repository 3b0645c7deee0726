"""Divide-and-conquer incidence audits for rectangles, boxes, and curtains.

Each audit is an exact counting algorithm: the sum of incidences attributed
across the recursion tree equals the brute-force count, independently of any
bound.  Alongside the count, each node records the quantities entering the
divide-and-conquer recurrence so the solved bound can be fitted numerically.

Slab boundaries sit at rank positions of the points sorted along the leading
axis (ties broken by index).  A range is classified through the contiguous
rank interval of the points its leading-axis extent covers; a range endpoint
"belongs" to the slab containing its rank position, which fixes the
boundary-vertex convention.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

from .errors import InvalidInputError
from .geometry import Box, Curtain, Point, in_bounds
from .incidence import incidences_bruteforce


@dataclass
class SlabNode:
    """One node of an audit recursion tree."""

    kind: str                # "split" | "leaf" | "projected"
    depth: int
    dim: int
    n: int
    m: int
    charged: int = 0         # ranges counted at this node (m0 / long)
    attributed: int = 0      # incidences attributed at this node
    inside_counts: tuple[int, ...] = ()
    threesided: int = 0
    crossing: int = 0
    vertices: int = 0        # weighted endpoint ledger for box audits
    child_vertices: int = 0
    children: list["SlabNode"] = field(default_factory=list)

    def subtree_total(self) -> int:
        return self.attributed + sum(c.subtree_total() for c in self.children)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass
class RecursionReport:
    """Audit output: the recursion tree plus global parameters."""

    kind: str
    b: int
    k: int
    total: int
    root: SlabNode

    def nodes(self):
        return self.root.walk()

    def level_ledger(self) -> list[dict]:
        """Per-depth sums of the recurrence terms k*n and b*k*m0."""
        acc: dict[int, dict] = {}
        for node in self.nodes():
            row = acc.setdefault(node.depth, {
                "depth": node.depth, "nodes": 0, "points": 0,
                "charged": 0, "attributed": 0})
            row["nodes"] += 1
            row["points"] += node.n
            row["charged"] += node.charged
            row["attributed"] += node.attributed
        out = []
        for depth in sorted(acc):
            row = acc[depth]
            row["reference"] = self.k * row["points"] + self.b * self.k * row["charged"]
            out.append(row)
        return out

    def fitted_constant(self) -> float:
        """Smallest single constant C with attributed <= C * reference per level."""
        best = 0.0
        for row in self.level_ledger():
            if row["attributed"]:
                ref = max(row["reference"], 1)
                best = max(best, row["attributed"] / ref)
        return best

    def to_json_dict(self) -> dict:
        def conv(node: SlabNode) -> dict:
            return {
                "kind": node.kind, "depth": node.depth, "dim": node.dim,
                "n": node.n, "m": node.m, "charged": node.charged,
                "attributed": node.attributed,
                "inside_counts": list(node.inside_counts),
                "threesided": node.threesided, "crossing": node.crossing,
                "vertices": node.vertices,
                "child_vertices": node.child_vertices,
                "children": [conv(c) for c in node.children],
            }
        return {"kind": self.kind, "b": self.b, "k": self.k,
                "total": self.total, "root": conv(self.root)}

    def ledger_rows(self) -> list[list]:
        rows = []
        for row in self.level_ledger():
            rows.append([row["depth"], row["nodes"], row["points"],
                         row["charged"], row["attributed"], row["reference"]])
        return rows

    LEDGER_HEADER = ["depth", "nodes", "points", "charged", "attributed",
                     "reference"]


# ---------------------------------------------------------------------------
# exact offline counting: points by x-rank prefix, y in a closed range

class _Fenwick:
    def __init__(self, size: int):
        self.tree = [0] * (size + 1)

    def add(self, i: int):
        i += 1
        while i < len(self.tree):
            self.tree[i] += 1
            i += i & -i

    def prefix(self, i: int) -> int:
        # count of inserted values with index <= i
        i += 1
        total = 0
        while i > 0:
            total += self.tree[i]
            i -= i & -i
        return total


def _count_rank_y(sorted_points: list[Point],
                  queries: list[tuple[int, int, object, object]]) -> list[int]:
    """For each (alpha, beta, ylo, yhi): count points with x-rank in
    [alpha, beta] and y in the closed range.  Offline sweep with a Fenwick
    tree over y-ranks; exact integer counting."""
    if not queries:
        return []
    ys = sorted({p[1] for p in sorted_points})
    rank = {y: i for i, y in enumerate(ys)}
    events: list[tuple[int, int, int, int, int]] = []
    for qi, (alpha, beta, ylo, yhi) in enumerate(queries):
        if alpha > beta:
            continue
        ylo_r = 0 if ylo is None else bisect_left(ys, ylo)
        yhi_r = (len(ys) - 1) if yhi is None else bisect_right(ys, yhi) - 1
        if ylo_r > yhi_r:
            continue
        events.append((beta, 1, ylo_r, yhi_r, qi))
        if alpha > 0:
            events.append((alpha - 1, -1, ylo_r, yhi_r, qi))
    events.sort(key=lambda e: e[0])
    out = [0] * len(queries)
    fen = _Fenwick(len(ys))
    ei = 0
    for t, p in enumerate(sorted_points):
        fen.add(rank[p[1]])
        while ei < len(events) and events[ei][0] == t:
            _, sign, ylo_r, yhi_r, qi = events[ei]
            val = fen.prefix(yhi_r) - (fen.prefix(ylo_r - 1) if ylo_r else 0)
            out[qi] += sign * val
            ei += 1
    # Events at t == -1 never occur (alpha > 0 guard); events beyond the last
    # point cannot exist since beta <= n-1.
    return out


def _slab_cuts(n: int, b: int) -> list[int]:
    return [(i * n) // b for i in range(b + 1)]


def _slab_of(cuts: list[int], rank: int) -> int:
    return bisect_right(cuts, rank) - 1


def _coverage(xs: list, lo, hi) -> tuple[int, int]:
    alpha = 0 if lo is None else bisect_left(xs, lo)
    beta = (len(xs) - 1) if hi is None else bisect_right(xs, hi) - 1
    return alpha, beta


# ---------------------------------------------------------------------------
# 2D rectangles

def rect_audit(points: list[Point], rects: list[Box], b: int,
               k: int) -> RecursionReport:
    """Slab recursion over 2D rectangles.

    Rectangles confined (rank-wise) to one slab recurse; the rest are
    3-sided or crossing within the slabs they meet and are counted exactly
    at the node by an offline sweep.
    """
    if b < 2:
        raise InvalidInputError("branching factor must be >= 2")
    for r in rects:
        if r.dim != 2:
            raise InvalidInputError("rect audit needs 2D boxes")
    order = sorted(range(len(points)), key=lambda i: (points[i][0], i))
    sorted_pts = [points[i] for i in order]
    root = _rect_node(sorted_pts, list(rects), b, 0)
    total = root.subtree_total()
    return RecursionReport("rect", b, k, total, root)


def _rect_node(pts: list[Point], rects: list[Box], b: int,
               depth: int) -> SlabNode:
    n = len(pts)
    if n <= b or not rects:
        attributed = 0
        graph = incidences_bruteforce(pts, rects) if rects and pts else None
        if graph:
            attributed = graph.edge_count
        return SlabNode("leaf", depth, 2, n, len(rects),
                        charged=len(rects), attributed=attributed)
    xs = [p[0] for p in pts]
    cuts = _slab_cuts(n, b)
    inside: list[list[Box]] = [[] for _ in range(b)]
    queries = []
    threesided = crossing = 0
    for r in rects:
        alpha, beta = _coverage(xs, r.lows[0], r.highs[0])
        if alpha > beta:
            continue
        sa, sb = _slab_of(cuts, alpha), _slab_of(cuts, beta)
        bounded_x = r.lows[0] is not None and r.highs[0] is not None
        if sa == sb and bounded_x:
            inside[sa].append(r)
        else:
            queries.append((alpha, beta, r.lows[1], r.highs[1]))
            if sb - sa >= 2:
                crossing += 1
            else:
                threesided += 1
    counts = _count_rank_y(pts, queries)
    node = SlabNode("split", depth, 2, n, len(rects),
                    charged=len(queries), attributed=sum(counts),
                    inside_counts=tuple(len(s) for s in inside),
                    threesided=threesided, crossing=crossing)
    for s in range(b):
        child_pts = pts[cuts[s]:cuts[s + 1]]
        node.children.append(_rect_node(child_pts, inside[s], b, depth + 1))
    return node


# ---------------------------------------------------------------------------
# d-dimensional boxes

def box_audit(points: list[Point], boxes: list[Box], b: int,
              k: int) -> RecursionReport:
    """Slab recursion over boxes in dimension >= 2.

    Boxes with a leading-axis endpoint inside a slab recurse there in full
    dimension; boxes cutting all the way across a slab drop one dimension
    (their leading constraint holds for every point of the slab) and are
    audited recursively, bottoming out at the 2D rectangle audit.
    """
    if b < 2:
        raise InvalidInputError("branching factor must be >= 2")
    if not points:
        return RecursionReport("box", b, k, 0,
                               SlabNode("leaf", 0, 0, 0, len(boxes)))
    d = points[0].dim
    if d < 2:
        raise InvalidInputError("box audit needs dimension >= 2")
    coords = [p.coords for p in points]
    bounds = [(bx.lows, bx.highs) for bx in boxes]
    root = _box_node(coords, bounds, b, 0)
    total = root.subtree_total()
    return RecursionReport("box", b, k, total, root)


def _as_points(coords: list[tuple]) -> list[Point]:
    return [Point(c) for c in coords]


def _box_node(coords: list[tuple], boxes: list[tuple], b: int,
              depth: int) -> SlabNode:
    d = len(coords[0]) if coords else 0
    n = len(coords)
    if d == 2:
        rects = [Box(lo, hi) for lo, hi in boxes]
        sub = rect_audit(_as_points(coords), rects, b, 1)
        node = sub.root
        node.kind = "rect-base" if node.kind == "split" else node.kind
        _shift_depth(node, depth)
        return node
    if n <= b or not boxes:
        attributed = _brute_boxes(coords, boxes)
        return SlabNode("leaf", depth, d, n, len(boxes),
                        charged=len(boxes), attributed=attributed)
    order = sorted(range(n), key=lambda i: (coords[i][0], i))
    coords = [coords[i] for i in order]
    xs = [c[0] for c in coords]
    cuts = _slab_cuts(n, b)
    inside: list[list[tuple]] = [[] for _ in range(b)]
    long_per_slab: list[list[tuple]] = [[] for _ in range(b)]
    vertices = 0
    assigned = 0  # endpoints handed to exactly one child slab each
    for lows, highs in boxes:
        alpha, beta = _coverage(xs, lows[0], highs[0])
        if alpha > beta:
            continue
        owners = set()
        if lows[0] is not None:
            owners.add(_slab_of(cuts, alpha))
            vertices += 1 << (d - 1)
            assigned += 1 << (d - 1)
        if highs[0] is not None:
            owners.add(_slab_of(cuts, beta))
            vertices += 1 << (d - 1)
            assigned += 1 << (d - 1)
        for s in owners:
            inside[s].append((lows, highs))
        proj = (lows[1:], highs[1:])
        for s in range(_slab_of(cuts, alpha), _slab_of(cuts, beta) + 1):
            if s in owners:
                continue
            # Slab s is covered in full: project out the leading axis.
            long_per_slab[s].append(proj)
    node = SlabNode("split", depth, d, n, len(boxes),
                    charged=sum(len(g) for g in long_per_slab),
                    inside_counts=tuple(len(s) for s in inside),
                    vertices=vertices, child_vertices=assigned)
    for s in range(b):
        child_coords = coords[cuts[s]:cuts[s + 1]]
        child = _box_node(child_coords, inside[s], b, depth + 1)
        node.children.append(child)
        if long_per_slab[s]:
            stripped = [c[1:] for c in child_coords]
            proj_node = _box_node(stripped, long_per_slab[s], b, depth + 1)
            proj_node.kind = "projected"
            node.children.append(proj_node)
    return node


def _brute_boxes(coords: list[tuple], boxes: list[tuple]) -> int:
    total = 0
    for lows, highs in boxes:
        for c in coords:
            if all(in_bounds(x, lo, hi) for x, lo, hi in zip(c, lows, highs)):
                total += 1
    return total


def _shift_depth(node: SlabNode, offset: int):
    node.depth += offset
    for c in node.children:
        _shift_depth(c, offset)


# ---------------------------------------------------------------------------
# curtains (binary slab recursion; crossing curtains act as wedges per side)

def curtain_audit(points: list[Point], curtains: list[Curtain],
                  k: int) -> RecursionReport:
    """Binary slab recursion for curtains; exact totals.

    A curtain crossing the median boundary is counted at the node (inside a
    slab it constrains like a wedge); curtains confined to one half recurse.
    """
    order = sorted(range(len(points)), key=lambda i: (points[i][0], i))
    sorted_pts = [points[i] for i in order]
    root = _curtain_node(sorted_pts, list(curtains), 0)
    total = root.subtree_total()
    return RecursionReport("curtain", 2, k, total, root)


def _curtain_node(pts: list[Point], curtains: list[Curtain],
                  depth: int) -> SlabNode:
    n = len(pts)
    if n <= 4 or not curtains:
        attributed = sum(1 for c in curtains for p in pts
                         if in_bounds(p[0], c.lo, c.hi)
                         and p[1] <= c.a * p[0] + c.b)
        return SlabNode("leaf", depth, 2, n, len(curtains),
                        charged=len(curtains), attributed=attributed)
    xs = [p[0] for p in pts]
    mid = n // 2
    left: list[Curtain] = []
    right: list[Curtain] = []
    attributed = 0
    charged = 0
    for c in curtains:
        alpha, beta = _coverage(xs, c.lo, c.hi)
        if alpha > beta:
            continue
        if beta < mid and c.lo is not None and c.hi is not None:
            left.append(c)
        elif alpha >= mid and c.lo is not None and c.hi is not None:
            right.append(c)
        else:
            charged += 1
            attributed += sum(1 for t in range(alpha, beta + 1)
                              if pts[t][1] <= c.a * pts[t][0] + c.b)
    node = SlabNode("split", depth, 2, n, len(curtains),
                    charged=charged, attributed=attributed,
                    inside_counts=(len(left), len(right)))
    node.children.append(_curtain_node(pts[:mid], left, depth + 1))
    node.children.append(_curtain_node(pts[mid:], right, depth + 1))
    return node
