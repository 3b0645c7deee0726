"""Incidence graphs, the brute-force oracle, K_{k,k} detection, biclique
covers, and the 1D interval-bound audit."""

from __future__ import annotations

import itertools
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .dyadic import canonical_decomposition
from .errors import (InvalidInputError, NotApplicableError,
                     UnknownVerdictError)
from .geometry import Box, Point, Range, contains

DEFAULT_NODE_BUDGET = 200_000


@dataclass
class IncidenceGraph:
    """Bipartite edge set over point indices x range indices."""

    n: int
    m: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for i, j in self.edges:
            if not (0 <= i < self.n and 0 <= j < self.m):
                raise InvalidInputError(f"edge ({i},{j}) out of bounds")
        self._points_by_range: list[frozenset[int]] | None = None
        self._ranges_by_point: list[frozenset[int]] | None = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def points_in_range(self, j: int) -> frozenset[int]:
        if self._points_by_range is None:
            buckets: list[set[int]] = [set() for _ in range(self.m)]
            for i, jj in self.edges:
                buckets[jj].add(i)
            self._points_by_range = [frozenset(b) for b in buckets]
        return self._points_by_range[j]

    def ranges_of_point(self, i: int) -> frozenset[int]:
        if self._ranges_by_point is None:
            buckets: list[set[int]] = [set() for _ in range(self.n)]
            for ii, j in self.edges:
                buckets[ii].add(j)
            self._ranges_by_point = [frozenset(b) for b in buckets]
        return self._ranges_by_point[i]


def incidences_bruteforce(points: list[Point], ranges: list[Range]) -> IncidenceGraph:
    """The defining oracle: test every (point, range) pair exactly."""
    edges = set()
    for j, r in enumerate(ranges):
        for i, p in enumerate(points):
            if contains(r, p):
                edges.add((i, j))
    return IncidenceGraph(len(points), len(ranges), frozenset(edges))


# ---------------------------------------------------------------------------
# K_{k,k} detection

@dataclass(frozen=True)
class KkkResult:
    """Outcome of a biclique search.

    ``status`` is "found" (witness attached), "free" (proven absent), or
    "unknown" (search budget exhausted; never treated as absence).
    """

    status: str
    points: tuple[int, ...] = ()
    ranges: tuple[int, ...] = ()
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"

    @property
    def free(self) -> bool:
        return self.status == "free"


def find_kkk(graph: IncidenceGraph, k: int,
             node_budget: int = DEFAULT_NODE_BUDGET) -> KkkResult:
    """Search for k points all contained in k common ranges.

    k = 1 and k = 2 are decided directly; k >= 3 uses branch-and-bound over
    k-subsets of the smaller side with an explicit node budget.
    """
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    if graph.m < k or graph.n < k:
        return KkkResult("free")
    if k == 1:
        if graph.edges:
            i, j = min(graph.edges)
            return KkkResult("found", (i,), (j,))
        return KkkResult("free")

    point_sets = [graph.points_in_range(j) for j in range(graph.m)]
    if k == 2:
        # Exact: count shared points per range pair.
        rich = [j for j in range(graph.m) if len(point_sets[j]) >= 2]
        for a, b in itertools.combinations(rich, 2):
            common = point_sets[a] & point_sets[b]
            if len(common) >= 2:
                ps = tuple(sorted(common)[:2])
                return KkkResult("found", ps, (a, b))
        return KkkResult("free")

    return _find_kkk_bb(graph, point_sets, k, node_budget)


def _find_kkk_bb(graph: IncidenceGraph, point_sets, k: int,
                 node_budget: int) -> KkkResult:
    # Search over k-subsets of ranges, maintaining the running intersection
    # of their point sets; prune when it drops below k.
    candidates = sorted((j for j in range(graph.m) if len(point_sets[j]) >= k),
                        key=lambda j: len(point_sets[j]))
    if len(candidates) < k:
        return KkkResult("free")
    nodes = 0

    def search(start: int, chosen: list[int], inter: frozenset[int]):
        nonlocal nodes
        if len(chosen) == k:
            return tuple(sorted(inter)[:k]), tuple(chosen)
        for idx in range(start, len(candidates)):
            if len(candidates) - idx < k - len(chosen):
                break
            nodes += 1
            if nodes > node_budget:
                raise _BudgetExhausted
            j = candidates[idx]
            new = inter & point_sets[j] if chosen else point_sets[j]
            if len(new) >= k:
                hit = search(idx + 1, chosen + [j], new)
                if hit is not None:
                    return hit
        return None

    try:
        hit = search(0, [], frozenset())
    except _BudgetExhausted:
        return KkkResult("unknown", nodes=nodes)
    if hit is None:
        return KkkResult("free", nodes=nodes)
    return KkkResult("found", hit[0], hit[1], nodes=nodes)


class _BudgetExhausted(Exception):
    pass


# ---------------------------------------------------------------------------
# biclique covers

@dataclass(frozen=True)
class BicliqueCover:
    """Pairs (A_i, B_i) of point/range index sets whose products cover an edge set."""

    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]

    def __post_init__(self):
        for a, b in self.pairs:
            if not a or not b:
                raise InvalidInputError("empty side in a cover pair")

    def size(self) -> int:
        """Sum of |A_i| + |B_i| over all pairs."""
        return sum(len(a) + len(b) for a, b in self.pairs)

    def flatten(self) -> frozenset[tuple[int, int]]:
        edges = set()
        for a, b in self.pairs:
            for i in a:
                for j in b:
                    edges.add((i, j))
        return frozenset(edges)


def verify_cover(cover: BicliqueCover, graph: IncidenceGraph) -> bool:
    """True iff the union of products equals the edge set exactly."""
    for a, b in cover.pairs:
        if any(i >= graph.n for i in a) or any(j >= graph.m for j in b):
            raise InvalidInputError("cover index out of bounds")
    return cover.flatten() == graph.edges


@dataclass(frozen=True)
class CoverBound:
    """Either a certified upper bound on the incidence count, or an embedded
    complete pair of size >= k found inside the cover."""

    certified: bool
    bound: int | None = None
    witness_points: tuple[int, ...] = ()
    witness_ranges: tuple[int, ...] = ()


def cover_bound(cover: BicliqueCover, k: int) -> CoverBound:
    """Certify sum_i k(|A_i|+|B_i|) when every pair has min side < k.

    A pair with both sides >= k is itself an embedded K_{k,k} and is returned
    as a witness instead of a bound.
    """
    total = 0
    for a, b in cover.pairs:
        if min(len(a), len(b)) >= k:
            return CoverBound(False,
                              witness_points=tuple(sorted(a)[:k]),
                              witness_ranges=tuple(sorted(b)[:k]))
        total += k * (len(a) + len(b))
    return CoverBound(True, bound=total)


# ---------------------------------------------------------------------------
# rank-space box cover (range-tree style canonical subsets)

@dataclass(frozen=True)
class CoverLevelStats:
    """Per recursion depth: sums of class point and box counts."""

    depth: int
    point_total: int
    box_total: int
    classes: int


@dataclass(frozen=True)
class BoxCoverBuild:
    cover: BicliqueCover
    levels: tuple[CoverLevelStats, ...]


def build_box_cover(points: list[Point], boxes: list[Box]) -> BoxCoverBuild:
    """Recursive dyadic decomposition of a point/box incidence graph.

    Points are sorted by the leading axis; each box's contiguous rank range
    decomposes into canonical dyadic classes; classes recurse on the
    remaining axes.  At dimension one each class is a complete biclique and
    is emitted directly.
    """
    if not points:
        return BoxCoverBuild(BicliqueCover(()), ())
    d = points[0].dim
    for b in boxes:
        if not isinstance(b, Box):
            raise InvalidInputError("cover construction needs boxes")
        if b.dim != d:
            raise InvalidInputError("box dimension mismatch")
    pairs: list[tuple[frozenset[int], frozenset[int]]] = []
    level_acc: dict[int, list[int]] = {}

    def recurse(pt_idx: list[int], bx_idx: list[int], axis: int, depth: int):
        if not pt_idx or not bx_idx:
            return
        n = len(pt_idx)
        order = sorted(pt_idx, key=lambda i: (points[i][axis], i))
        xs = [points[i][axis] for i in order]
        classes: dict = {}
        for j in bx_idx:
            lo, hi = boxes[j].lows[axis], boxes[j].highs[axis]
            alpha = 0 if lo is None else bisect_left(xs, lo)
            beta = (n - 1) if hi is None else bisect_right(xs, hi) - 1
            if alpha > beta:
                continue
            for rng in canonical_decomposition(alpha, beta, n):
                classes.setdefault(rng, []).append(j)
        stats = level_acc.setdefault(depth, [0, 0, 0])
        for rng, class_boxes in sorted(classes.items()):
            class_points = order[rng.lo:min(rng.hi + 1, n)]
            if not class_points:
                continue  # dyadic range entirely in the padding
            stats[0] += len(class_points)
            stats[1] += len(class_boxes)
            stats[2] += 1
            if axis == d - 1:
                pairs.append((frozenset(class_points), frozenset(class_boxes)))
            else:
                recurse(class_points, class_boxes, axis + 1, depth + 1)

    recurse(list(range(len(points))), list(range(len(boxes))), 0, 0)
    levels = tuple(CoverLevelStats(depth, s[0], s[1], s[2])
                   for depth, s in sorted(level_acc.items()))
    return BoxCoverBuild(BicliqueCover(tuple(pairs)), levels)


# ---------------------------------------------------------------------------
# 1D interval audit

@dataclass(frozen=True)
class IntervalBlockRow:
    """Ledger row for one block of k consecutive points."""

    block: int
    size: int
    containing: int   # intervals covering the whole block hull
    boundary: int     # e_i: an endpoint in the hull, hull not fully covered
    incidences: int


@dataclass(frozen=True)
class IntervalAuditReport:
    n: int
    m: int
    k: int
    blocks: tuple[IntervalBlockRow, ...]
    incidences: int
    last_block_term: int   # |P_N| * m, reported separately (it is absorbed
                           # loosely by the closed-form bound)
    bound: int             # k*n + 3*k*m
    holds: bool


def interval_audit(points: list[Point], intervals: list[Box], k: int,
                   node_budget: int = DEFAULT_NODE_BUDGET) -> IntervalAuditReport:
    """Audit the 1D incidence bound I <= k*n + 3*k*m block by block.

    Points are split in sorted order into blocks of k; for each block the
    report counts intervals fully covering the block hull and intervals with
    an endpoint inside it.  Requires the graph to be K_{k,k}-free.
    """
    if any(p.dim != 1 for p in points) or any(b.dim != 1 for b in intervals):
        raise InvalidInputError("interval audit is one-dimensional")
    graph = incidences_bruteforce(points, intervals)
    verdict = find_kkk(graph, k, node_budget)
    if verdict.found:
        raise NotApplicableError("graph contains K_{k,k}",
                                 witness=(verdict.points, verdict.ranges))
    if verdict.status == "unknown":
        raise UnknownVerdictError("K_{k,k} search budget exhausted")

    n, m = len(points), len(intervals)
    order = sorted(range(n), key=lambda i: (points[i][0], i))
    rows = []
    total = 0
    last_term = 0
    nblocks = (n + k - 1) // k if n else 0
    for bi in range(nblocks):
        idxs = order[bi * k:(bi + 1) * k]
        lo = points[idxs[0]][0]
        hi = points[idxs[-1]][0]
        containing = boundary = inc = 0
        for j, box in enumerate(intervals):
            blo, bhi = box.lows[0], box.highs[0]
            block_inc = sum(1 for i in idxs if (i, j) in graph.edges)
            inc += block_inc
            if block_inc == 0:
                continue  # interval does not meet this block
            covers = ((blo is None or blo <= lo)
                      and (bhi is None or bhi >= hi))
            endpoint_in = ((blo is not None and lo <= blo <= hi)
                           or (bhi is not None and lo <= bhi <= hi))
            if covers:
                containing += 1
            elif endpoint_in:
                boundary += 1
        rows.append(IntervalBlockRow(bi, len(idxs), containing, boundary, inc))
        total += inc
        if bi == nblocks - 1:
            last_term = len(idxs) * m
    bound = k * n + 3 * k * m
    return IntervalAuditReport(n, m, k, tuple(rows), total, last_term,
                               bound, total <= bound)


# ---------------------------------------------------------------------------
# shatter traces

@dataclass(frozen=True)
class ShatterCount:
    traces: int
    heavy: int | None = None  # ranges containing more than k points


def shatter_trace_count(points: list[Point], ranges: list[Range],
                        k: int | None = None) -> ShatterCount:
    """Count distinct traces {P ∩ f : f in F}; with k, also the number of
    ranges containing more than k points."""
    traces = set()
    heavy = 0 if k is not None else None
    for r in ranges:
        trace = frozenset(i for i, p in enumerate(points) if contains(r, p))
        traces.add(trace)
        if k is not None and len(trace) > k:
            heavy += 1
    return ShatterCount(len(traces), heavy)
