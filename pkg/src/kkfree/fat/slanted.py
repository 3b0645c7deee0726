"""Reporting structure for slanted ranges: value <= a * key + b over a key
interval.

A balanced index tree over key-sorted entries; every internal node keeps the
min/max value of its slice, so whole subtrees are pruned (all entries above
the line's maximum over the node's key extent) or reported wholesale (all
entries below its minimum).  Entries live in one contiguous array, so a
wholesale report costs no extra node visits.  Storage is linear: one slot
per entry plus one light node per leaf-sized block.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from ..errors import InvalidInputError
from ..geometry import Curtain, Point, Rat

LEAF_SIZE = 8


@dataclass
class QueryStats:
    """Instrumentation for one query."""

    nodes_visited: int = 0
    entry_tests: int = 0
    reported: int = 0

    @property
    def work(self) -> int:
        return self.nodes_visited + self.entry_tests


class _Node:
    __slots__ = ("lo", "hi", "v_min", "v_max", "left", "right")

    def __init__(self, lo, hi, v_min, v_max, left=None, right=None):
        self.lo = lo
        self.hi = hi
        self.v_min = v_min
        self.v_max = v_max
        self.left = left
        self.right = right


class SlantedRangeTree:
    """Static structure over (key, value, payload) entries.

    ``query`` reports payloads with key in a closed interval (None ends are
    unbounded) and value <= a * key + b, exactly.
    """

    def __init__(self, entries: list[tuple[Rat, Rat, int]],
                 leaf_size: int = LEAF_SIZE):
        if leaf_size < 1:
            raise InvalidInputError("leaf size must be positive")
        entries = sorted(entries, key=lambda e: (e[0], e[1], e[2]))
        self.keys = [e[0] for e in entries]
        self.values = [e[1] for e in entries]
        self.payload = [e[2] for e in entries]
        self.leaf_size = leaf_size
        self.node_count = 0
        self.root = self._build(0, len(entries)) if entries else None

    def _build(self, lo: int, hi: int) -> _Node:
        self.node_count += 1
        if hi - lo <= self.leaf_size:
            vals = self.values[lo:hi]
            return _Node(lo, hi, min(vals), max(vals))
        mid = (lo + hi) // 2
        left = self._build(lo, mid)
        right = self._build(mid, hi)
        return _Node(lo, hi, min(left.v_min, right.v_min),
                     max(left.v_max, right.v_max), left, right)

    def __len__(self) -> int:
        return len(self.keys)

    def stored_entries(self) -> int:
        return len(self.keys) + self.node_count

    def query(self, key_lo: Rat | None, key_hi: Rat | None, a: Rat, b: Rat,
              stats: QueryStats | None = None) -> list[int]:
        """Payloads with key in [key_lo, key_hi] and value <= a * key + b."""
        if self.root is None:
            return []
        stats = stats if stats is not None else QueryStats()
        i0 = 0 if key_lo is None else bisect_left(self.keys, key_lo)
        i1 = len(self.keys) if key_hi is None else bisect_right(self.keys, key_hi)
        if i0 >= i1:
            return []
        out: list[int] = []
        self._collect(self.root, i0, i1, a, b, out, stats)
        stats.reported += len(out)
        return out

    def _collect(self, node: _Node, i0: int, i1: int, a, b, out, stats):
        stats.nodes_visited += 1
        if i0 <= node.lo and node.hi <= i1:
            self._report_below(node, a, b, out, stats, counted=True)
            return
        if node.left is None:
            for t in range(max(node.lo, i0), min(node.hi, i1)):
                stats.entry_tests += 1
                if self.values[t] <= a * self.keys[t] + b:
                    out.append(self.payload[t])
            return
        if i0 < node.left.hi:
            self._collect(node.left, i0, i1, a, b, out, stats)
        if i1 > node.right.lo:
            self._collect(node.right, i0, i1, a, b, out, stats)

    def _report_below(self, node: _Node, a, b, out, stats, counted=False):
        if not counted:
            stats.nodes_visited += 1
        u_min, u_max = self.keys[node.lo], self.keys[node.hi - 1]
        end_a = a * u_min + b
        end_b = a * u_max + b
        lo_val, hi_val = (end_a, end_b) if end_a <= end_b else (end_b, end_a)
        if node.v_min > hi_val:
            return
        if node.v_max <= lo_val:
            out.extend(self.payload[node.lo:node.hi])
            return
        if node.left is None:
            for t in range(node.lo, node.hi):
                stats.entry_tests += 1
                if self.values[t] <= a * self.keys[t] + b:
                    out.append(self.payload[t])
            return
        self._report_below(node.left, a, b, out, stats)
        self._report_below(node.right, a, b, out, stats)


# ---------------------------------------------------------------------------
# public curtain structure over plain 2D points

@dataclass
class CurtainStructure:
    """Point structure answering closed curtain queries exactly."""

    tree: SlantedRangeTree
    n: int

    def stored_entries(self) -> int:
        return self.tree.stored_entries()


def build_curtain_structure(points: list[Point],
                            leaf_size: int = LEAF_SIZE) -> CurtainStructure:
    entries = [(p[0], p[1], i) for i, p in enumerate(points)]
    return CurtainStructure(SlantedRangeTree(entries, leaf_size), len(points))


def curtain_query(structure: CurtainStructure, curtain: Curtain,
                  stats: QueryStats | None = None) -> list[int]:
    """Indices of the points inside the closed curtain, sorted."""
    hits = structure.tree.query(curtain.lo, curtain.hi, curtain.a, curtain.b,
                                stats)
    return sorted(hits)
