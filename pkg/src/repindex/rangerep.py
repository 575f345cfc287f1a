"""Geometric reporting for occurrence location.

Grid: four-sided rectangle reporting over (factor rank, reversed-prefix
rank) points carrying boundary positions; realized as a rank-space range
tree over y (merge-sort tree: each y-segment stores its points ordered by
x), answering a rectangle in O(log^2 z + output).

SourceSet: two-sided containment reporting over the copy-factor sources;
entries sorted by source start with a segment tree of maximal source ends,
so a query descends only subtrees that can still contain the occurrence.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class GridPoint:
    x: int
    y: int
    payload: int


class Grid:
    """Static point set with rectangle reporting; duplicate (x, y) rejected."""

    def __init__(self, points: list[GridPoint]):
        seen = set()
        for p in points:
            if (p.x, p.y) in seen:
                raise GridError(f"duplicate grid point ({p.x}, {p.y})")
            seen.add((p.x, p.y))
        self.points = sorted(points, key=lambda p: (p.y, p.x))
        self.size = len(self.points)
        # segment tree over y-sorted points; each node keeps x-sorted entries
        self._tree: list[list[tuple[int, int]]] = [[] for _ in range(4 * max(self.size, 1))]
        if self.size:
            self._build(1, 0, self.size - 1)

    def _build(self, node: int, lo: int, hi: int):
        self._tree[node] = sorted(
            (p.x, idx) for idx, p in enumerate(self.points[lo : hi + 1], start=lo)
        )
        if lo == hi:
            return
        mid = (lo + hi) // 2
        self._build(2 * node, lo, mid)
        self._build(2 * node + 1, mid + 1, hi)

    def query(self, x_range: tuple[int, int], y_range: tuple[int, int]) -> list[int]:
        """Payloads of all points with x in x_range and y in y_range."""
        x1, x2 = x_range
        y1, y2 = y_range
        if x1 > x2 or y1 > y2 or self.size == 0:
            return []
        ys = [p.y for p in self.points]
        lo = bisect_left(ys, y1)
        hi = bisect_right(ys, y2) - 1
        if lo > hi:
            return []
        out: list[int] = []
        self._query(1, 0, self.size - 1, lo, hi, x1, x2, out)
        return out

    def _query(self, node, lo, hi, qlo, qhi, x1, x2, out):
        if qhi < lo or hi < qlo:
            return
        if qlo <= lo and hi <= qhi:
            entries = self._tree[node]
            a = bisect_left(entries, (x1, -1))
            b = bisect_right(entries, (x2, self.size))
            for _, idx in entries[a:b]:
                out.append(self.points[idx].payload)
            return
        mid = (lo + hi) // 2
        self._query(2 * node, lo, mid, qlo, qhi, x1, x2, out)
        self._query(2 * node + 1, mid + 1, hi, qlo, qhi, x1, x2, out)


def build_grid(points: list[GridPoint]) -> Grid:
    return Grid(points)


@dataclass(frozen=True)
class SourceEntry:
    src_start: int
    src_end: int
    factor_start: int


class SourceSet:
    """Copy-factor sources supporting containment queries."""

    def __init__(self, entries: list[SourceEntry]):
        for e in entries:
            if not (e.src_start <= e.src_end and e.src_start < e.factor_start):
                raise GridError(f"bad source entry {e}")
        self.entries = sorted(entries, key=lambda e: e.src_start)
        self.size = len(self.entries)
        self._max_end = [0] * (4 * max(self.size, 1))
        if self.size:
            self._build(1, 0, self.size - 1)

    def _build(self, node, lo, hi):
        if lo == hi:
            self._max_end[node] = self.entries[lo].src_end
            return
        mid = (lo + hi) // 2
        self._build(2 * node, lo, mid)
        self._build(2 * node + 1, mid + 1, hi)
        self._max_end[node] = max(self._max_end[2 * node], self._max_end[2 * node + 1])

    def query(self, occ_start: int, occ_end: int) -> list[tuple[int, int]]:
        """(factor_start, offset) for every source containing [occ_start..occ_end]."""
        if self.size == 0:
            return []
        starts = [e.src_start for e in self.entries]
        hi = bisect_right(starts, occ_start) - 1
        if hi < 0:
            return []
        out: list[tuple[int, int]] = []
        self._query(1, 0, self.size - 1, 0, hi, occ_start, occ_end, out)
        return out

    def _query(self, node, lo, hi, qlo, qhi, occ_start, occ_end, out):
        if qhi < lo or hi < qlo or self._max_end[node] < occ_end:
            return
        if lo == hi:
            e = self.entries[lo]
            out.append((e.factor_start, occ_start - e.src_start))
            return
        mid = (lo + hi) // 2
        self._query(2 * node, lo, mid, qlo, qhi, occ_start, occ_end, out)
        self._query(2 * node + 1, mid + 1, hi, qlo, qhi, occ_start, occ_end, out)


def build_source_set(entries: list[SourceEntry]) -> SourceSet:
    return SourceSet(entries)
