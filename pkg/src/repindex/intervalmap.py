"""Map a BWT interval to a rank range over a sorted family of node labels.

Stores a family of k distinct BWT intervals (labels are never materialized)
as prefix sums over their distinct start and end positions, plus the sorted
end positions sharing each start. Given the exact interval of a string W,
the query returns the contiguous range of ranks, in the lexicographically
sorted label list, of the labels that have W as a prefix.

Intervals of strings nest or are disjoint, so labels sort by (start
ascending, end descending); within one start the intervals form a nested
chain. Relative to a query interval [i..j], every stored interval is one
of: disjoint-before (start < i, end < i), a prefix of W (start <= i,
end >= j, strictly containing [i..j]), an extension of W (contained in
[i..j]), or disjoint-after (start > j). The rank range of the extensions is
then

    x = 1 + #(start < i) + #(start == i and end > j),    y = #(start <= j).

The second term of x is a binary search in the end chain of start i. The
simpler start/end count difference fails whenever a prefix of W shares the
query's right edge (its end falls inside [i..j] though it is no extension),
so the per-start chains are what the query relies on; ``paper_delta``
exposes the plain difference for diagnostics.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass

EMPTY = (1, 0)


class IntervalMapError(ValueError):
    pass


@dataclass
class FactorIntervalMap:
    k: int
    first_pos: list[int]  # distinct interval starts, ascending
    first_ps: list[int]  # prefix sums of start multiplicities
    last_pos: list[int]  # distinct interval ends, ascending
    last_ps: list[int]  # prefix sums of end multiplicities
    ends_by_start: dict[int, list[int]]  # start -> sorted ends of its chain

    def query_prefix_range(self, interval: tuple[int, int]) -> tuple[int, int]:
        """Rank range [x..y] of labels extending the string whose exact BWT
        interval is given; (1, 0) when empty."""
        i, j = interval
        if i > j:
            return EMPTY
        ip = bisect_left(self.first_pos, i)  # first start >= i (0-based slot)
        jp = bisect_right(self.first_pos, j) - 1  # last start <= j
        if jp < ip:
            return EMPTY
        y = self.first_ps[jp + 1]
        x = self.first_ps[ip] + 1
        if self.first_pos[ip] == i:
            chain = self.ends_by_start[i]
            x += len(chain) - bisect_right(chain, j)  # prefixes of W at start i
        if x > y:
            return EMPTY
        return (x, y)

    def paper_delta(self, interval: tuple[int, int]) -> int:
        """#interval starts minus #interval ends inside [i..j] (diagnostic)."""
        i, j = interval
        ip = bisect_left(self.first_pos, i)
        jp = bisect_right(self.first_pos, j) - 1
        starts_inside = self.first_ps[jp + 1] - self.first_ps[ip] if jp >= ip else 0
        iq = bisect_left(self.last_pos, i)
        jq = bisect_right(self.last_pos, j) - 1
        ends_inside = self.last_ps[jq + 1] - self.last_ps[iq] if jq >= iq else 0
        return starts_inside - ends_inside

    def prefixes_at_left_edge(self, interval: tuple[int, int]) -> int:
        """#stored intervals starting at i and stretching beyond j."""
        i, j = interval
        chain = self.ends_by_start.get(i)
        if not chain:
            return 0
        return len(chain) - bisect_right(chain, j)


def build_interval_map(intervals: list[tuple[int, int]], n: int) -> FactorIntervalMap:
    """Index a family of distinct intervals within [1..n]."""
    seen = set()
    for sp, ep in intervals:
        if not (1 <= sp <= ep <= n):
            raise IntervalMapError(f"interval [{sp}..{ep}] outside [1..{n}]")
        if (sp, ep) in seen:
            raise IntervalMapError(f"duplicate interval [{sp}..{ep}]")
        seen.add((sp, ep))

    ends_by_start: dict[int, list[int]] = {}
    end_mult: dict[int, int] = {}
    for sp, ep in intervals:
        ends_by_start.setdefault(sp, []).append(ep)
        end_mult[ep] = end_mult.get(ep, 0) + 1
    for chain in ends_by_start.values():
        chain.sort()
    first_pos = sorted(ends_by_start)
    last_pos = sorted(end_mult)
    first_ps = [0]
    for p in first_pos:
        first_ps.append(first_ps[-1] + len(ends_by_start[p]))
    last_ps = [0]
    for p in last_pos:
        last_ps.append(last_ps[-1] + end_mult[p])
    return FactorIntervalMap(
        k=len(intervals),
        first_pos=first_pos,
        first_ps=first_ps,
        last_pos=last_pos,
        last_ps=last_ps,
        ends_by_start=ends_by_start,
    )
