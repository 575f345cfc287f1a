"""Composite locate index: RLBWTs of both text directions, LZ boundary
marks, the distinct-factor interval map, the occurrence grid and the
source set.

locate() finds primary occurrences (those containing a factor start) by
splitting the pattern at every possible rightmost boundary: split k needs
P[k..m] to prefix a factor (grid x-range, via the interval map) and
P[1..k-1] to end at a boundary (grid y-range, via marks on the reverse
BWT rows of the boundary prefixes). Secondary occurrences are recovered by
propagating every found occurrence through the copy sources.

Factor strings need not be right-maximal here (a novel factor can be a
proper prefix of another factor with the very same BWT interval, e.g. in
0101#), so the interval map is built over the distinct factor *intervals*
and each interval group carries its sorted member lengths; a group range
is mapped to a string-rank range by skipping the members of the leading
group that are shorter than the queried suffix. Only the group whose
interval equals the query's can contain such members: strictly contained
groups hold extensions only.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

from repindex import lz77
from repindex.intervalmap import FactorIntervalMap, build_interval_map
from repindex.oracles import (
    build_suffix_array_bundle,
    bwt_from_suffix_array,
)
from repindex.rangerep import (
    Grid,
    GridPoint,
    SourceEntry,
    SourceSet,
)
from repindex.rlbwt import RunLengthBwt, build_rlbwt
from repindex.textio import Text, reverse_text


@dataclass
class LzRlbwtIndex:
    n: int
    sigma: int
    rlbwt_fwd: RunLengthBwt
    rlbwt_rev: RunLengthBwt
    last_marks: list[int]  # sorted reverse-BWT rows of boundary prefixes
    factor_map: FactorIntervalMap  # over distinct factor intervals
    group_string_prefix: list[int]  # strings in groups [1..g], prefix counts
    group_lengths: list[list[int]]  # sorted member lengths per group
    grid: Grid
    sources: SourceSet
    parse: lz77.LzFactorization
    symbol_map: dict[int, int] = field(default_factory=dict)

    # -- queries -----------------------------------------------------------

    def count(self, pattern) -> int:
        if len(pattern) == 0:
            raise ValueError("pattern must be nonempty")
        return self.rlbwt_fwd.count_pattern(pattern)

    def locate(self, pattern) -> tuple[list[int], list[int]]:
        """(primary, secondary) occurrence starts, each sorted.

        Primaries contain a factor start; secondaries lie strictly inside a
        factor and are generated through source propagation.
        """
        m = len(pattern)
        if m == 0:
            raise ValueError("pattern must be nonempty")

        # intervals of every pattern suffix in the forward BWT
        suffix_iv: list[tuple[int, int] | None] = [None] * (m + 1)
        iv = (1, self.n)
        for k in range(m, 0, -1):
            iv = self.rlbwt_fwd.backward_step(iv, pattern[k - 1])
            if iv[0] > iv[1]:
                return ([], [])  # some suffix of P is absent, so P is absent
            suffix_iv[k] = iv

        z = len(self.last_marks)
        primaries: set[int] = set()
        reported = 0
        riv = (1, self.n)  # interval of rev(P[1..k-1]) in the reverse BWT
        for k in range(1, m + 1):
            if k == 1:
                y_range = (1, z)
            else:
                riv = self.rlbwt_rev.backward_step(riv, pattern[k - 2])
                assert riv[0] <= riv[1], "prefix of an occurring pattern must occur"
                y_lo = bisect_right(self.last_marks, riv[0] - 1) + 1
                y_hi = bisect_right(self.last_marks, riv[1])
                if y_lo > y_hi:
                    continue
                y_range = (y_lo, y_hi)
            x_range = self._string_rank_range(suffix_iv[k], m - k + 1)
            if x_range is None:
                continue
            for boundary in self.grid.query(x_range, y_range):
                primaries.add(boundary - (k - 1))
                reported += 1
        assert reported == len(primaries), "a primary occurrence was reported twice"

        # breadth-first copy propagation
        secondaries: set[int] = set()
        queue = list(primaries)
        seen = set(primaries)
        while queue:
            s = queue.pop()
            for factor_start, offset in self.sources.query(s, s + m - 1):
                s2 = factor_start + offset
                if s2 not in seen:
                    seen.add(s2)
                    secondaries.add(s2)
                    queue.append(s2)
        return (sorted(primaries), sorted(secondaries))

    def locate_all(self, pattern) -> list[int]:
        p, s = self.locate(pattern)
        return sorted(p + s)

    def _string_rank_range(
        self, interval: tuple[int, int], wlen: int
    ) -> tuple[int, int] | None:
        """Map an interval-group range onto factor-string ranks, skipping
        leading group members shorter than wlen."""
        gx, gy = self.factor_map.query_prefix_range(interval)
        if gx > gy:
            return None
        lens = self.group_lengths[gx - 1]
        skip = bisect_left(lens, wlen)
        x_lo = self.group_string_prefix[gx - 1] + skip + 1
        x_hi = self.group_string_prefix[gy]
        if x_lo > x_hi:
            return None
        return (x_lo, x_hi)


def build_lz_index(t: Text) -> LzRlbwtIndex:
    bundle = build_suffix_array_bundle(t)
    rt = reverse_text(t)
    rbundle = build_suffix_array_bundle(rt)
    rlbwt_fwd = build_rlbwt(bwt_from_suffix_array(t, bundle), sigma=t.sigma)
    rlbwt_rev = build_rlbwt(bwt_from_suffix_array(rt, rbundle), sigma=t.sigma)

    parse = lz77.factorize(t, bundle)
    distinct = lz77.distinct_factors(parse, t, bundle)

    # interval groups in label order; members of a group differ in length only
    group_intervals: list[tuple[int, int]] = []
    group_lengths: list[list[int]] = []
    group_string_prefix = [0]
    rank_of_factor_index: dict[int, int] = {}
    for d in distinct:
        if not group_intervals or group_intervals[-1] != (d.sp, d.ep):
            group_intervals.append((d.sp, d.ep))
            group_lengths.append([])
            group_string_prefix.append(group_string_prefix[-1])
        group_lengths[-1].append(d.length)
        group_string_prefix[-1] += 1
        for fi in d.factor_indices:
            rank_of_factor_index[fi] = d.rank
    factor_map = build_interval_map(group_intervals, t.n)

    # boundary marks: the reversed prefix before factor j is the reverse-text
    # suffix at n - p_j + 1 (the empty prefix maps to the terminator row)
    n = t.n
    mark_rows = [rbundle.isa[n - f.start + 1] for f in parse.factors]
    last_marks = sorted(mark_rows)
    y_rank = {row: i + 1 for i, row in enumerate(last_marks)}

    points = [
        GridPoint(
            x=rank_of_factor_index[f.index],
            y=y_rank[mark_rows[f.index - 1]],
            payload=f.start,
        )
        for f in parse.factors
    ]
    grid = Grid(points)

    sources = SourceSet(
        [
            SourceEntry(
                src_start=f.source,
                src_end=f.source + f.length - 1,
                factor_start=f.start,
            )
            for f in parse.factors
            if not f.is_novel
        ]
    )
    return LzRlbwtIndex(
        n=t.n,
        sigma=t.sigma,
        rlbwt_fwd=rlbwt_fwd,
        rlbwt_rev=rlbwt_rev,
        last_marks=last_marks,
        factor_map=factor_map,
        group_string_prefix=group_string_prefix,
        group_lengths=group_lengths,
        grid=grid,
        sources=sources,
        parse=parse,
        symbol_map=dict(t.symbol_map),
    )


def classify_occurrences_brute(
    occurrences: list[int], boundaries: list[int], m: int
) -> tuple[list[int], list[int]]:
    """Operational primary/secondary split: primary iff the occurrence
    window [s..s+m-1] contains a factor start (reference for tests)."""
    primaries, secondaries = [], []
    for s in occurrences:
        lo = bisect_left(boundaries, s)
        if lo < len(boundaries) and boundaries[lo] <= s + m - 1:
            primaries.append(s)
        else:
            secondaries.append(s)
    return primaries, secondaries
