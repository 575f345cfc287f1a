"""Locate engine pairing the run-length BWT (counting) with the CDAWG
(reporting).

The RLBWT backward search establishes whether the pattern occurs at all;
only then does the blind Patricia-style descent run: at each node the arc
is chosen by its branch symbol alone, accumulating the matched length i
(sum of right extensions) and the member offset j (1 plus the sum of left
extensions). A sink arc reports a single occurrence; once i reaches the
pattern length, every sink arc reachable from the current node yields one
occurrence. With our 1-based arc positions an occurrence seeded by a sink
arc at offset j starts at pos + j - 1 (pos is the occurrence of the source
representative extended by the branch symbol, whose member offset is 1).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from repindex.cdawg import Cdawg, build_cdawg
from repindex.oracles import OracleSuffixTree, build_suffix_array_bundle, bwt_from_suffix_array
from repindex.rlbwt import RunLengthBwt, build_rlbwt
from repindex.textio import Text


@dataclass
class CdawgRlbwtIndex:
    n: int
    sigma: int
    rlbwt_fwd: RunLengthBwt
    cdawg: Cdawg
    symbol_map: dict[int, int] = field(default_factory=dict)

    def count(self, pattern) -> int:
        if len(pattern) == 0:
            raise ValueError("pattern must be nonempty")
        return self.rlbwt_fwd.count_pattern(pattern)

    def locate(self, pattern, counters: dict | None = None) -> list[int]:
        """All occurrence starts of the pattern, sorted.

        ``counters`` (optional) collects instrumentation: blind descent
        steps and nodes+arcs visited while reporting.
        """
        m = len(pattern)
        if m == 0:
            raise ValueError("pattern must be nonempty")
        if self.rlbwt_fwd.count_pattern(pattern) == 0:
            return []
        cd = self.cdawg
        v = cd.source
        i = 0
        j = 1
        steps = 0
        while True:
            arc = cd.arc_from(v, pattern[i])
            assert arc is not None, "blind search cannot dead-end on an occurring pattern"
            steps += 1
            if arc.target == cd.sink:
                if counters is not None:
                    counters["blind_steps"] = counters.get("blind_steps", 0) + steps
                    counters["visited"] = counters.get("visited", 0) + 1
                return [arc.pos + j - 1]
            i += arc.right
            j += arc.left
            v = arc.target
            if i >= m:
                break
        seeds = cd.dfs_reachable_sink_arcs(v, i, j, counters)
        if counters is not None:
            counters["blind_steps"] = counters.get("blind_steps", 0) + steps
        return sorted(pos + joff - 1 for pos, joff in seeds)


def build_cdawg_index(t: Text, st: OracleSuffixTree | None = None) -> CdawgRlbwtIndex:
    if st is None:
        bundle = build_suffix_array_bundle(t)
        st = OracleSuffixTree(t, bundle)
    rlbwt_fwd = build_rlbwt(bwt_from_suffix_array(t, st.bundle), sigma=t.sigma)
    return CdawgRlbwtIndex(
        n=t.n,
        sigma=t.sigma,
        rlbwt_fwd=rlbwt_fwd,
        cdawg=build_cdawg(t, st),
        symbol_map=dict(t.symbol_map),
    )
