"""Self-referential greedy LZ77 factorization.

A symbol with no earlier occurrence opens a length-1 novel factor; any
other factor is the longest prefix of the remaining text that occurs at
some source j < p (the source may overlap the factor being produced).
Longest previous matches come from the suffix array: for each position the
best earlier-position suffix is the nearest one above or below in suffix
order, found with previous/next-smaller-value scans plus LCP range minima.
"""
from __future__ import annotations

from dataclasses import dataclass

from repindex.oracles import SuffixArrayBundle, build_suffix_array_bundle
from repindex.textio import Text


@dataclass(frozen=True)
class Factor:
    index: int  # 1-based factor number
    start: int  # 1-based text position
    length: int
    source: int | None  # copy source start, None for novel factors
    symbol: int | None  # the novel symbol, None for copy factors

    @property
    def is_novel(self) -> bool:
        return self.source is None


@dataclass
class LzFactorization:
    factors: list[Factor]
    z: int
    boundaries: list[int]  # sorted factor start positions

    def decompress(self, n: int) -> list[int]:
        """Replay the parse byte-by-byte (honoring overlap); padded 1-based."""
        out = [0] * (n + 1)
        for f in self.factors:
            if f.is_novel:
                out[f.start] = f.symbol
            else:
                for k in range(f.length):
                    out[f.start + k] = out[f.source + k]
        return out


def _smaller_value_neighbors(sa: list[int], n: int) -> tuple[list[int], list[int]]:
    """For each row, the nearest row above/below whose suffix starts earlier.

    Returns (psv, nsv), 0 meaning absent; rows are 1-based.
    """
    psv = [0] * (n + 1)
    nsv = [0] * (n + 1)
    stack: list[int] = []
    for row in range(1, n + 1):
        while stack and sa[stack[-1]] > sa[row]:
            stack.pop()
        psv[row] = stack[-1] if stack else 0
        stack.append(row)
    stack.clear()
    for row in range(n, 0, -1):
        while stack and sa[stack[-1]] > sa[row]:
            stack.pop()
        nsv[row] = stack[-1] if stack else 0
        stack.append(row)
    return psv, nsv


def factorize(t: Text, bundle: SuffixArrayBundle | None = None) -> LzFactorization:
    """Greedy parse of the whole text, terminator included."""
    if bundle is None:
        bundle = build_suffix_array_bundle(t)
    n = t.n
    sa, isa = bundle.sa, bundle.isa
    psv, nsv = _smaller_value_neighbors(sa, n)

    factors: list[Factor] = []
    p = 1
    while p <= n:
        row = isa[p]
        best_len = 0
        best_src = 0
        above = psv[row]
        if above:
            ln = bundle.lcp_min(above + 1, row)
            if ln > best_len:
                best_len, best_src = ln, sa[above]
        below = nsv[row]
        if below:
            ln = bundle.lcp_min(row + 1, below)
            if ln > best_len:
                best_len, best_src = ln, sa[below]
        idx = len(factors) + 1
        if best_len == 0:
            factors.append(Factor(index=idx, start=p, length=1, source=None, symbol=t.data[p]))
            p += 1
        else:
            factors.append(Factor(index=idx, start=p, length=best_len, source=best_src, symbol=None))
            p += best_len
    return LzFactorization(
        factors=factors, z=len(factors), boundaries=[f.start for f in factors]
    )


@dataclass(frozen=True)
class DistinctFactor:
    """One distinct factor string, identified by its BWT interval and length."""

    sp: int
    ep: int
    length: int
    rank: int  # 1-based lexicographic rank among distinct factor strings
    factor_indices: tuple[int, ...]  # parse factors realizing this string
    a_start: int  # one text occurrence, for materializing the string

    def materialize(self, t: Text) -> tuple[int, ...]:
        return t.slice(self.a_start, self.a_start + self.length - 1)


def distinct_factors(
    f: LzFactorization, t: Text, bundle: SuffixArrayBundle | None = None
) -> list[DistinctFactor]:
    """Distinct factor strings in lexicographic order.

    Two factors are the same string iff they share (interval, length); lex
    order over substrings is (sp ascending, ep descending, length ascending),
    since interval containment mirrors the prefix relation.
    """
    if bundle is None:
        bundle = build_suffix_array_bundle(t)
    groups: dict[tuple[int, int, int], list[Factor]] = {}
    for fac in f.factors:
        sp, ep = bundle.interval_of(fac.start, fac.length)
        groups.setdefault((sp, ep, fac.length), []).append(fac)
    ordered = sorted(groups.items(), key=lambda kv: (kv[0][0], -kv[0][1], kv[0][2]))
    out = []
    for rank, ((sp, ep, length), members) in enumerate(ordered, start=1):
        out.append(
            DistinctFactor(
                sp=sp,
                ep=ep,
                length=length,
                rank=rank,
                factor_indices=tuple(m.index for m in members),
                a_start=members[0].start,
            )
        )
    return out
