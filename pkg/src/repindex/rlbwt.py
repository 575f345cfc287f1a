"""Run-length encoded BWT with rank, select, access, backward steps and
pattern counting.

Runs are the maximal constant blocks of the BWT. Per symbol we keep the
sorted run starts plus the cumulative occurrence count before each run,
which turns rank and select into binary searches over O(r) entries. The
``C`` array holds, per symbol c, the number of text symbols smaller than c.

rank is inclusive: rank(c, i) counts occurrences of c in BWT[1..i].
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field


class RlbwtError(ValueError):
    pass


@dataclass
class RunLengthBwt:
    runs: list[tuple[int, int, int]]  # (symbol, start, end), tiling [1..n]
    n: int
    sigma: int
    C: list[int]  # C[c] = count of symbols < c; len sigma + 2
    run_starts: list[int] = field(repr=False)  # global run starts, for char_at
    run_symbols: list[int] = field(repr=False)
    per_char_starts: list[list[int]] = field(repr=False)  # run starts per symbol
    per_char_before: list[list[int]] = field(repr=False)  # occ of c before run
    per_char_lens: list[list[int]] = field(repr=False)

    def rank(self, c: int, i: int) -> int:
        """Occurrences of c in BWT[1..i]; i = 0 gives 0."""
        if i <= 0:
            return 0
        if i > self.n:
            i = self.n
        starts = self.per_char_starts[c]
        k = bisect_right(starts, i) - 1
        if k < 0:
            return 0
        covered = min(i, starts[k] + self.per_char_lens[c][k] - 1)
        return self.per_char_before[c][k] + covered - starts[k] + 1

    def select(self, c: int, k: int) -> int:
        """Position of the k-th occurrence of c (1-based)."""
        total = self.C[c + 1] - self.C[c]
        if not 1 <= k <= total:
            raise RlbwtError(f"select out of range: symbol {c} occurs {total} times, asked {k}")
        before = self.per_char_before[c]
        # last run with before[run] < k
        lo, hi = 0, len(before) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if before[mid] < k:
                lo = mid
            else:
                hi = mid - 1
        return self.per_char_starts[c][lo] + (k - before[lo] - 1)

    def char_at(self, i: int) -> int:
        """Symbol of the run covering position i."""
        if not 1 <= i <= self.n:
            raise RlbwtError(f"position {i} outside [1..{self.n}]")
        k = bisect_right(self.run_starts, i) - 1
        return self.run_symbols[k]

    def backward_step(self, interval: tuple[int, int], c: int) -> tuple[int, int]:
        """[C[c]+rank(c,sp-1)+1 .. C[c]+rank(c,ep)]; empty means no occurrence."""
        sp, ep = interval
        if sp > ep:
            return (1, 0)
        if not 0 <= c <= self.sigma:
            return (1, 0)
        nsp = self.C[c] + self.rank(c, sp - 1) + 1
        nep = self.C[c] + self.rank(c, ep)
        if nsp > nep:
            return (1, 0)
        return (nsp, nep)

    def count_pattern(self, pattern) -> int:
        """Number of occurrences via backward search; empty pattern gives n."""
        iv = (1, self.n)
        for c in reversed(pattern):
            iv = self.backward_step(iv, c)
            if iv[0] > iv[1]:
                return 0
        return iv[1] - iv[0] + 1

    def pattern_interval(self, pattern) -> tuple[int, int]:
        """BWT interval of the pattern (empty interval if absent)."""
        iv = (1, self.n)
        for c in reversed(pattern):
            iv = self.backward_step(iv, c)
            if iv[0] > iv[1]:
                return (1, 0)
        return iv

    def lf(self, p: int) -> int:
        """LF mapping: row of the suffix one position earlier."""
        c = self.char_at(p)
        return self.C[c] + self.rank(c, p)

    def inverse_lf(self, p: int) -> int:
        """Row of the suffix one position later: select_c(p - C[c])."""
        c = self._f_column_symbol(p)
        return self.select(c, p - self.C[c])

    def _f_column_symbol(self, p: int) -> int:
        """The unique c with C[c] < p <= C[c+1]."""
        lo, hi = 0, self.sigma
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.C[mid] < p:
                lo = mid
            else:
                hi = mid - 1
        return lo

    @property
    def run_count(self) -> int:
        return len(self.runs)


def build_rlbwt(bwt: list[int], sigma: int | None = None) -> RunLengthBwt:
    """Encode a padded 1-based BWT (bwt[0] unused) into its run structure."""
    n = len(bwt) - 1
    if n < 1:
        raise RlbwtError("empty BWT")
    if sigma is None:
        sigma = max(bwt[1:])
    runs: list[tuple[int, int, int]] = []
    start = 1
    for i in range(2, n + 1):
        if bwt[i] != bwt[start]:
            runs.append((bwt[start], start, i - 1))
            start = i
    runs.append((bwt[start], start, n))

    counts = [0] * (sigma + 1)
    per_starts: list[list[int]] = [[] for _ in range(sigma + 1)]
    per_before: list[list[int]] = [[] for _ in range(sigma + 1)]
    per_lens: list[list[int]] = [[] for _ in range(sigma + 1)]
    run_starts = []
    run_symbols = []
    for c, i, j in runs:
        if not 0 <= c <= sigma:
            raise RlbwtError(f"symbol {c} outside [0..{sigma}]")
        run_starts.append(i)
        run_symbols.append(c)
        per_starts[c].append(i)
        per_before[c].append(counts[c])
        per_lens[c].append(j - i + 1)
        counts[c] += j - i + 1
    C = [0] * (sigma + 2)
    for c in range(sigma + 1):
        C[c + 1] = C[c] + counts[c]
    return RunLengthBwt(
        runs=runs,
        n=n,
        sigma=sigma,
        C=C,
        run_starts=run_starts,
        run_symbols=run_symbols,
        per_char_starts=per_starts,
        per_char_before=per_before,
        per_char_lens=per_lens,
    )
