"""Numpy kernels: prefix-doubling suffix array and Kasai LCP."""
from __future__ import annotations

import numpy as np


def suffix_array(data) -> list[int]:
    """Sorted suffix order of an integer sequence, 0-based starts."""
    n = len(data)
    if n == 0:
        return []
    if n == 1:
        return [0]
    rank = np.asarray(data, dtype=np.int64)
    sa = None
    k = 1
    while True:
        # rank of the suffix k positions ahead; -1 past the end
        ahead = np.full(n, -1, dtype=np.int64)
        ahead[: n - k] = rank[k:]
        sa = np.lexsort((ahead, rank))
        new_rank = np.empty(n, dtype=np.int64)
        pair_changed = np.logical_or(
            np.diff(rank[sa]) != 0, np.diff(ahead[sa]) != 0
        )
        new_rank[sa[0]] = 0
        new_rank[sa[1:]] = np.cumsum(pair_changed)
        rank = new_rank
        if rank[sa[-1]] == n - 1:
            break
        k <<= 1
    return sa.tolist()


def lcp_array(data, sa) -> list[int]:
    """Kasai LCP: lcp[i] = lcp(suffix sa[i-1], suffix sa[i]); lcp[0] = 0."""
    n = len(sa)
    lcp = [0] * n
    if n == 0:
        return lcp
    rank = [0] * n
    for i, s in enumerate(sa):
        rank[s] = i
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and data[i + h] == data[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return lcp
