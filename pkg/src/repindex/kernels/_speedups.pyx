# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: prefix-doubling suffix array (counting sort) and Kasai LCP."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset


def suffix_array(data):
    """Sorted suffix order of a sequence of non-negative ints, 0-based starts."""
    cdef int n = len(data)
    if n == 0:
        return []
    cdef int *s = <int *> malloc(n * sizeof(int))
    cdef int *sa = <int *> malloc(n * sizeof(int))
    cdef int *rank = <int *> malloc(n * sizeof(int))
    cdef int *tmp = <int *> malloc(n * sizeof(int))
    cdef int *tmp2 = <int *> malloc(n * sizeof(int))
    if not (s and sa and rank and tmp and tmp2):
        raise MemoryError()
    cdef int i, k, r, idx, key, maxval, cnt_size
    cdef int a_prev, b_prev, a_cur, b_cur
    try:
        maxval = 0
        for i in range(n):
            s[i] = data[i]
            if s[i] < 0:
                raise ValueError("symbols must be non-negative")
            if s[i] > maxval:
                maxval = s[i]
        cnt_size = maxval + 2 if maxval + 2 > n + 2 else n + 2
        cnt = <int *> malloc(cnt_size * sizeof(int))
        if not cnt:
            raise MemoryError()
        try:
            # initial counting sort by symbol
            memset(cnt, 0, cnt_size * sizeof(int))
            for i in range(n):
                cnt[s[i]] += 1
            for i in range(1, maxval + 1):
                cnt[i] += cnt[i - 1]
            for i in range(n - 1, -1, -1):
                cnt[s[i]] -= 1
                sa[cnt[s[i]]] = i
            rank[sa[0]] = 0
            r = 0
            for i in range(1, n):
                if s[sa[i]] != s[sa[i - 1]]:
                    r += 1
                rank[sa[i]] = r
            k = 1
            while r < n - 1:
                # order by second key: empty tails first, then shifted sa order
                idx = 0
                for i in range(n - k, n):
                    tmp[idx] = i
                    idx += 1
                for i in range(n):
                    if sa[i] >= k:
                        tmp[idx] = sa[i] - k
                        idx += 1
                # stable counting sort by first key
                memset(cnt, 0, (r + 2) * sizeof(int))
                for i in range(n):
                    cnt[rank[i]] += 1
                for i in range(1, r + 1):
                    cnt[i] += cnt[i - 1]
                for i in range(n - 1, -1, -1):
                    key = rank[tmp[i]]
                    cnt[key] -= 1
                    sa[cnt[key]] = tmp[i]
                # recompute ranks
                tmp2[sa[0]] = 0
                r = 0
                for i in range(1, n):
                    a_prev = rank[sa[i - 1]]
                    b_prev = rank[sa[i - 1] + k] if sa[i - 1] + k < n else -1
                    a_cur = rank[sa[i]]
                    b_cur = rank[sa[i] + k] if sa[i] + k < n else -1
                    if a_cur != a_prev or b_cur != b_prev:
                        r += 1
                    tmp2[sa[i]] = r
                for i in range(n):
                    rank[i] = tmp2[i]
                k <<= 1
            return [sa[i] for i in range(n)]
        finally:
            free(cnt)
    finally:
        free(s)
        free(sa)
        free(rank)
        free(tmp)
        free(tmp2)


def lcp_array(data, sa_list):
    """Kasai LCP: lcp[i] = lcp(suffix sa[i-1], suffix sa[i]); lcp[0] = 0."""
    cdef int n = len(sa_list)
    if n == 0:
        return []
    cdef int *s = <int *> malloc(n * sizeof(int))
    cdef int *sa = <int *> malloc(n * sizeof(int))
    cdef int *rank = <int *> malloc(n * sizeof(int))
    cdef int *lcp = <int *> malloc(n * sizeof(int))
    if not (s and sa and rank and lcp):
        raise MemoryError()
    cdef int i, j, h, r
    try:
        for i in range(n):
            s[i] = data[i]
            sa[i] = sa_list[i]
        for i in range(n):
            rank[sa[i]] = i
        memset(lcp, 0, n * sizeof(int))
        h = 0
        for i in range(n):
            r = rank[i]
            if r == 0:
                h = 0
                continue
            j = sa[r - 1]
            while i + h < n and j + h < n and s[i + h] == s[j + h]:
                h += 1
            lcp[r] = h
            if h > 0:
                h -= 1
        return [lcp[i] for i in range(n)]
    finally:
        free(s)
        free(sa)
        free(rank)
        free(lcp)
