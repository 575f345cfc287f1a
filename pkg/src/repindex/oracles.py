"""Desk-scale ground-truth constructions and brute-force reference algorithms.

Everything here favors clarity over speed: suffix array bundle (with LCP and
range-minimum support), plain BWT, a pointer-based suffix tree built from
LCP intervals, Weiner-link enumeration, and naive pattern/repeat/measure
routines. These are the oracles the composite structures are validated
against; none of them are used on the query path of the real indexes.

Positions, BWT rows and intervals are 1-based throughout, matching the
Text convention (index 0 of the padded arrays is unused).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from repindex import kernels
from repindex.textio import Text, reverse_text


@dataclass
class SuffixArrayBundle:
    """Suffix array, its inverse, LCP array, and range-minimum support.

    sa[i] (i in [1..n]) is the start of the i-th smallest suffix;
    lcp[i] = lcp(suffix sa[i-1], suffix sa[i]) with lcp[1] = 0.
    """

    sa: list[int]
    isa: list[int]
    lcp: list[int]
    n: int
    _rmq: np.ndarray | None = field(default=None, repr=False)

    def lcp_min(self, i: int, j: int) -> int:
        """min(lcp[i..j]) for 1 <= i <= j <= n (sparse-table query)."""
        if self._rmq is None:
            self._build_rmq()
        k = (j - i + 1).bit_length() - 1
        return int(min(self._rmq[k][i], self._rmq[k][j - (1 << k) + 1]))

    def _build_rmq(self):
        arr = np.asarray(self.lcp[1:], dtype=np.int32)  # arr[0] is lcp[1]
        levels = [arr]
        k = 1
        while (1 << k) <= len(arr):
            prev = levels[-1]
            half = 1 << (k - 1)
            levels.append(np.minimum(prev[:-half], prev[half:]))
            k += 1
        # pad each level so that index arithmetic can stay 1-based
        self._rmq = [np.concatenate(([0], lv)) for lv in levels]

    def interval_of(self, pos: int, length: int) -> tuple[int, int]:
        """BWT/SA row interval of the substring t[pos..pos+length-1].

        length == 0 yields the full interval [1..n].
        """
        if length == 0:
            return 1, self.n
        row = self.isa[pos]
        # widen to all rows whose suffix shares a prefix of `length`
        lo, hi = row, row
        # binary search left edge: smallest lo with lcp_min(lo+1..row) >= length
        left, right = 1, row
        while left < right:
            mid = (left + right) // 2
            if self.lcp_min(mid + 1, row) >= length:
                right = mid
            else:
                left = mid + 1
        lo = left
        left, right = row, self.n
        while left < right:
            mid = (left + right + 1) // 2
            if self.lcp_min(row + 1, mid) >= length:
                left = mid
            else:
                right = mid - 1
        hi = left
        return lo, hi


def build_suffix_array_bundle(t: Text) -> SuffixArrayBundle:
    """Sort all suffixes of t and compute the LCP array."""
    data0 = list(t.data[1:])  # 0-based copy for the kernels
    sa0 = kernels.suffix_array(data0)
    lcp0 = kernels.lcp_array(data0, sa0)
    sa = [0] + [p + 1 for p in sa0]
    lcp = [0] + lcp0
    isa = [0] * (t.n + 1)
    for row in range(1, t.n + 1):
        isa[sa[row]] = row
    return SuffixArrayBundle(sa=sa, isa=isa, lcp=lcp, n=t.n)


def bwt_from_suffix_array(t: Text, b: SuffixArrayBundle) -> list[int]:
    """BWT[i] = t[sa[i]-1] with t[0] taken as t[n] (padded, 1-based)."""
    bwt = [0] * (t.n + 1)
    for row in range(1, t.n + 1):
        p = b.sa[row]
        bwt[row] = t.data[p - 1] if p > 1 else t.data[t.n]
    return bwt


@dataclass(slots=True)
class StNode:
    id: int
    string_depth: int
    sp: int
    ep: int
    parent: int | None
    children: dict[int, int]  # first symbol of edge -> child id
    suffix_link: int | None = None
    is_leaf: bool = False
    leaf_position: int | None = None


class OracleSuffixTree:
    """Suffix tree built from SA+LCP intervals; internal nodes are exactly
    the right-maximal substrings, leaves carry text positions."""

    def __init__(self, t: Text, b: SuffixArrayBundle):
        self.text = t
        self.bundle = b
        self.bwt = bwt_from_suffix_array(t, b)
        self.nodes: list[StNode] = []
        self.by_interval: dict[tuple[int, int], int] = {}
        self.root = self._build()
        self._set_suffix_links()

    # -- construction ------------------------------------------------------

    def _new_node(self, depth, sp, ep, parent, is_leaf=False, leaf_position=None):
        nid = len(self.nodes)
        self.nodes.append(
            StNode(
                id=nid,
                string_depth=depth,
                sp=sp,
                ep=ep,
                parent=parent,
                children={},
                is_leaf=is_leaf,
                leaf_position=leaf_position,
            )
        )
        if not is_leaf:
            self.by_interval[(sp, ep)] = nid
        return nid

    def _build(self) -> int:
        t, b = self.text, self.bundle
        n = t.n
        root = self._new_node(0, 1, n, None)
        # frames: (sp, ep, node_id, depth)
        work = [(1, n, root, 0)]
        while work:
            sp, ep, nid, d = work.pop()
            # child segments split at rows where lcp == d
            seg_start = sp
            splits = [i for i in range(sp + 1, ep + 1) if b.lcp[i] == d]
            for boundary in splits + [ep + 1]:
                csp, cep = seg_start, boundary - 1
                seg_start = boundary
                first = t.data[b.sa[csp] + d]
                if csp == cep:
                    leaf_pos = b.sa[csp]
                    cid = self._new_node(
                        n - leaf_pos + 1, csp, cep, nid,
                        is_leaf=True, leaf_position=leaf_pos,
                    )
                else:
                    cd = min(b.lcp[i] for i in range(csp + 1, cep + 1))
                    cid = self._new_node(cd, csp, cep, nid)
                    work.append((csp, cep, cid, cd))
                self.nodes[nid].children[first] = cid
        return root

    def _set_suffix_links(self):
        b = self.bundle
        for node in self.nodes:
            if node.id == self.root:
                continue
            if node.is_leaf:
                s = node.leaf_position
                if s < self.text.n:
                    node.suffix_link = self._descend_to_depth(
                        b.isa[s + 1], node.string_depth - 1
                    )
                continue
            target_row = b.isa[b.sa[node.sp] + 1]
            node.suffix_link = self._descend_to_depth(target_row, node.string_depth - 1)

    def _descend_to_depth(self, row: int, depth: int) -> int:
        """Node containing `row` at exactly `depth`; exists for suffix links."""
        cur = self.nodes[self.root]
        while cur.string_depth < depth:
            for cid in cur.children.values():
                c = self.nodes[cid]
                if c.sp <= row <= c.ep:
                    cur = c
                    break
            else:
                raise AssertionError("no child contains the target row")
        assert cur.string_depth == depth or (cur.is_leaf and cur.string_depth == depth)
        return cur.id

    # -- accessors ---------------------------------------------------------

    def label(self, nid: int) -> tuple[int, ...]:
        node = self.nodes[nid]
        start = self.bundle.sa[node.sp]
        return self.text.slice(start, start + node.string_depth - 1)

    def internal_nodes(self) -> list[StNode]:
        return [nd for nd in self.nodes if not nd.is_leaf]

    def left_symbols(self, nid: int) -> set[int]:
        """Circular left-extension symbols = BWT symbols in the interval."""
        node = self.nodes[nid]
        return set(self.bwt[node.sp : node.ep + 1])

    def is_maximal_repeat_node(self, nid: int) -> bool:
        node = self.nodes[nid]
        return not node.is_leaf and len(self.left_symbols(nid)) > 1


def build_oracle_suffix_tree(t: Text, b: SuffixArrayBundle) -> OracleSuffixTree:
    return OracleSuffixTree(t, b)


@dataclass
class WeinerLinkSets:
    explicit: set[tuple[int, int, int]]  # (source node id, symbol, target node id)
    implicit: set[tuple[int, int]]  # (source node id, symbol)


def enumerate_weiner_links(st: OracleSuffixTree, t: Text) -> WeinerLinkSets:
    """Classify every left extension of every internal node.

    Symbol 0 extensions come from the circular convention (the terminator
    precedes position 1) and are always implicit: 0W occurs exactly once.
    """
    n = t.n
    # prefix occurrence counts for a naive rank over the oracle BWT
    occ = {c: [0] * (n + 1) for c in range(t.sigma + 1)}
    for i in range(1, n + 1):
        for c in occ:
            occ[c][i] = occ[c][i - 1]
        occ[st.bwt[i]][i] += 1
    counts = [occ[c][n] for c in range(t.sigma + 1)]
    C = [0] * (t.sigma + 2)
    for c in range(t.sigma + 1):
        C[c + 1] = C[c] + counts[c]

    explicit: set[tuple[int, int, int]] = set()
    implicit: set[tuple[int, int]] = set()
    for node in st.internal_nodes():
        d = node.string_depth
        for a in sorted(st.left_symbols(node.id)):
            if a == 0:
                implicit.add((node.id, a))
                continue
            sp = C[a] + occ[a][node.sp - 1] + 1
            ep = C[a] + occ[a][node.ep]
            target = st.by_interval.get((sp, ep))
            if target is not None and st.nodes[target].string_depth == d + 1:
                explicit.add((node.id, a, target))
            else:
                implicit.add((node.id, a))
    return WeinerLinkSets(explicit=explicit, implicit=implicit)


# -- naive reference algorithms ---------------------------------------------


def naive_occurrences(t: Text, pattern) -> list[int]:
    """All 1-based starts s with t[s..s+m-1] = pattern; sorted."""
    m = len(pattern)
    if m == 0:
        return list(range(1, t.n + 1))
    pat = tuple(pattern)
    return [
        s
        for s in range(1, t.n - m + 2)
        if t.data[s : s + m] == pat
    ]


def naive_matching_statistics(t: Text, s) -> list[int]:
    """MS[i] = length of the longest prefix of s[i..] occurring in t (0-based list)."""
    text = t.data[1:]
    out = []
    for i in range(len(s)):
        best = 0
        for j in range(len(text)):
            ln = 0
            while (
                i + ln < len(s)
                and j + ln < len(text)
                and s[i + ln] == text[j + ln]
            ):
                ln += 1
            if ln > best:
                best = ln
        out.append(best)
    return out


def naive_maximal_repeats(t: Text) -> set[tuple[int, ...]]:
    """All maximal repeats by substring enumeration, circular left contexts.

    The empty string is included whenever it qualifies (n >= 2). Strings
    containing the terminator occur at most once circularly and are skipped.
    """
    n = t.n
    result: set[tuple[int, ...]] = set()
    if n >= 2:
        result.add(())  # the root: left/right sets are the whole alphabet
    text = t.data
    seen: set[tuple[int, ...]] = set()
    for start in range(1, n + 1):
        for end in range(start, n):  # end < n keeps the terminator out
            w = text[start : end + 1]
            if w in seen:
                continue
            seen.add(w)
            m = len(w)
            occs = [p for p in range(1, n - m + 2) if text[p : p + m] == w]
            if len(occs) < 2:
                continue
            lefts = {text[p - 1] if p > 1 else text[n] for p in occs}
            rights = {text[p + m] for p in occs}  # p+m <= n since w is #-free
            if len(lefts) > 1 and len(rights) > 1:
                result.add(w)
    return result


def naive_lz_factor_count(t: Text) -> int:
    """Greedy LZ77 factor count by direct scanning (independent of lz77.py).

    A symbol with no earlier occurrence opens a length-1 factor; otherwise
    the factor is the longest prefix of the rest matching at some j < p
    (overlap with the factor itself allowed).
    """
    data = t.data
    n = t.n
    p = 1
    z = 0
    while p <= n:
        best = 0
        for j in range(1, p):
            ln = 0
            while p + ln <= n and data[j + ln] == data[p + ln]:
                ln += 1
            if ln > best:
                best = ln
        z += 1
        p += best if best > 0 else 1
    return z


def run_count(bwt: list[int]) -> int:
    """Number of maximal constant runs in a padded 1-based BWT."""
    n = len(bwt) - 1
    r = 1 if n >= 1 else 0
    for i in range(2, n + 1):
        if bwt[i] != bwt[i - 1]:
            r += 1
    return r


@dataclass
class MeasureReport:
    n: int
    sigma: int
    n_maximal_repeats: int
    e: int
    e_left: int
    r: int
    r_rev: int
    z: int
    z_rev: int


def _edge_counts(st: OracleSuffixTree) -> tuple[int, int]:
    """(|E^r|, |F^r|): edges out of maximal-repeat nodes, split by whether
    the child is itself a maximal repeat."""
    e_r = 0
    f_r = 0
    for node in st.internal_nodes():
        if not st.is_maximal_repeat_node(node.id):
            continue
        for cid in node.children.values():
            if not st.nodes[cid].is_leaf and st.is_maximal_repeat_node(cid):
                e_r += 1
            else:
                f_r += 1
    return e_r, f_r


def naive_measures(t: Text) -> MeasureReport:
    """All repetition measures by brute force; reverse-side fields on rev(t)."""
    b = build_suffix_array_bundle(t)
    st = build_oracle_suffix_tree(t, b)
    rt = reverse_text(t)
    rb = build_suffix_array_bundle(rt)
    rst = build_oracle_suffix_tree(rt, rb)
    e_r, f_r = _edge_counts(st)
    e_l, f_l = _edge_counts(rst)
    return MeasureReport(
        n=t.n,
        sigma=t.sigma,
        n_maximal_repeats=len(naive_maximal_repeats(t)),
        e=e_r + f_r,
        e_left=e_l + f_l,
        r=run_count(st.bwt),
        r_rev=run_count(rst.bwt),
        z=naive_lz_factor_count(t),
        z_rev=naive_lz_factor_count(rt),
    )


def f_r_count(st: OracleSuffixTree) -> int:
    return _edge_counts(st)[1]


def e_r_count(st: OracleSuffixTree) -> int:
    return _edge_counts(st)[0]


def theorem1_lower_bound(t: Text, st: OracleSuffixTree) -> int:
    """|[0..sigma] \\ U| + sum |left sets over rightmost maximal repeats|
    - |M^r| + 1, the run-count lower bound."""
    mr_nodes = [nd.id for nd in st.internal_nodes() if st.is_maximal_repeat_node(nd.id)]
    mr_set = set(mr_nodes)

    def has_mr_proper_descendant(nid: int) -> bool:
        stack = [cid for cid in st.nodes[nid].children.values()]
        while stack:
            cur = stack.pop()
            if cur in mr_set:
                return True
            stack.extend(st.nodes[cur].children.values())
        return False

    rightmost = [nid for nid in mr_nodes if not has_mr_proper_descendant(nid)]
    union: set[int] = set()
    total = 0
    for nid in rightmost:
        ls = st.left_symbols(nid)
        union |= ls
        total += len(ls)
    uncovered = (t.sigma + 1) - len(union)
    return uncovered + total - len(rightmost) + 1
