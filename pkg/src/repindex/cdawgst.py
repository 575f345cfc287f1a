"""Suffix tree operations over (CDAWG, forward RLBWT, reverse RLBWT).

A suffix-tree node is handled as (class node, string depth, BWT interval):
the depth selects the class member, the interval pins its rows. Leaves are
first-class: they are members of the sink class, with depth n - start + 1
and a singleton interval. The light representation drops the interval and
still identifies the node uniquely, since members of one class have
distinct depths.

Moving around the tree:
  child     follows the class arc chosen by symbol; the member's child
            interval is the member interval shifted by the arc's
            precomputed representative offset.
  parent    locates the in-neighbor block containing the member offset;
            the parent interval is the member interval shifted back by
            that arc's offset, widened to the in-neighbor's class width.
  suffix    within the class it is a select step on the forward BWT; from
            the shortest member it jumps along the class suffix link.
  weiner    from a representative it follows the class Weiner link (absent
            when the left extension is not right-maximal); inside a class
            the single run symbol of the member interval decides, and a
            rank step moves up the chain.
Edge labels are read from the reverse RLBWT: after the branch symbol, each
interval of the reversed grown string is a single run whose symbol is the
next label character.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator

from repindex.cdawg import Cdawg, CdawgArc, build_cdawg
from repindex.oracles import (
    OracleSuffixTree,
    build_suffix_array_bundle,
    bwt_from_suffix_array,
)
from repindex.rlbwt import RunLengthBwt, build_rlbwt
from repindex.textio import Text, reverse_text


class SuffixTreeOpError(ValueError):
    pass


class ChildAbsentError(LookupError):
    pass


@dataclass(frozen=True)
class StNodeId:
    node: int  # CDAWG class id
    depth: int
    sp: int
    ep: int

    def light(self) -> "LightStNodeId":
        return LightStNodeId(node=self.node, depth=self.depth)


@dataclass(frozen=True)
class LightStNodeId:
    node: int
    depth: int


@dataclass(frozen=True)
class BidirectionalState:
    fwd: tuple[int, int]
    rev: tuple[int, int]
    length: int


@dataclass
class SuffixTreeIndex:
    n: int
    sigma: int
    rlbwt_fwd: RunLengthBwt
    rlbwt_rev: RunLengthBwt
    cdawg: Cdawg
    symbol_map: dict[int, int] = field(default_factory=dict)

    # -- basics ------------------------------------------------------------

    def root(self) -> StNodeId:
        src = self.cdawg.nodes[self.cdawg.source]
        return StNodeId(node=src.id, depth=0, sp=1, ep=self.n)

    def is_leaf(self, v: StNodeId) -> bool:
        return v.node == self.cdawg.sink

    def string_depth(self, v: StNodeId | LightStNodeId) -> int:
        return v.depth

    def n_leaves(self, v: StNodeId) -> int:
        return v.ep - v.sp + 1

    def locate_leaf(self, v: StNodeId) -> int:
        if not self.is_leaf(v):
            raise SuffixTreeOpError("locate_leaf on an internal node")
        return self.n - v.depth + 1

    def is_ancestor(self, u: StNodeId, v: StNodeId) -> bool:
        return u.sp <= v.sp and v.ep <= u.ep and u.depth <= v.depth

    # -- downward ----------------------------------------------------------

    def _member_offset(self, v: StNodeId | LightStNodeId) -> int:
        return self.cdawg.nodes[v.node].length - v.depth + 1

    def child(self, v: StNodeId, c: int) -> StNodeId:
        if self.is_leaf(v):
            raise ChildAbsentError("leaves have no children")
        arc = self.cdawg.arc_from(v.node, c)
        if arc is None:
            raise ChildAbsentError(f"no child with symbol {c}")
        sp = v.sp + arc.child_delta_start
        return StNodeId(
            node=arc.target,
            depth=v.depth + arc.right,
            sp=sp,
            ep=sp + arc.child_width - 1,
        )

    def first_child(self, v: StNodeId) -> StNodeId | None:
        if self.is_leaf(v):
            return None
        arc = self.cdawg.arcs[self.cdawg.nodes[v.node].arc_ids[0]]
        sp = v.sp + arc.child_delta_start
        return StNodeId(
            node=arc.target,
            depth=v.depth + arc.right,
            sp=sp,
            ep=sp + arc.child_width - 1,
        )

    # -- upward ------------------------------------------------------------

    def _in_arc(self, v: StNodeId | LightStNodeId) -> CdawgArc:
        return self.cdawg.in_arc_for_offset(v.node, self._member_offset(v))

    def parent(self, v: StNodeId) -> StNodeId:
        if v.depth == 0:
            raise SuffixTreeOpError("the root has no parent")
        arc = self._in_arc(v)
        u = self.cdawg.nodes[arc.source]
        sp = v.sp - arc.child_delta_start
        return StNodeId(
            node=u.id, depth=v.depth - arc.right, sp=sp, ep=sp + u.width - 1
        )

    def next_sibling(self, v: StNodeId) -> StNodeId | None:
        if v.depth == 0:
            return None
        arc = self._in_arc(v)
        u = self.cdawg.nodes[arc.source]
        nxt = self._arc_after(u, arc)
        if nxt is None:
            return None
        parent_sp = v.sp - arc.child_delta_start
        sp = parent_sp + nxt.child_delta_start
        return StNodeId(
            node=nxt.target,
            depth=(v.depth - arc.right) + nxt.right,
            sp=sp,
            ep=sp + nxt.child_width - 1,
        )

    def _arc_after(self, u, arc) -> CdawgArc | None:
        ids = u.arc_ids
        lo, hi = 0, len(ids) - 1
        pos = len(ids)
        while lo <= hi:
            mid = (lo + hi) // 2
            if self.cdawg.arcs[ids[mid]].char > arc.char:
                pos = mid
                hi = mid - 1
            else:
                lo = mid + 1
        return self.cdawg.arcs[ids[pos]] if pos < len(ids) else None

    # -- links -------------------------------------------------------------

    def suffix_link(self, v: StNodeId) -> StNodeId:
        if v.depth == 0:
            raise SuffixTreeOpError("the root has no suffix link")
        nd = self.cdawg.nodes[v.node]
        if v.depth == nd.length - nd.size + 1:
            w = self.cdawg.nodes[nd.suffix_link]
            return StNodeId(node=w.id, depth=w.length, sp=w.first, ep=w.last)
        c = self.rlbwt_fwd._f_column_symbol(v.sp)
        sp = self.rlbwt_fwd.select(c, v.sp - self.rlbwt_fwd.C[c])
        return StNodeId(node=v.node, depth=v.depth - 1, sp=sp, ep=sp + (v.ep - v.sp))

    def weiner_link(self, v: StNodeId, c: int) -> StNodeId | None:
        nd = self.cdawg.nodes[v.node]
        if v.depth == nd.length:
            target = nd.weiner_links.get(c)
            if target is None:
                return None
            w = self.cdawg.nodes[target]
            sp, ep = self.rlbwt_fwd.backward_step((v.sp, v.ep), c)
            assert sp <= ep, "a recorded Weiner link must be realizable"
            return StNodeId(node=w.id, depth=w.length - w.size + 1, sp=sp, ep=ep)
        if self.rlbwt_fwd.char_at(v.sp) != c:
            return None
        sp = self.rlbwt_fwd.C[c] + self.rlbwt_fwd.rank(c, v.sp)
        return StNodeId(node=v.node, depth=v.depth + 1, sp=sp, ep=sp + (v.ep - v.sp))

    # -- edge labels ---------------------------------------------------------

    def _edge_symbols(self, arc: CdawgArc) -> Iterator[int]:
        u = self.cdawg.nodes[arc.source]
        riv = (u.rev_first, u.rev_last)
        c = arc.char
        for k in range(arc.right):
            if k > 0:
                c = self.rlbwt_rev.char_at(riv[0])
                if __debug__:
                    width = riv[1] - riv[0] + 1
                    inside = self.rlbwt_rev.rank(c, riv[1]) - self.rlbwt_rev.rank(c, riv[0] - 1)
                    assert inside == width, "mid-edge interval must be a single run"
            yield c
            if k < arc.right - 1:
                riv = self.rlbwt_rev.backward_step(riv, c)

    def edge_symbols(self, v: StNodeId) -> Iterator[int]:
        """Symbols of the edge entering v, front to back."""
        if v.depth == 0:
            raise SuffixTreeOpError("the root has no incoming edge")
        return self._edge_symbols(self._in_arc(v))

    def edge_char(self, v: StNodeId, t: int) -> int:
        if v.depth == 0:
            raise SuffixTreeOpError("the root has no incoming edge")
        arc = self._in_arc(v)
        if not 1 <= t <= arc.right:
            raise SuffixTreeOpError(f"edge offset {t} outside [1..{arc.right}]")
        return next(islice(self._edge_symbols(arc), t - 1, None))

    # -- light representation ------------------------------------------------

    def light_root(self) -> LightStNodeId:
        return LightStNodeId(node=self.cdawg.source, depth=0)

    def light_child(self, v: LightStNodeId, c: int) -> LightStNodeId | None:
        if v.node == self.cdawg.sink:
            return None
        arc = self.cdawg.arc_from(v.node, c)
        if arc is None:
            return None
        return LightStNodeId(node=arc.target, depth=v.depth + arc.right)

    def light_first_child(self, v: LightStNodeId) -> LightStNodeId | None:
        if v.node == self.cdawg.sink:
            return None
        arc = self.cdawg.arcs[self.cdawg.nodes[v.node].arc_ids[0]]
        return LightStNodeId(node=arc.target, depth=v.depth + arc.right)

    def light_suffix_link(self, v: LightStNodeId) -> LightStNodeId:
        if v.depth == 0:
            raise SuffixTreeOpError("the root has no suffix link")
        nd = self.cdawg.nodes[v.node]
        if v.depth == nd.length - nd.size + 1:
            w = self.cdawg.nodes[nd.suffix_link]
            return LightStNodeId(node=w.id, depth=w.length)
        return LightStNodeId(node=v.node, depth=v.depth - 1)

    def light_parent(self, v: LightStNodeId) -> LightStNodeId:
        if v.depth == 0:
            raise SuffixTreeOpError("the root has no parent")
        arc = self._in_arc(v)
        return LightStNodeId(node=arc.source, depth=v.depth - arc.right)

    def light_next_sibling(self, v: LightStNodeId) -> LightStNodeId | None:
        if v.depth == 0:
            return None
        arc = self._in_arc(v)
        u = self.cdawg.nodes[arc.source]
        nxt = self._arc_after(u, arc)
        if nxt is None:
            return None
        return LightStNodeId(node=nxt.target, depth=(v.depth - arc.right) + nxt.right)

    # -- whole-tree algorithms ----------------------------------------------

    def traverse(self) -> Iterator[LightStNodeId]:
        """Preorder stream of every suffix tree node, O(1) ids of state."""
        cur = self.light_root()
        yield cur
        while True:
            nxt = self.light_first_child(cur)
            if nxt is not None:
                cur = nxt
                yield cur
                continue
            while True:
                if cur.depth == 0:
                    return
                sib = self.light_next_sibling(cur)
                if sib is not None:
                    cur = sib
                    yield cur
                    break
                cur = self.light_parent(cur)

    def _child_arc(self, v: StNodeId, c: int) -> tuple[CdawgArc, StNodeId] | None:
        if self.is_leaf(v):
            return None
        arc = self.cdawg.arc_from(v.node, c)
        if arc is None:
            return None
        sp = v.sp + arc.child_delta_start
        cd = StNodeId(
            node=arc.target, depth=v.depth + arc.right, sp=sp, ep=sp + arc.child_width - 1
        )
        return arc, cd

    def matching_statistics(self, s) -> list[int]:
        """MS[i] = longest prefix of s[i..] occurring in the text.

        Folklore suffix-link algorithm: extend with child steps and edge
        reads, then drop the front symbol via a suffix link and rescan by
        arc lengths (no symbol comparisons) down to the kept depth.
        """
        m = len(s)
        ms = [0] * m
        base = self.root()
        matched = 0
        mid_child: StNodeId | None = None
        edge_iter: Iterator[int] | None = None
        for qi in range(m):
            while True:
                if mid_child is None:
                    if qi + matched >= m:
                        break
                    pair = self._child_arc(base, s[qi + matched])
                    if pair is None:
                        break
                    arc, cd = pair
                    matched += 1
                    if matched == cd.depth:
                        base = cd
                        continue
                    mid_child = cd
                    edge_iter = self._edge_symbols(arc)
                    next(edge_iter)
                else:
                    if qi + matched >= m or next(edge_iter) != s[qi + matched]:
                        break
                    matched += 1
                    if matched == mid_child.depth:
                        base = mid_child
                        mid_child = None
                        edge_iter = None
            ms[qi] = matched
            if matched == 0:
                continue
            matched -= 1
            base = self.suffix_link(base) if base.depth > 0 else self.root()
            mid_child = None
            edge_iter = None
            # rescan: s[qi+1 .. qi+matched] is known to occur
            while base.depth < matched:
                pair = self._child_arc(base, s[qi + 1 + base.depth])
                assert pair is not None, "rescan of an occurring string cannot fail"
                arc, cd = pair
                if cd.depth <= matched:
                    base = cd
                    continue
                mid_child = cd
                edge_iter = self._edge_symbols(arc)
                for _ in range(matched - base.depth):
                    next(edge_iter)
                break
        return ms

    # -- bidirectional extension ----------------------------------------------

    def empty_state(self) -> BidirectionalState:
        return BidirectionalState(fwd=(1, self.n), rev=(1, self.n), length=0)

    def extend_right(self, st: BidirectionalState, c: int) -> BidirectionalState | None:
        new_rev = self.rlbwt_rev.backward_step(st.rev, c)
        if new_rev[0] > new_rev[1]:
            return None
        offset = 0
        for d in range(c):
            iv = self.rlbwt_rev.backward_step(st.rev, d)
            if iv[0] <= iv[1]:
                offset += iv[1] - iv[0] + 1
        sp = st.fwd[0] + offset
        return BidirectionalState(
            fwd=(sp, sp + (new_rev[1] - new_rev[0])), rev=new_rev, length=st.length + 1
        )

    def extend_left(self, st: BidirectionalState, c: int) -> BidirectionalState | None:
        new_fwd = self.rlbwt_fwd.backward_step(st.fwd, c)
        if new_fwd[0] > new_fwd[1]:
            return None
        offset = 0
        for d in range(c):
            iv = self.rlbwt_fwd.backward_step(st.fwd, d)
            if iv[0] <= iv[1]:
                offset += iv[1] - iv[0] + 1
        sp = st.rev[0] + offset
        return BidirectionalState(
            fwd=new_fwd, rev=(sp, sp + (new_fwd[1] - new_fwd[0])), length=st.length + 1
        )


def build_st_index(t: Text, st: OracleSuffixTree | None = None) -> SuffixTreeIndex:
    if st is None:
        bundle = build_suffix_array_bundle(t)
        st = OracleSuffixTree(t, bundle)
    rt = reverse_text(t)
    rbundle = build_suffix_array_bundle(rt)
    return SuffixTreeIndex(
        n=t.n,
        sigma=t.sigma,
        rlbwt_fwd=build_rlbwt(bwt_from_suffix_array(t, st.bundle), sigma=t.sigma),
        rlbwt_rev=build_rlbwt(bwt_from_suffix_array(rt, rbundle), sigma=t.sigma),
        cdawg=build_cdawg(t, st),
        symbol_map=dict(t.symbol_map),
    )
