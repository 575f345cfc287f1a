"""CDAWG built as the minimization of the suffix tree.

Every non-sink node is a maximal repeat; its equivalence class is the chain
of right-maximal suffixes of that repeat linked by forced left extensions
(the maximal unary path of explicit Weiner links). The class representative
is the longest member, i.e. the maximal repeat itself; all leaves merge
into the sink, whose members are the n text suffixes.

Arcs are the suffix-tree out-edges of the representatives. Each arc records
the branch symbol, the right-extension length, the derived left-extension
length, the representative child's interval offset and width (so the child
operation is constant-time for every class member), and for sink arcs the
start of one occurrence of (representative + branch symbol), namely the
representative's leaf child position.

In-neighbor arcs partition each class into blocks of member offsets
[left+1 .. left+size(source)]; the sorted block starts drive parent lookups.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from repindex.oracles import (
    OracleSuffixTree,
    SuffixArrayBundle,
    build_suffix_array_bundle,
)
from repindex.textio import Text, reverse_text


@dataclass
class CdawgNode:
    id: int
    length: int  # |label| of the representative
    size: int  # members in the equivalence class
    first: int  # BWT interval of the representative
    last: int
    rev_first: int  # interval of the reversed representative in the reverse BWT
    rev_last: int
    suffix_link: int | None = None  # class of the shortest member's suffix
    weiner_links: dict[int, int] = field(default_factory=dict)  # symbol -> class
    arc_ids: list[int] = field(default_factory=list)  # out-arcs sorted by symbol
    block_starts: list[int] = field(default_factory=list)  # member-offset blocks
    block_arc_ids: list[int] = field(default_factory=list)  # in-arc per block

    @property
    def width(self) -> int:
        return self.last - self.first + 1


@dataclass
class CdawgArc:
    id: int
    source: int
    target: int
    char: int  # first symbol of the edge label
    right: int  # right-extension length (edge label length)
    left: int  # left-extension length, target.length - source.length - right
    pos: int | None  # sink arcs: start of one occurrence of rep+char
    child_delta_start: int  # rep child interval start minus rep interval start
    child_width: int


@dataclass
class Cdawg:
    nodes: list[CdawgNode]
    arcs: list[CdawgArc]
    source: int
    sink: int
    n: int
    sigma: int
    arc_index: dict[tuple[int, int], int]  # (node, symbol) -> arc id
    st_class: dict[int, int] = field(default_factory=dict)  # oracle node -> class

    def node_count(self) -> int:
        return len(self.nodes)

    def arc_count(self) -> int:
        return len(self.arcs)

    def arc_from(self, node: int, c: int) -> CdawgArc | None:
        aid = self.arc_index.get((node, c))
        return self.arcs[aid] if aid is not None else None

    def in_arc_for_offset(self, node: int, offset: int) -> CdawgArc:
        """The in-arc whose member block contains the given class offset."""
        nd = self.nodes[node]
        k = bisect_right(nd.block_starts, offset) - 1
        if k < 0:
            raise ValueError(f"offset {offset} below every block of node {node}")
        return self.arcs[nd.block_arc_ids[k]]

    def dfs_reachable_sink_arcs(
        self, v: int, i: int, j: int, counters: dict | None = None
    ) -> list[tuple[int, int]]:
        """(pos, accumulated j) for every sink arc on paths from v.

        The traversal unfolds the DAG below v exactly like the suffix-tree
        subtree of the matched node, so its size is proportional to the
        number of occurrences seeded.
        """
        seeds: list[tuple[int, int]] = []
        stack = [(v, j)]
        visited = 0
        while stack:
            node, joff = stack.pop()
            visited += 1
            for aid in self.nodes[node].arc_ids:
                arc = self.arcs[aid]
                visited += 1
                if arc.target == self.sink:
                    seeds.append((arc.pos, joff))
                else:
                    stack.append((arc.target, joff + arc.left))
        if counters is not None:
            counters["visited"] = counters.get("visited", 0) + visited
        return seeds


def build_cdawg(t: Text, st: OracleSuffixTree | None = None) -> Cdawg:
    """Minimize the suffix tree of t into an annotated CDAWG."""
    bundle: SuffixArrayBundle
    if st is None:
        bundle = build_suffix_array_bundle(t)
        st = OracleSuffixTree(t, bundle)
    else:
        bundle = st.bundle
    n = t.n
    rt = reverse_text(t)
    rbundle = build_suffix_array_bundle(rt)

    # occurrence-count prefix table for backward steps on the oracle BWT
    occ = {c: [0] * (n + 1) for c in range(t.sigma + 1)}
    for i in range(1, n + 1):
        for c in occ:
            occ[c][i] = occ[c][i - 1]
        occ[st.bwt[i]][i] += 1
    C = [0] * (t.sigma + 2)
    for c in range(t.sigma + 1):
        C[c + 1] = C[c] + occ[c][n]

    internal = st.internal_nodes()
    is_mr = {nd.id: st.is_maximal_repeat_node(nd.id) for nd in internal}
    if t.n >= 2:
        assert is_mr[st.root], "the root is a maximal repeat for every n >= 2"
    is_mr[st.root] = True  # the source class exists even for the n = 1 corner

    # climb forced left extensions to each node's class representative
    rep_of: dict[int, int] = {}

    def rep(nid: int) -> int:
        path = []
        cur = nid
        while cur not in rep_of:
            if is_mr[cur]:
                rep_of[cur] = cur
                break
            path.append(cur)
            node = st.nodes[cur]
            a = st.bwt[node.sp]
            assert a >= 1, "an internal repeat cannot be forced-preceded by the terminator"
            sp = C[a] + occ[a][node.sp - 1] + 1
            ep = C[a] + occ[a][node.ep]
            target = st.by_interval[(sp, ep)]
            assert st.nodes[target].string_depth == node.string_depth + 1
            cur = target
        r = rep_of[cur]
        for nid2 in path:
            rep_of[nid2] = r
        return r

    for nd in internal:
        rep(nd.id)

    # one CDAWG node per representative, plus the sink
    reps = sorted({rep_of[nd.id] for nd in internal}, key=lambda x: st.nodes[x].string_depth)
    cd_nodes: list[CdawgNode] = []
    class_of: dict[int, int] = {}

    def rev_interval(depth: int, one_occurrence: int) -> tuple[int, int]:
        if depth == 0:
            return (1, n)
        q = n - one_occurrence - depth + 1
        return rbundle.interval_of(q, depth)

    for rid in reps:
        nd = st.nodes[rid]
        # members: suffixes of the representative until one is left-maximal
        size = 1
        cur = st.nodes[rid].suffix_link
        while cur is not None and not st.nodes[cur].is_leaf and not is_mr[cur]:
            assert rep_of[cur] == rid
            size += 1
            cur = st.nodes[cur].suffix_link
        rf, rl = rev_interval(nd.string_depth, bundle.sa[nd.sp])
        cid = len(cd_nodes)
        cd_nodes.append(
            CdawgNode(
                id=cid,
                length=nd.string_depth,
                size=size,
                first=nd.sp,
                last=nd.ep,
                rev_first=rf,
                rev_last=rl,
            )
        )
        class_of[rid] = cid

    sink_id = len(cd_nodes)
    sink_row = bundle.isa[1]
    rev_row = rbundle.isa[1]
    cd_nodes.append(
        CdawgNode(
            id=sink_id,
            length=n,
            size=n,
            first=sink_row,
            last=sink_row,
            rev_first=rev_row,
            rev_last=rev_row,
        )
    )
    source_id = class_of[st.root]

    # arcs: out-edges of the representatives
    arcs: list[CdawgArc] = []
    arc_index: dict[tuple[int, int], int] = {}
    for rid in reps:
        src_nd = st.nodes[rid]
        src_cid = class_of[rid]
        for c in sorted(src_nd.children):
            child = st.nodes[src_nd.children[c]]
            if child.is_leaf:
                target = sink_id
                child_depth = child.string_depth
                pos = child.leaf_position
            else:
                target = class_of[rep_of[child.id]]
                child_depth = child.string_depth
                pos = None
            right = child_depth - src_nd.string_depth
            left = cd_nodes[target].length - src_nd.string_depth - right
            assert left >= 0
            aid = len(arcs)
            arcs.append(
                CdawgArc(
                    id=aid,
                    source=src_cid,
                    target=target,
                    char=c,
                    right=right,
                    left=left,
                    pos=pos,
                    child_delta_start=child.sp - src_nd.sp,
                    child_width=child.ep - child.sp + 1,
                )
            )
            cd_nodes[src_cid].arc_ids.append(aid)
            arc_index[(src_cid, c)] = aid

    # class-level suffix and Weiner links via each class's shortest member
    for rid in reps:
        cid = class_of[rid]
        cur = rid
        for _ in range(cd_nodes[cid].size - 1):
            cur = st.nodes[cur].suffix_link
        shortest = st.nodes[cur]
        if shortest.suffix_link is None:
            continue  # the root class
        tgt = shortest.suffix_link
        tgt_cid = class_of[rep_of[tgt]] if not st.nodes[tgt].is_leaf else None
        assert tgt_cid is not None and rep_of[tgt] == tgt, "suffix target must be a representative"
        cd_nodes[cid].suffix_link = tgt_cid
        first_char = t.data[bundle.sa[shortest.sp]]
        cd_nodes[tgt_cid].weiner_links[first_char] = cid
    # the sink class: shortest member is the terminator leaf, whose suffix
    # chain target is the root
    cd_nodes[sink_id].suffix_link = source_id
    cd_nodes[source_id].weiner_links[0] = sink_id

    # in-neighbor blocks partitioning each class's member offsets
    in_arcs: dict[int, list[int]] = {nd.id: [] for nd in cd_nodes}
    for arc in arcs:
        in_arcs[arc.target].append(arc.id)
    for nd in cd_nodes:
        if nd.id == source_id:
            continue
        blocks = sorted(in_arcs[nd.id], key=lambda aid: arcs[aid].left)
        expected = 1
        for aid in blocks:
            arc = arcs[aid]
            assert arc.left + 1 == expected, "in-neighbor blocks must tile the class"
            nd.block_starts.append(arc.left + 1)
            nd.block_arc_ids.append(aid)
            expected += cd_nodes[arc.source].size
        assert expected == nd.size + 1, "in-neighbor blocks must cover every member"

    st_class = {nid: class_of[r] for nid, r in rep_of.items()}
    return Cdawg(
        nodes=cd_nodes,
        arcs=arcs,
        source=source_id,
        sink=sink_id,
        n=n,
        sigma=t.sigma,
        arc_index=arc_index,
        st_class=st_class,
    )
