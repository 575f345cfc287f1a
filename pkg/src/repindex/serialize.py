"""Index file format: little-endian sections with per-section checksums.

Layout:
    magic "CRADS" | version u32 | section count u32
    table: per section, name (4 ascii bytes) | offset u64 | length u64 | crc32 u32
    payloads, in table order

Section payloads are flat u32/u64 little-endian arrays, described next to
each pack/unpack pair. Round-trips are bit-exact; no cross-tool
compatibility is promised beyond this module.

Engines and their sections:
    lz-rlbwt  META SMAP RBWF RBWR MARK FMAP GRID SRCS PRSE
    cdawg     META SMAP RBWF CDNO CDAR CDWL
    st        META SMAP RBWF RBWR CDNO CDAR CDWL
"""
from __future__ import annotations

import struct
import zlib

from repindex import lz77
from repindex.cdawg import Cdawg, CdawgArc, CdawgNode
from repindex.cdawgindex import CdawgRlbwtIndex
from repindex.cdawgst import SuffixTreeIndex
from repindex.intervalmap import build_interval_map
from repindex.lzindex import LzRlbwtIndex
from repindex.rangerep import Grid, GridPoint, SourceEntry, SourceSet
from repindex.rlbwt import RunLengthBwt

MAGIC = b"CRADS"
VERSION = 1

ENGINE_LZ = "lz-rlbwt"
ENGINE_CDAWG = "cdawg"
ENGINE_ST = "st"

_ENGINE_CODE = {ENGINE_LZ: b"LZRL", ENGINE_CDAWG: b"CDWG", ENGINE_ST: b"STRP"}
_CODE_ENGINE = {v: k for k, v in _ENGINE_CODE.items()}


class IndexFileError(ValueError):
    pass


def _pack_u32s(values) -> bytes:
    return struct.pack(f"<{len(values)}I", *values)


def _unpack_u32s(payload: bytes) -> list[int]:
    if len(payload) % 4:
        raise IndexFileError("section length not a multiple of 4")
    return list(struct.unpack(f"<{len(payload) // 4}I", payload))


def write_sections(sections: list[tuple[str, bytes]]) -> bytes:
    header = bytearray()
    header += MAGIC
    header += struct.pack("<II", VERSION, len(sections))
    table_size = sum(4 + 8 + 8 + 4 for _ in sections)
    offset = len(header) + table_size
    body = bytearray()
    for name, payload in sections:
        if len(name) != 4:
            raise IndexFileError(f"section name must be 4 bytes: {name!r}")
        header += name.encode("ascii")
        header += struct.pack("<QQI", offset, len(payload), zlib.crc32(payload))
        body += payload
        offset += len(payload)
    return bytes(header + body)


def read_sections(blob: bytes) -> dict[str, bytes]:
    if blob[:5] != MAGIC:
        raise IndexFileError("bad magic")
    version, count = struct.unpack_from("<II", blob, 5)
    if version != VERSION:
        raise IndexFileError(f"unsupported format version {version}")
    pos = 13
    out: dict[str, bytes] = {}
    for _ in range(count):
        name = blob[pos : pos + 4].decode("ascii")
        offset, length, crc = struct.unpack_from("<QQI", blob, pos + 4)
        pos += 24
        payload = blob[offset : offset + length]
        if len(payload) != length or zlib.crc32(payload) != crc:
            raise IndexFileError(f"checksum mismatch in section {name}")
        if name in out:
            raise IndexFileError(f"duplicate section {name}")
        out[name] = payload
    return out


# -- per-structure sections ---------------------------------------------------


def _pack_meta(engine: str, n: int, sigma: int) -> bytes:
    return _ENGINE_CODE[engine] + struct.pack("<II", n, sigma)


def _unpack_meta(payload: bytes) -> tuple[str, int, int]:
    engine = _CODE_ENGINE.get(payload[:4])
    if engine is None:
        raise IndexFileError("unknown engine code")
    n, sigma = struct.unpack_from("<II", payload, 4)
    return engine, n, sigma


def _pack_symbol_map(symbol_map: dict[int, int]) -> bytes:
    items = sorted(symbol_map.items())
    flat = [len(items)]
    for b, s in items:
        flat += [b, s]
    return _pack_u32s(flat)


def _unpack_symbol_map(payload: bytes) -> dict[int, int]:
    vals = _unpack_u32s(payload)
    count = vals[0]
    return {vals[1 + 2 * i]: vals[2 + 2 * i] for i in range(count)}


def _pack_rlbwt(x: RunLengthBwt) -> bytes:
    flat = [x.n, x.sigma, len(x.runs)]
    for c, i, j in x.runs:
        flat += [c, i, j]
    return _pack_u32s(flat)


def _unpack_rlbwt(payload: bytes) -> RunLengthBwt:
    vals = _unpack_u32s(payload)
    n, sigma, nruns = vals[0], vals[1], vals[2]
    bwt = [0] * (n + 1)
    pos = 3
    for _ in range(nruns):
        c, i, j = vals[pos : pos + 3]
        pos += 3
        for p in range(i, j + 1):
            bwt[p] = c
    from repindex.rlbwt import build_rlbwt

    return build_rlbwt(bwt, sigma=sigma)


def _pack_parse(parse: lz77.LzFactorization) -> bytes:
    flat = [parse.z]
    for f in parse.factors:
        flat += [f.start, f.length, f.source or 0, f.symbol if f.symbol is not None else 0]
    return _pack_u32s(flat)


def _unpack_parse(payload: bytes) -> lz77.LzFactorization:
    vals = _unpack_u32s(payload)
    z = vals[0]
    factors = []
    for i in range(z):
        start, length, source, symbol = vals[1 + 4 * i : 5 + 4 * i]
        if source == 0:
            factors.append(
                lz77.Factor(index=i + 1, start=start, length=length, source=None, symbol=symbol)
            )
        else:
            factors.append(
                lz77.Factor(index=i + 1, start=start, length=length, source=source, symbol=None)
            )
    return lz77.LzFactorization(factors=factors, z=z, boundaries=[f.start for f in factors])


def _pack_marks(marks: list[int]) -> bytes:
    return _pack_u32s([len(marks)] + marks)


def _unpack_marks(payload: bytes) -> list[int]:
    vals = _unpack_u32s(payload)
    return vals[1 : 1 + vals[0]]


def _pack_factor_map(ix: LzRlbwtIndex) -> bytes:
    flat = [len(ix.group_lengths)]
    intervals = _group_intervals(ix)
    for (sp, ep), lens in zip(intervals, ix.group_lengths):
        flat += [sp, ep, len(lens)] + lens
    return _pack_u32s(flat)


def _group_intervals(ix: LzRlbwtIndex) -> list[tuple[int, int]]:
    """Group intervals in label order, recomputed from the stored map."""
    pairs = []
    for sp in ix.factor_map.first_pos:
        for ep in sorted(ix.factor_map.ends_by_start[sp], reverse=True):
            pairs.append((sp, ep))
    return pairs


def _unpack_factor_map(payload: bytes, n: int):
    vals = _unpack_u32s(payload)
    groups = vals[0]
    pos = 1
    intervals = []
    group_lengths = []
    prefix = [0]
    for _ in range(groups):
        sp, ep, cnt = vals[pos : pos + 3]
        pos += 3
        lens = vals[pos : pos + cnt]
        pos += cnt
        intervals.append((sp, ep))
        group_lengths.append(list(lens))
        prefix.append(prefix[-1] + cnt)
    return build_interval_map(intervals, n), group_lengths, prefix


def _pack_grid(grid: Grid) -> bytes:
    flat = [grid.size]
    for p in grid.points:
        flat += [p.x, p.y, p.payload]
    return _pack_u32s(flat)


def _unpack_grid(payload: bytes) -> Grid:
    vals = _unpack_u32s(payload)
    pts = [
        GridPoint(x=vals[1 + 3 * i], y=vals[2 + 3 * i], payload=vals[3 + 3 * i])
        for i in range(vals[0])
    ]
    return Grid(pts)


def _pack_sources(src: SourceSet) -> bytes:
    flat = [src.size]
    for e in src.entries:
        flat += [e.src_start, e.src_end, e.factor_start]
    return _pack_u32s(flat)


def _unpack_sources(payload: bytes) -> SourceSet:
    vals = _unpack_u32s(payload)
    entries = [
        SourceEntry(
            src_start=vals[1 + 3 * i], src_end=vals[2 + 3 * i], factor_start=vals[3 + 3 * i]
        )
        for i in range(vals[0])
    ]
    return SourceSet(entries)


def _pack_cdawg_nodes(cd: Cdawg) -> bytes:
    flat = [len(cd.nodes), cd.source, cd.sink, cd.n, cd.sigma]
    for nd in cd.nodes:
        flat += [
            nd.length,
            nd.size,
            nd.first,
            nd.last,
            nd.rev_first,
            nd.rev_last,
            0 if nd.suffix_link is None else nd.suffix_link + 1,
        ]
    return _pack_u32s(flat)


def _pack_cdawg_arcs(cd: Cdawg) -> bytes:
    flat = [len(cd.arcs)]
    for a in cd.arcs:
        flat += [
            a.source,
            a.target,
            a.char,
            a.right,
            a.left,
            0 if a.pos is None else a.pos,
            a.child_delta_start,
            a.child_width,
        ]
    return _pack_u32s(flat)


def _pack_cdawg_weiner(cd: Cdawg) -> bytes:
    links = []
    for nd in cd.nodes:
        for c, target in sorted(nd.weiner_links.items()):
            links.append((nd.id, c, target))
    flat = [len(links)]
    for nid, c, target in links:
        flat += [nid, c, target]
    return _pack_u32s(flat)


def _unpack_cdawg(nodes_payload: bytes, arcs_payload: bytes, weiner_payload: bytes) -> Cdawg:
    nv = _unpack_u32s(nodes_payload)
    count, source, sink, n, sigma = nv[:5]
    nodes = []
    pos = 5
    for nid in range(count):
        length, size, first, last, rf, rl, slink = nv[pos : pos + 7]
        pos += 7
        nodes.append(
            CdawgNode(
                id=nid,
                length=length,
                size=size,
                first=first,
                last=last,
                rev_first=rf,
                rev_last=rl,
                suffix_link=None if slink == 0 else slink - 1,
            )
        )
    av = _unpack_u32s(arcs_payload)
    arcs = []
    arc_index = {}
    for aid in range(av[0]):
        src, tgt, char, right, left, posv, delta, width = av[1 + 8 * aid : 9 + 8 * aid]
        arc = CdawgArc(
            id=aid,
            source=src,
            target=tgt,
            char=char,
            right=right,
            left=left,
            pos=None if posv == 0 else posv,
            child_delta_start=delta,
            child_width=width,
        )
        arcs.append(arc)
        nodes[src].arc_ids.append(aid)
        arc_index[(src, char)] = aid
    wv = _unpack_u32s(weiner_payload)
    for i in range(wv[0]):
        nid, c, target = wv[1 + 3 * i : 4 + 3 * i]
        nodes[nid].weiner_links[c] = target
    for nd in nodes:
        nd.arc_ids.sort(key=lambda aid: arcs[aid].char)
    # rebuild the in-neighbor member blocks
    in_arcs: dict[int, list[int]] = {nd.id: [] for nd in nodes}
    for arc in arcs:
        in_arcs[arc.target].append(arc.id)
    for nd in nodes:
        if nd.id == source:
            continue
        for aid in sorted(in_arcs[nd.id], key=lambda aid: arcs[aid].left):
            nd.block_starts.append(arcs[aid].left + 1)
            nd.block_arc_ids.append(aid)
    return Cdawg(
        nodes=nodes,
        arcs=arcs,
        source=source,
        sink=sink,
        n=n,
        sigma=sigma,
        arc_index=arc_index,
    )


# -- engine-level save/load ---------------------------------------------------


def index_to_bytes(index, engine: str) -> bytes:
    sections: list[tuple[str, bytes]] = [
        ("META", _pack_meta(engine, index.n, index.sigma)),
        ("SMAP", _pack_symbol_map(index.symbol_map)),
        ("RBWF", _pack_rlbwt(index.rlbwt_fwd)),
    ]
    if engine == ENGINE_LZ:
        sections += [
            ("RBWR", _pack_rlbwt(index.rlbwt_rev)),
            ("MARK", _pack_marks(index.last_marks)),
            ("FMAP", _pack_factor_map(index)),
            ("GRID", _pack_grid(index.grid)),
            ("SRCS", _pack_sources(index.sources)),
            ("PRSE", _pack_parse(index.parse)),
        ]
    elif engine == ENGINE_CDAWG:
        sections += [
            ("CDNO", _pack_cdawg_nodes(index.cdawg)),
            ("CDAR", _pack_cdawg_arcs(index.cdawg)),
            ("CDWL", _pack_cdawg_weiner(index.cdawg)),
        ]
    elif engine == ENGINE_ST:
        sections += [
            ("RBWR", _pack_rlbwt(index.rlbwt_rev)),
            ("CDNO", _pack_cdawg_nodes(index.cdawg)),
            ("CDAR", _pack_cdawg_arcs(index.cdawg)),
            ("CDWL", _pack_cdawg_weiner(index.cdawg)),
        ]
    else:
        raise IndexFileError(f"unknown engine {engine}")
    return write_sections(sections)


def index_from_bytes(blob: bytes):
    """Returns (engine, index object)."""
    sections = read_sections(blob)
    engine, n, sigma = _unpack_meta(sections["META"])
    symbol_map = _unpack_symbol_map(sections["SMAP"])
    rlbwt_fwd = _unpack_rlbwt(sections["RBWF"])
    if engine == ENGINE_LZ:
        factor_map, group_lengths, prefix = _unpack_factor_map(sections["FMAP"], n)
        index = LzRlbwtIndex(
            n=n,
            sigma=sigma,
            rlbwt_fwd=rlbwt_fwd,
            rlbwt_rev=_unpack_rlbwt(sections["RBWR"]),
            last_marks=_unpack_marks(sections["MARK"]),
            factor_map=factor_map,
            group_string_prefix=prefix,
            group_lengths=group_lengths,
            grid=_unpack_grid(sections["GRID"]),
            sources=_unpack_sources(sections["SRCS"]),
            parse=_unpack_parse(sections["PRSE"]),
            symbol_map=symbol_map,
        )
    elif engine == ENGINE_CDAWG:
        index = CdawgRlbwtIndex(
            n=n,
            sigma=sigma,
            rlbwt_fwd=rlbwt_fwd,
            cdawg=_unpack_cdawg(sections["CDNO"], sections["CDAR"], sections["CDWL"]),
            symbol_map=symbol_map,
        )
    elif engine == ENGINE_ST:
        index = SuffixTreeIndex(
            n=n,
            sigma=sigma,
            rlbwt_fwd=rlbwt_fwd,
            rlbwt_rev=_unpack_rlbwt(sections["RBWR"]),
            cdawg=_unpack_cdawg(sections["CDNO"], sections["CDAR"], sections["CDWL"]),
            symbol_map=symbol_map,
        )
    else:  # pragma: no cover - read_sections already validated
        raise IndexFileError(f"unknown engine {engine}")
    return engine, index


def save_index(path, index, engine: str) -> None:
    with open(path, "wb") as fh:
        fh.write(index_to_bytes(index, engine))


def load_index(path):
    with open(path, "rb") as fh:
        return index_from_bytes(fh.read())
