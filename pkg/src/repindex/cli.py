"""Command-line surface: build and query indexes, compute measure curves,
run randomized self-tests.

Exit codes: 0 success, 1 usage error, 2 data/input error, 3 selftest failure.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter

from repindex import cdawgindex, cdawgst, lz77, lzindex, measures, oracles, serialize
from repindex.textio import Text, TextError, ingest_fasta, ingest_plain, text_from_symbols

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_SELFTEST = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _read_input(path: str, fasta: bool) -> Text:
    with open(path, "rb") as fh:
        raw = fh.read()
    return ingest_fasta(raw) if fasta else ingest_plain(raw)


def _map_pattern(raw: bytes, symbol_map: dict[int, int]) -> list[int] | None:
    out = []
    for b in raw:
        s = symbol_map.get(b)
        if s is None:
            return None
        out.append(s)
    return out


def _iter_patterns(args) -> list[bytes]:
    if args.pattern is not None:
        return [args.pattern.encode("utf-8")]
    with open(args.patterns, "rb") as fh:
        return [line.rstrip(b"\r\n") for line in fh if line.rstrip(b"\r\n")]


def _load(args, expect: str | None = None):
    engine, ix = serialize.load_index(args.index)
    if expect and engine != expect:
        raise serialize.IndexFileError(f"index engine is {engine}, need {expect}")
    if args.engine and args.engine != engine:
        raise serialize.IndexFileError(f"index engine is {engine}, not {args.engine}")
    return engine, ix


# -- subcommands ----------------------------------------------------------------


def cmd_build(args) -> int:
    t = _read_input(args.input, args.fasta)
    if args.engine == serialize.ENGINE_LZ:
        ix = lzindex.build_lz_index(t)
    elif args.engine == serialize.ENGINE_CDAWG:
        ix = cdawgindex.build_cdawg_index(t)
    else:
        ix = cdawgst.build_st_index(t)
    serialize.save_index(args.index, ix, args.engine)
    return EXIT_OK


def cmd_count(args) -> int:
    engine, ix = _load(args)
    for raw in _iter_patterns(args):
        pat = _map_pattern(raw, ix.symbol_map)
        if pat is None:
            print("ERR\tpattern contains unmapped bytes")
            continue
        if args.format == "json-lines":
            print(json.dumps({"pattern": raw.decode("utf-8", "replace"), "count": ix.count(pat)}))
        else:
            print(ix.count(pat))
    return EXIT_OK


def cmd_locate(args) -> int:
    engine, ix = _load(args)
    for raw in _iter_patterns(args):
        pat = _map_pattern(raw, ix.symbol_map)
        if pat is None:
            print("ERR\tpattern contains unmapped bytes")
            continue
        if engine == serialize.ENGINE_LZ:
            prim, sec = ix.locate(pat)
            if args.tags:
                items = sorted([(p, "p") for p in prim] + [(s, "s") for s in sec])
                if args.format == "json-lines":
                    print(json.dumps({"pattern": raw.decode("utf-8", "replace"),
                                      "occurrences": [{"pos": p, "kind": k} for p, k in items]}))
                else:
                    print("\t".join(f"{p}:{k}" for p, k in items))
                continue
            positions = sorted(prim + sec)
        else:
            positions = ix.locate(pat)
        if args.format == "json-lines":
            print(json.dumps({"pattern": raw.decode("utf-8", "replace"), "positions": positions}))
        else:
            print("\t".join(str(p) for p in positions))
    return EXIT_OK


def cmd_ms(args) -> int:
    engine, ix = _load(args, expect=serialize.ENGINE_ST)
    for qi, raw in enumerate(_iter_patterns(args), start=1):
        pat = _map_pattern(raw, ix.symbol_map)
        if pat is None:
            print("ERR\tquery contains unmapped bytes")
            continue
        ms = ix.matching_statistics(pat)
        if args.format == "json-lines":
            print(json.dumps({"query": qi, "ms": ms}))
        else:
            for pos, val in enumerate(ms, start=1):
                print(f"{qi}\t{pos}\t{val}")
    return EXIT_OK


def cmd_traverse(args) -> int:
    engine, ix = _load(args, expect=serialize.ENGINE_ST)
    if args.stats:
        hist = Counter(node.depth for node in ix.traverse())
        print("depth\tnodes")
        for depth in sorted(hist):
            print(f"{depth}\t{hist[depth]}")
        return EXIT_OK
    print("order\tclass\tdepth")
    for i, node in enumerate(ix.traverse(), start=1):
        print(f"{i}\t{node.node}\t{node.depth}")
    return EXIT_OK


def cmd_measures(args) -> int:
    with open(args.input, "rb") as fh:
        raw = fh.read()
    if args.fasta:
        full = ingest_fasta(raw)
        payload = full.to_bytes()
    else:
        payload = raw
    if not payload:
        raise TextError("empty input")
    if "," in args.samples:
        lengths = [int(x) for x in args.samples.split(",") if x]
    else:
        count = int(args.samples)
        lengths = sorted({max(1, round(len(payload) * i / count)) for i in range(1, count + 1)})
    rows = []
    for L in lengths:
        if L > len(payload):
            raise TextError(f"sample length {L} exceeds payload length {len(payload)}")
        m = measures.compute_measures(ingest_plain(payload[:L]))
        rows.append(
            [m.n, m.n_maximal_repeats, m.e, m.e_left, m.r, m.r_rev, m.z, m.z_rev]
        )
    print("prefixLength,nMaximalRepeats,e,eLeft,r,rRev,z,zRev")
    if args.normalize:
        base = rows[0]
        for row in rows:
            print(",".join([str(row[0])] + [f"{v / b:.6f}" for v, b in zip(row[1:], base[1:])]))
    else:
        for row in rows:
            print(",".join(str(v) for v in row))
    return EXIT_OK


# -- selftest --------------------------------------------------------------------


def _selftest_case(rng: random.Random, n: int, sigma: int) -> list[str]:
    failures: list[str] = []
    sym = [rng.randint(1, sigma) for _ in range(rng.randint(1, n))]
    t = text_from_symbols(sym)
    bundle = oracles.build_suffix_array_bundle(t)
    st = oracles.build_oracle_suffix_tree(t, bundle)
    bwt = st.bwt

    from repindex.rlbwt import build_rlbwt

    x = build_rlbwt(bwt, sigma=t.sigma)
    for _ in range(20):
        c = rng.randint(0, t.sigma)
        i = rng.randint(0, t.n)
        want = sum(1 for p in range(1, i + 1) if bwt[p] == c)
        if x.rank(c, i) != want:
            failures.append(f"rank({c},{i}) mismatch")
    parse = lz77.factorize(t, bundle)
    if parse.decompress(t.n) != list(t.data):
        failures.append("lz77 decompression mismatch")

    lz_ix = lzindex.build_lz_index(t)
    cd_ix = cdawgindex.build_cdawg_index(t, st)
    st_ix = cdawgst.build_st_index(t, st)
    for _ in range(6):
        m = rng.randint(1, min(10, t.n))
        if rng.random() < 0.5 and t.n - m >= 1:
            s0 = rng.randint(1, t.n - m)
            pat = list(t.data[s0 : s0 + m])
        else:
            pat = [rng.randint(1, t.sigma) for _ in range(m)]
        want = oracles.naive_occurrences(t, pat)
        prim, sec = lz_ix.locate(pat)
        if sorted(prim + sec) != want:
            failures.append(f"lz locate mismatch on {pat}")
        if cd_ix.locate(pat) != want:
            failures.append(f"cdawg locate mismatch on {pat}")
        if lz_ix.count(pat) != len(want):
            failures.append(f"count mismatch on {pat}")
        ms = st_ix.matching_statistics(pat)
        if ms != oracles.naive_matching_statistics(t, pat):
            failures.append(f"matching statistics mismatch on {pat}")

    if t.n >= 2:
        rep = oracles.naive_measures(t) if t.n <= 160 else measures.compute_measures(t)
        if not (oracles.theorem1_lower_bound(t, st) <= rep.r <= oracles.f_r_count(st)):
            failures.append("run-count bounds violated")
        if rep.z > rep.e:
            failures.append("factor count exceeds extension count")
        import math

        if cd_ix.cdawg.arc_count() < math.log2(t.n) / 2:
            failures.append("arc count below log2(n)/2")
    return failures


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    all_failures: list[str] = []
    for it in range(args.iterations):
        case_seed = rng.randrange(1 << 30)
        case_rng = random.Random(case_seed)
        failures = _selftest_case(case_rng, args.n, args.sigma)
        for f in failures:
            all_failures.append(f"iteration {it} (seed {case_seed}): {f}")
    if all_failures:
        for f in all_failures:
            print(f"FAIL\t{f}")
        return EXIT_SELFTEST
    print(f"OK\t{args.iterations} iterations")
    return EXIT_OK


# -- argument wiring --------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="repindex", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common_input(sp):
        sp.add_argument("--input", required=True, help="input text file")
        sp.add_argument("--fasta", action="store_true", help="parse input as FASTA")

    def add_pattern_args(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--pattern", help="single pattern string")
        g.add_argument("--patterns", help="file with one pattern per line")
        sp.add_argument("--format", choices=["tsv", "json-lines"], default="tsv")

    sp = sub.add_parser("build", help="build an index file")
    add_common_input(sp)
    sp.add_argument("--engine", choices=[serialize.ENGINE_LZ, serialize.ENGINE_CDAWG, serialize.ENGINE_ST], required=True)
    sp.add_argument("--index", required=True, help="output index path")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("count", help="count pattern occurrences")
    sp.add_argument("--index", required=True)
    sp.add_argument("--engine", help="assert the index uses this engine")
    add_pattern_args(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("locate", help="report occurrence positions")
    sp.add_argument("--index", required=True)
    sp.add_argument("--engine", help="assert the index uses this engine")
    sp.add_argument("--tags", action="store_true", help="tag primary/secondary (lz-rlbwt)")
    add_pattern_args(sp)
    sp.set_defaults(func=cmd_locate)

    sp = sub.add_parser("ms", help="matching statistics of queries (st engine)")
    sp.add_argument("--index", required=True)
    sp.add_argument("--engine", help="assert the index uses this engine")
    add_pattern_args(sp)
    sp.set_defaults(func=cmd_ms)

    sp = sub.add_parser("traverse", help="stream the suffix tree nodes (st engine)")
    sp.add_argument("--index", required=True)
    sp.add_argument("--engine", help="assert the index uses this engine")
    sp.add_argument("--stats", action="store_true", help="emit a depth histogram instead")
    sp.set_defaults(func=cmd_traverse)

    sp = sub.add_parser("measures", help="repetition measures over text prefixes (CSV)")
    add_common_input(sp)
    sp.add_argument("--samples", default="1", help="sample count, or comma-separated prefix lengths")
    sp.add_argument("--normalize", action="store_true", help="divide each column by its first sample")
    sp.set_defaults(func=cmd_measures)

    sp = sub.add_parser("selftest", help="randomized oracle-equivalence checks")
    sp.add_argument("--n", type=int, default=64, help="maximum text length")
    sp.add_argument("--sigma", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--iterations", type=int, default=25)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TextError, serialize.IndexFileError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
