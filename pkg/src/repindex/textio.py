"""Input handling: alphabet remapping and terminator-ended texts.

All indexes in this package work on a ``Text``: a sequence of integer
symbols in ``[1..sigma]`` closed by a single terminator symbol ``0``,
addressed with 1-based positions. ``data[0]`` is a padding cell so that
``data[i]`` is the i-th symbol for ``i`` in ``[1..n]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

TERMINATOR = 0

# raw byte value reserved to stand for the terminator in byte inputs
SENTINEL_BYTE = 0


class TextError(ValueError):
    """Raised for inputs that cannot be turned into a valid Text."""


@dataclass(frozen=True)
class Text:
    """Remapped text ``S·#`` with 1-based symbol access.

    data[1..n-1] is the payload over [1..sigma], data[n] == 0 is the
    terminator; data[0] is unused padding.
    """

    data: tuple[int, ...]
    n: int
    sigma: int
    symbol_map: dict[int, int] = field(default_factory=dict)  # raw byte -> symbol

    def __post_init__(self):
        if self.n < 1 or len(self.data) != self.n + 1:
            raise TextError("length mismatch between data and n")
        if self.data[self.n] != TERMINATOR:
            raise TextError("text must end with the terminator symbol 0")
        seen = set()
        for i in range(1, self.n):
            s = self.data[i]
            if not 1 <= s <= self.sigma:
                raise TextError(f"symbol {s} at position {i} outside [1..{self.sigma}]")
            seen.add(s)
        if len(seen) != self.sigma:
            raise TextError("every symbol in [1..sigma] must occur at least once")

    @property
    def payload(self) -> tuple[int, ...]:
        """Symbols without the terminator."""
        return self.data[1 : self.n]

    def slice(self, start: int, end: int) -> tuple[int, ...]:
        """Symbols of positions [start..end], 1-based inclusive."""
        return self.data[start : end + 1]

    def to_bytes(self) -> bytes:
        """Map the payload back to the original bytes."""
        inverse = {s: b for b, s in self.symbol_map.items()}
        return bytes(inverse[s] for s in self.payload)


def ingest_plain(raw: bytes) -> Text:
    """Build a Text from raw bytes, remapping distinct bytes to [1..sigma].

    The remap preserves byte order (b1 < b2 implies symbol(b1) < symbol(b2)).
    Inputs containing the reserved sentinel byte are rejected.
    """
    if len(raw) == 0:
        raise TextError("empty input")
    if SENTINEL_BYTE in raw:
        raise TextError("input contains the reserved terminator sentinel byte 0x00")
    alphabet = sorted(set(raw))
    symbol_map = {b: i + 1 for i, b in enumerate(alphabet)}
    data = (0,) + tuple(symbol_map[b] for b in raw) + (TERMINATOR,)
    return Text(data=data, n=len(raw) + 1, sigma=len(alphabet), symbol_map=symbol_map)


def ingest_fasta(raw: bytes) -> Text:
    """Concatenate all FASTA record sequences in file order, then remap.

    Headers ('>' lines) and newlines are stripped; sequence data occurring
    before the first header is rejected.
    """
    if len(raw) == 0:
        raise TextError("empty input")
    seen_header = False
    parts: list[bytes] = []
    for line in raw.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith(b">"):
            seen_header = True
            continue
        if not seen_header:
            raise TextError("sequence data before first FASTA header")
        parts.append(line)
    joined = b"".join(parts)
    if not joined:
        raise TextError("FASTA input contains no sequence data")
    return ingest_plain(joined)


def text_from_symbols(symbols: list[int] | tuple[int, ...]) -> Text:
    """Build a Text directly from payload symbols, compacting to [1..sigma].

    Convenience for tests and generated inputs; the symbol map records the
    identity on the compacted values.
    """
    if len(symbols) == 0:
        raise TextError("empty input")
    if TERMINATOR in symbols:
        raise TextError("payload may not contain the terminator symbol 0")
    alphabet = sorted(set(symbols))
    remap = {s: i + 1 for i, s in enumerate(alphabet)}
    data = (0,) + tuple(remap[s] for s in symbols) + (TERMINATOR,)
    return Text(
        data=data,
        n=len(symbols) + 1,
        sigma=len(alphabet),
        symbol_map={s: remap[s] for s in alphabet},
    )


def reverse_text(t: Text) -> Text:
    """Return rev(S)·# for t = S·#; sigma and the symbol map carry over."""
    data = (0,) + tuple(reversed(t.payload)) + (TERMINATOR,)
    return Text(data=data, n=t.n, sigma=t.sigma, symbol_map=dict(t.symbol_map))
