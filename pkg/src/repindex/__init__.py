"""Repetition-aware text indexes.

Composite structures over a terminator-ended integer text: run-length
encoded BWT, self-referential LZ77 parse, CDAWG, two pattern-locating
indexes built from them, and a CDAWG-backed suffix tree supporting
matching statistics and constant-space traversal.
"""

from repindex.textio import Text, ingest_plain, ingest_fasta, reverse_text, text_from_symbols

__version__ = "0.1.0"

__all__ = [
    "Text",
    "ingest_plain",
    "ingest_fasta",
    "reverse_text",
    "text_from_symbols",
    "__version__",
]
