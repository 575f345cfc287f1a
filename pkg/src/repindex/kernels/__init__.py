"""Hot kernels: suffix array and LCP construction.

Every index build starts from a suffix array, and on corpus-sized inputs
that construction dominates runtime. A Cython extension provides the fast
path; the numpy implementation in ``_fallback`` is used when the extension
was not built or when ``REPINDEX_PURE=1`` is set. Both backends expose the
same two functions over 0-based integer sequences:

    suffix_array(data) -> list[int]
    lcp_array(data, sa) -> list[int]   # lcp[i] = lcp(sa[i-1], sa[i]), lcp[0] = 0
"""
import os

from repindex.kernels import _fallback

if os.environ.get("REPINDEX_PURE") == "1":
    BACKEND = "python"
    suffix_array = _fallback.suffix_array
    lcp_array = _fallback.lcp_array
else:
    try:
        from repindex.kernels import _speedups

        BACKEND = "compiled"
        suffix_array = _speedups.suffix_array
        lcp_array = _speedups.lcp_array
    except ImportError:
        BACKEND = "python"
        suffix_array = _fallback.suffix_array
        lcp_array = _fallback.lcp_array

__all__ = ["suffix_array", "lcp_array", "BACKEND"]
