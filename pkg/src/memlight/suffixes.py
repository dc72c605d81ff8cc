"""Plain suffix-array toolkit: construction, match pointers, and the brute-force MEM oracle.

Everything here works on the uncompressed text and serves as ground truth
for the index-backed algorithms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .sequence import MemRecord, Pattern, Text


def _suffix_sort(ext: np.ndarray) -> np.ndarray:
    """Suffix array of an int sequence by prefix doubling, O(n log^2 n) worst case.

    The input must end in a unique smallest value (the sentinel), which makes
    all suffixes distinct and guarantees termination.
    """
    n = ext.size
    rank = ext.astype(np.int64)
    k = 1
    while True:
        key2 = np.full(n, -1, dtype=np.int64)
        if k < n:
            key2[:-k] = rank[k:]
        order = np.lexsort((key2, rank))
        r1 = rank[order]
        r2 = key2[order]
        changed = np.empty(n, dtype=bool)
        changed[0] = False
        changed[1:] = (r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1])
        new = np.cumsum(changed)
        if new[-1] == n - 1:
            return order.astype(np.int64)
        rank = np.empty(n, dtype=np.int64)
        rank[order] = new
        k *= 2


def _common_prefix_len(a: bytes, b: bytes) -> int:
    k = min(len(a), len(b))
    if a[:k] == b[:k]:
        return k
    xa = np.frombuffer(a, dtype=np.uint8, count=k)
    xb = np.frombuffer(b, dtype=np.uint8, count=k)
    return int(np.argmax(xa != xb))


class SuffixArray:
    """Suffix array of a text plus sentinel, with lazy inverse and LCP arrays.

    Suffix order includes the empty sentinel suffix at rank 0.  The sentinel
    is a value below every alphabet code and takes no part in matching.
    """

    def __init__(self, text: Text, sa: np.ndarray | None = None):
        self.text = text
        ext = np.empty(text.n + 1, dtype=np.int32)
        ext[: text.n] = text.data
        ext[text.n] = -1
        self._ext = ext
        if sa is None:
            sa = _suffix_sort(ext)
        else:
            sa = np.ascontiguousarray(sa, dtype=np.int64)
            if sa.size != text.n + 1:
                raise ValueError("suffix array length does not match the text")
        self.sa = sa
        self.sa.setflags(write=False)
        self._tb = text.code_bytes

    @property
    def n(self) -> int:
        return self.text.n

    @cached_property
    def isa(self) -> np.ndarray:
        inv = np.empty_like(self.sa)
        inv[self.sa] = np.arange(self.sa.size)
        inv.setflags(write=False)
        return inv

    @cached_property
    def lcp(self) -> np.ndarray:
        """lcp[k] = common prefix length of the suffixes ranked k-1 and k; lcp[0] = 0."""
        ext = self._ext.tolist()
        sa = self.sa.tolist()
        isa = self.isa.tolist()
        n = len(ext)
        out = np.zeros(n, dtype=np.int64)
        k = 0
        for i in range(n):
            r = isa[i]
            if r == 0:
                k = 0
                continue
            j = sa[r - 1]
            while i + k < n and j + k < n and ext[i + k] == ext[j + k]:
                k += 1
            out[r] = k
            if k:
                k -= 1
        out.setflags(write=False)
        return out

    # -- binary searches over suffix order ---------------------------------

    def _prefix_range(self, q: bytes) -> tuple[int, int]:
        """Rows whose suffix starts with q, as a half-open range."""
        sa, tb, nq = self.sa, self._tb, len(q)
        lo, hi = 0, sa.size
        while lo < hi:
            mid = (lo + hi) // 2
            p = sa[mid]
            if tb[p : p + nq] < q:
                lo = mid + 1
            else:
                hi = mid
        first = lo
        hi = sa.size
        while lo < hi:
            mid = (lo + hi) // 2
            p = sa[mid]
            if tb[p : p + nq] <= q:
                lo = mid + 1
            else:
                hi = mid
        return first, lo

    def longest_prefix_match(self, q: bytes) -> int:
        """Length of the longest prefix of q occurring anywhere in the text."""
        sa, tb, nq = self.sa, self._tb, len(q)
        lo, hi = 0, sa.size
        while lo < hi:
            mid = (lo + hi) // 2
            p = sa[mid]
            if tb[p : p + nq] < q:
                lo = mid + 1
            else:
                hi = mid
        best = 0
        if lo < sa.size:
            p = sa[lo]
            best = _common_prefix_len(tb[p : p + nq], q)
        if lo > 0:
            p = sa[lo - 1]
            best = max(best, _common_prefix_len(tb[p : p + nq], q))
        return best

    def best_match_position(self, q: bytes, tie: str = "min") -> tuple[int, int]:
        """(match length, text position) of a suffix maximizing the match with q.

        Ties between equally good positions are broken by smallest or largest
        text position, per `tie`.
        """
        best = self.longest_prefix_match(q)
        if best == 0:
            raise ValueError("no symbol of the query occurs in the text")
        lo, hi = self._prefix_range(q[:best])
        block = self.sa[lo:hi]
        pos = int(block.min() if tie == "min" else block.max())
        return best, pos

    def occurrences(self, query) -> list[int]:
        """All starting positions of the query, ascending."""
        q = query.tobytes() if isinstance(query, np.ndarray) else bytes(query)
        if len(q) == 0:
            raise ValueError("empty query")
        lo, hi = self._prefix_range(q)
        return sorted(int(p) for p in self.sa[lo:hi])


def build_suffix_structures(text: Text) -> SuffixArray:
    return SuffixArray(text)


@dataclass(frozen=True)
class MatchPointers:
    """Per pattern position, a text position achieving the best extension.

    forward[i] starts a text suffix whose common prefix with the pattern
    suffix at i is maximal; backward[i] ends (inclusive) a text prefix whose
    common suffix with the pattern prefix through i is maximal.
    """

    forward: np.ndarray
    backward: np.ndarray

    def __post_init__(self):
        self.forward.setflags(write=False)
        self.backward.setflags(write=False)


def _check_symbols_occur(pattern: Pattern, text: Text) -> None:
    counts = np.bincount(text.data, minlength=text.alphabet.size)
    if pattern.m and not counts[np.unique(pattern.data)].all():
        raise ValueError(
            "a pattern symbol does not occur in the text; split the pattern first"
        )


def compute_match_pointers(
    pattern: Pattern, text: Text, sa_fwd: SuffixArray, sa_rev: SuffixArray
) -> MatchPointers:
    """Best forward and backward match positions for every pattern offset.

    The backward side is the forward computation applied to the reversed
    pattern and reversed text, with positions mirrored back.  Ties go to the
    smallest text position on both sides.
    """
    if pattern.m == 0:
        raise ValueError("empty pattern")
    _check_symbols_occur(pattern, text)
    m, n = pattern.m, text.n
    pb = pattern.code_bytes
    forward = np.empty(m, dtype=np.int64)
    for i in range(m):
        _, forward[i] = sa_fwd.best_match_position(pb[i:], tie="min")
    # smallest mirrored position = largest position in the reversed text
    rb = pb[::-1]
    backward = np.empty(m, dtype=np.int64)
    for i in range(m):
        _, p = sa_rev.best_match_position(rb[i:], tie="max")
        backward[m - 1 - i] = n - 1 - p
    return MatchPointers(forward, backward)


def brute_force_mems(
    pattern: Pattern, text: Text, min_len: int = 1, sa: SuffixArray | None = None
) -> list[MemRecord]:
    """Oracle MEM finder from per-position longest-match lengths.

    A match starting at i is maximal iff its end is strictly past the end of
    the match starting at i-1 (or i is 0).  Independent of the pointer- and
    index-based algorithms it is used to check.
    """
    if min_len < 1:
        raise ValueError("minimum length must be at least 1")
    _check_symbols_occur(pattern, text)
    if sa is None:
        sa = build_suffix_structures(text)
    pb = pattern.code_bytes
    m = pattern.m
    lengths = [sa.longest_prefix_match(pb[i:]) for i in range(m)]
    out = []
    for i in range(m):
        if i > 0 and i + lengths[i] <= (i - 1) + lengths[i - 1]:
            continue
        if lengths[i] >= min_len:
            occ = tuple(sa.occurrences(pb[i : i + lengths[i]]))
            out.append(MemRecord(i, lengths[i], occurrences=occ))
    return out


def count_occurrences(query, text: Text, sa: SuffixArray | None = None) -> tuple[int, list[int]]:
    """Occurrence count and 0-based positions of a symbol sequence in the text.

    Accepts raw bytes (encoded with the text's alphabet) or an encoded code
    array; sequences containing foreign bytes simply never occur.
    """
    if sa is None:
        sa = build_suffix_structures(text)
    if isinstance(query, (bytes, bytearray)):
        if len(query) == 0:
            raise ValueError("empty query")
        try:
            codes = text.alphabet.encode(bytes(query))
        except ValueError:
            return 0, []
    else:
        codes = np.asarray(query, dtype=np.uint8)
        if codes.size == 0:
            raise ValueError("empty query")
    positions = sa.occurrences(codes)
    return len(positions), positions
