"""MEM finders: full forward-backward scans and length-thresholded variants.

Two families share the same output contract.  The pointer+LCE family needs
match pointers and an extension backend; the FM family needs only a pair of
backward-search indexes (text and reversed text) and is fully deterministic.
All results are in pattern coordinates, 0-based, left to right.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fm import FmIndex
from .sequence import Alphabet, MemRecord, Pattern, QueryStats
from .suffixes import MatchPointers


@dataclass(frozen=True)
class FinderConfig:
    """Query-time options, mostly a CLI-to-library bridge."""

    min_len: int = 1
    backend: str = "fm"  # "lce" or "fm"
    report_intervals: bool = False
    locate: bool = False

    def __post_init__(self):
        if self.min_len < 1:
            raise ValueError("minimum MEM length must be at least 1")
        if self.backend not in ("lce", "fm"):
            raise ValueError(f"unknown backend: {self.backend}")


@dataclass
class FinderResult:
    """MEMs sorted by start (starts and ends both strictly increase) plus work counters."""

    mems: list[MemRecord] = field(default_factory=list)
    stats: QueryStats = field(default_factory=QueryStats)

    @property
    def spans(self) -> list[tuple[int, int]]:
        return [mem.span for mem in self.mems]


def find_all_mems(pattern: Pattern, pointers: MatchPointers, lce) -> FinderResult:
    """Every MEM, by alternating one forward and one backward extension per MEM.

    The first MEM starts at offset 0; each reported end determines the next
    start because maximal matches never nest.
    """
    result = FinderResult()
    m = pattern.m
    if m == 0:
        return result
    stats = result.stats
    fwd, bwd = pointers.forward, pointers.backward
    i = 0
    while True:
        stats.loop_iterations += 1
        stats.lcp_queries += 1
        length = lce.lce_forward(i, int(fwd[i]))
        result.mems.append(MemRecord(i, length))
        end = i + length - 1
        if end == m - 1:
            break
        stats.lcs_queries += 1
        back = lce.lce_backward(end + 1, int(bwd[end + 1]))
        i = end + 2 - back
    return result


def find_long_mems_lce(pattern: Pattern, pointers: MatchPointers, lce,
                       min_len: int) -> FinderResult:
    """Exactly the MEMs of length at least min_len, skipping short ones.

    Probes the backward extension at the end of the current length-min_len
    window: a long-enough extension pins a reportable MEM at the window
    start, otherwise the window start can jump past every position that
    cannot begin a long MEM.
    """
    if min_len < 1:
        raise ValueError("minimum length must be at least 1")
    result = FinderResult()
    m = pattern.m
    stats = result.stats
    fwd, bwd = pointers.forward, pointers.backward
    i = 0
    while i <= m - min_len:
        stats.loop_iterations += 1
        window_end = i + min_len - 1
        stats.lcs_queries += 1
        b = lce.lce_backward(window_end, int(bwd[window_end]))
        if b >= min_len:
            stats.lcp_queries += 1
            length = lce.lce_forward(i, int(fwd[i]))
            result.mems.append(MemRecord(i, length))
            if i + length == m:
                break
            stats.lcs_queries += 1
            back = lce.lce_backward(i + length, int(bwd[i + length]))
            i = i + length + 1 - back
        else:
            i += min_len - b
    return result


def _fm_codes(pattern: Pattern) -> tuple[list[int], list[int]]:
    codes = pattern.data.tolist()
    return codes, codes[::-1]


def _check_paired(fwd_index: FmIndex, rev_index: FmIndex) -> None:
    if fwd_index.alphabet != rev_index.alphabet:
        raise ValueError("forward and reverse indexes use different alphabets")


def find_long_mems_fm(pattern: Pattern, fwd_index: FmIndex, rev_index: FmIndex,
                      min_len: int, report_intervals: bool = False) -> FinderResult:
    """Deterministic thresholded finder using only backward stepping.

    Same output as find_long_mems_lce.  The backward probe of the current
    window comes from the text index; the forward extension of a confirmed
    MEM comes from searching the reversed pattern in the reversed-text
    index, whose final interval (rows of the reversed MEM) is attached to
    the record when requested.
    """
    if min_len < 1:
        raise ValueError("minimum length must be at least 1")
    _check_paired(fwd_index, rev_index)
    result = FinderResult()
    stats = result.stats
    m = pattern.m
    codes, rcodes = _fm_codes(pattern)
    i = 0
    while i <= m - min_len:
        stats.loop_iterations += 1
        j = i + min_len - 1
        stats.lcs_queries += 1
        suffix_len, _ = fwd_index.backward_search_prefix(codes, j + 1, stats)
        k = j - suffix_len + 1
        if k > i:
            i = k
        else:
            stats.lcp_queries += 1
            length, iv = rev_index.backward_search_prefix(rcodes, m - i, stats)
            j = i + length - 1
            result.mems.append(
                MemRecord(i, length, bwt_interval=iv if report_intervals else None)
            )
            if j < m - 1:
                stats.lcs_queries += 1
                back, _ = fwd_index.backward_search_prefix(codes, j + 2, stats)
                i = j - back + 2
            else:
                break
    return result


def find_all_mems_fm(pattern: Pattern, fwd_index: FmIndex, rev_index: FmIndex,
                     report_intervals: bool = False) -> FinderResult:
    """Every MEM via alternating full backward searches; the step-count baseline.

    Pattern symbols absent from the text extend nothing and are skipped one
    position at a time, so unsplit patterns degrade gracefully.
    """
    _check_paired(fwd_index, rev_index)
    result = FinderResult()
    stats = result.stats
    m = pattern.m
    codes, rcodes = _fm_codes(pattern)
    i = 0
    while i < m:
        stats.loop_iterations += 1
        stats.lcp_queries += 1
        length, iv = rev_index.backward_search_prefix(rcodes, m - i, stats)
        if length == 0:
            i += 1
            continue
        j = i + length - 1
        result.mems.append(
            MemRecord(i, length, bwt_interval=iv if report_intervals else None)
        )
        if j == m - 1:
            break
        stats.lcs_queries += 1
        back, _ = fwd_index.backward_search_prefix(codes, j + 2, stats)
        i = j - back + 2
    return result


def longest_common_substring(pattern: Pattern, fwd_index: FmIndex,
                             rev_index: FmIndex) -> FinderResult:
    """One maximum-length MEM (leftmost among maxima), or none if nothing matches.

    Runs the thresholded loop with the threshold held one above the best
    length found so far, so every confirmed window strictly improves on the
    current best and everything shorter is skipped wholesale.
    """
    _check_paired(fwd_index, rev_index)
    result = FinderResult()
    stats = result.stats
    m = pattern.m
    codes, rcodes = _fm_codes(pattern)
    best: MemRecord | None = None
    min_len = 1
    i = 0
    while i <= m - min_len:
        stats.loop_iterations += 1
        j = i + min_len - 1
        stats.lcs_queries += 1
        suffix_len, _ = fwd_index.backward_search_prefix(codes, j + 1, stats)
        k = j - suffix_len + 1
        if k > i:
            i = k
        else:
            stats.lcp_queries += 1
            length, iv = rev_index.backward_search_prefix(rcodes, m - i, stats)
            if best is None or length > best.length:
                best = MemRecord(i, length, bwt_interval=iv)
            min_len = best.length + 1
            j = i + length - 1
            if j < m - 1:
                stats.lcs_queries += 1
                back, _ = fwd_index.backward_search_prefix(codes, j + 2, stats)
                i = j - back + 2
            else:
                break
    if best is not None:
        result.mems.append(best)
    return result


def find_in_raw(raw_pattern: bytes, alphabet: Alphabet, finder) -> FinderResult:
    """Split a raw pattern on foreign bytes and run a finder per piece.

    `finder` maps a Pattern to a FinderResult; starts are shifted back into
    original-pattern coordinates and work counters are summed.
    """
    from .sequence import split_by_foreign_chars

    merged = FinderResult()
    for offset, sub in split_by_foreign_chars(raw_pattern, alphabet):
        part = finder(sub)
        for mem in part.mems:
            merged.mems.append(
                MemRecord(mem.start + offset, mem.length,
                          bwt_interval=mem.bwt_interval,
                          occurrences=mem.occurrences)
            )
        merged.stats.backward_steps += part.stats.backward_steps
        merged.stats.lcp_queries += part.stats.lcp_queries
        merged.stats.lcs_queries += part.stats.lcs_queries
        merged.stats.loop_iterations += part.stats.loop_iterations
    return merged
