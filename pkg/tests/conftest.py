"""Shared fixtures: hand-checked instances and the randomized case machinery."""

from dataclasses import dataclass

import numpy as np
import pytest

from memlight import (FmIndex, MatchPointers, NaiveLce, Pattern, SuffixArray,
                      Text, build_fm, build_suffix_structures,
                      compute_match_pointers)

# A 12-symbol instance small enough to check every value by hand.
DEMO_TEXT = b"GATTAGATACAT"
DEMO_PATTERN = b"TACATAGATTAG"
DEMO_FORWARD_1BASED = [8, 9, 10, 7, 4, 5, 1, 2, 3, 4, 5, 1]
DEMO_BACKWARD_1BASED = [3, 5, 10, 11, 12, 9, 6, 7, 8, 4, 5, 6]
DEMO_ALL_SPANS_1BASED = [(1, 5), (4, 6), (5, 9), (7, 12)]
DEMO_LONG_SPANS_1BASED = [(1, 5), (5, 9), (7, 12)]

# Every proper prefix of the pattern occurs in this text, each time followed
# by a different continuation, so the whole pattern is the only MEM even
# though no backward pointer step looks redundant.
ADVERSARIAL_TEXT = b"GCGAAGATAGATTCGATTAGGATTACCGATTACAAGATTACAT"
ADVERSARIAL_PATTERN = b"GATTACAT"
ADVERSARIAL_BACKWARD_1BASED = [1, 4, 8, 13, 19, 26, 34, 43]

# A 550-symbol random DNA string whose middle section was copied out and
# noised at rate 1/4: two informative matches survive among short noise.
NOISY_TEXT = b"".join([
    b"TCTTAGCTGACGTTCGGGGCGGGTTAGGCCATCTTCTATAGATTTCTCAG",
    b"AGACATCCTAGCCGTGCTGAAGTTGTCACTCGCGGCCGTGTTTCCTAACG",
    b"CCACCTGATAGCGTGTTCCAAGCACTTGAGTGTCGGGCTGTAGGGGCTCA",
    b"CTCTGCGCAGGATCACGGCTGTTTGTACCTATATCGTTATCGTACTGAAT",
    b"AAGTAGAATATCCAAACTTTCAGATTCCGGTTTGGCTGCCAAAACTAGGT",
    b"GGGATGTGATGCGCGGCGAATTGTGATCTCGCATTGTATATTATCAATCT",
    b"CAGCTTAGCTTGACTTGCACAAAATGAACCCTACGGCGGTGGAGGATTAC",
    b"GACCGGAAGCGTCCTGCCTCGGAAAGCGTCCTCCTCAGAAGACGCGCGTG",
    b"AGGTCCGTCTTGTGGTCGCGACACAATACGCGACACGAACGACTGGTACC",
    b"GGATCAAGTTCTCGATAGGCTGAATTGGCTCTTGTATACATGATGATTGT",
    b"GGAATCTATACTGTGAACTTATAGGCAAATCCTATGCCACTACATTACGG",
])
NOISY_PATTERN = b"AAGTCTTATACCCAAACTTACGGATTCCGGTTTGTCTGCCGAAATTAGGT"
# Frozen from the brute-force oracle; one 8 and one 12, everything else <= 6.
NOISY_MEM_LENGTHS = [4, 5, 5, 6, 5, 4, 4, 8, 6, 6, 5, 5, 12, 6, 5,
                     4, 5, 5, 4, 4, 4, 4, 4, 4, 5, 5]


@dataclass
class Bench:
    """One fully indexed (text, pattern) instance."""

    text: Text
    pattern: Pattern
    sa_fwd: SuffixArray
    sa_rev: SuffixArray
    pointers: MatchPointers
    fm_fwd: FmIndex
    fm_rev: FmIndex

    def naive_lce(self) -> NaiveLce:
        return NaiveLce(self.text, self.pattern)


def make_bench(text_bytes: bytes, pattern_bytes: bytes, sample_rate: int = 8) -> Bench:
    text = Text.from_bytes(text_bytes)
    pattern = Pattern.from_bytes(pattern_bytes, text.alphabet)
    sa_fwd = build_suffix_structures(text)
    sa_rev = build_suffix_structures(text.reversed())
    return Bench(
        text=text,
        pattern=pattern,
        sa_fwd=sa_fwd,
        sa_rev=sa_rev,
        pointers=compute_match_pointers(pattern, text, sa_fwd, sa_rev),
        fm_fwd=build_fm(text, sample_rate, sa=sa_fwd),
        fm_rev=build_fm(text.reversed(), sample_rate, sa=sa_rev),
    )


@pytest.fixture(scope="session")
def demo_bench() -> Bench:
    return make_bench(DEMO_TEXT, DEMO_PATTERN)


@pytest.fixture(scope="session")
def adversarial_bench() -> Bench:
    return make_bench(ADVERSARIAL_TEXT, ADVERSARIAL_PATTERN)


@pytest.fixture(scope="session")
def noisy_bench() -> Bench:
    return make_bench(NOISY_TEXT, NOISY_PATTERN)


def random_raw_pair(rng: np.random.Generator, max_n: int = 2000,
                    max_m: int = 200) -> tuple[bytes, bytes]:
    """Random text plus either a mutated slice of it or an independent pattern.

    Pattern bytes are always drawn from the text's own symbols, so every
    pattern symbol occurs in the text.
    """
    sigma = int(rng.choice([2, 4, 20]))
    n = int(rng.integers(16, max_n + 1))
    m = int(rng.integers(1, max_m + 1))
    symbols = bytes(range(48, 48 + sigma))
    t_raw = bytes(symbols[c] for c in rng.integers(0, sigma, n))
    present = bytes(sorted(set(t_raw)))
    if rng.random() < 0.5 and m <= n:
        start = int(rng.integers(0, n - m + 1))
        arr = bytearray(t_raw[start : start + m])
        for k in range(m):
            if rng.random() < 0.15:
                arr[k] = present[int(rng.integers(0, len(present)))]
        p_raw = bytes(arr)
    else:
        p_raw = bytes(present[c] for c in rng.integers(0, len(present), m))
    return t_raw, p_raw


L_CHOICES = (1, 2, 3, 5, 8, 13, 21, None)  # None means m


def case_min_len(index: int, m: int) -> int:
    choice = L_CHOICES[index % len(L_CHOICES)]
    return m if choice is None else choice


def replay_window_probes(pattern, pointers, lce, min_len):
    """Re-walk the thresholded scan, recording (i, probe) per iteration.

    Mirrors find_long_mems_lce so tests can inspect the probe values and the
    visited start positions, which the finder itself does not expose.
    """
    m = pattern.m
    fwd, bwd = pointers.forward, pointers.backward
    trail = []
    i = 0
    while i <= m - min_len:
        window_end = i + min_len - 1
        b = lce.lce_backward(window_end, int(bwd[window_end]))
        trail.append((i, b))
        if b >= min_len:
            length = lce.lce_forward(i, int(fwd[i]))
            if i + length == m:
                break
            back = lce.lce_backward(i + length, int(bwd[i + length]))
            i = i + length + 1 - back
        else:
            i += min_len - b
    return trail
