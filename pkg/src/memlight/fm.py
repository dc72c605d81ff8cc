"""FM-index over a text: counting backward search, locating, and serialization.

The index stores the BWT of text plus sentinel, cumulative symbol counts,
blocked per-symbol rank checkpoints, and a sampled suffix array for
locating.  Backward search reports how many characters of a query prefix
matched, which is the single primitive the deterministic MEM finder needs.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .sequence import Alphabet, Pattern, QueryStats, Text
from .suffixes import SuffixArray, build_suffix_structures

MAGIC = b"MEMLIDX1"
_SENTINEL = -1
_BLOCK = 64


class IndexFormatError(Exception):
    """A saved index could not be read back."""


@dataclass(frozen=True)
class BwtInterval:
    """Half-open row range in suffix order; width is the occurrence count."""

    lo: int
    hi: int
    depth: int = 0

    @property
    def width(self) -> int:
        return self.hi - self.lo

    @property
    def is_empty(self) -> bool:
        return self.lo >= self.hi


class FmIndex:
    """Immutable backward-search index; concurrent queries are safe.

    Query stats are owned by the caller and passed in explicitly, keeping
    the index itself stateless.
    """

    def __init__(self, alphabet: Alphabet, bwt: np.ndarray, sample_rate: int,
                 marks: np.ndarray, sample_values: np.ndarray,
                 occ_blocks: np.ndarray | None = None, block_size: int = _BLOCK):
        self.alphabet = alphabet
        self.n = bwt.size - 1
        self.s = sample_rate
        self._bwt = np.ascontiguousarray(bwt, dtype=np.int16)
        self._bwt.setflags(write=False)
        self._block = block_size
        sigma = alphabet.size
        if int(self._bwt.max()) >= sigma or int(self._bwt.min()) < -1:
            raise IndexFormatError("BWT symbols out of range for the alphabet")
        counts = np.bincount(self._bwt[self._bwt >= 0], minlength=sigma)
        c = np.empty(sigma + 1, dtype=np.int64)
        c[0] = 1  # row 0 is the sentinel suffix
        c[1:] = 1 + np.cumsum(counts)
        self._c = c
        if occ_blocks is None:
            occ_blocks = self._build_occ(self._bwt, sigma, block_size)
        self._occ = np.ascontiguousarray(occ_blocks, dtype=np.int64)
        self._marks = np.ascontiguousarray(marks, dtype=bool)
        self._marks_cum = np.concatenate(
            ([0], np.cumsum(self._marks, dtype=np.int64))
        )
        self._samples = np.ascontiguousarray(sample_values, dtype=np.int64)
        if int(self._marks_cum[-1]) != self._samples.size:
            raise IndexFormatError("sample table does not match its row marks")

    @staticmethod
    def _build_occ(bwt: np.ndarray, sigma: int, block: int) -> np.ndarray:
        nrows = bwt.size
        nblocks = -(-nrows // block)
        occ = np.zeros((nblocks + 1, sigma), dtype=np.int64)
        rows = np.arange(nrows)
        valid = bwt >= 0
        np.add.at(occ, (rows[valid] // block + 1, bwt[valid].astype(np.int64)), 1)
        return np.cumsum(occ, axis=0)

    # -- queries ------------------------------------------------------------

    def rank(self, symbol: int, prefix_len: int) -> int:
        """Occurrences of symbol in the first prefix_len BWT rows."""
        blk = prefix_len // self._block
        base = int(self._occ[blk, symbol])
        start = blk * self._block
        if start == prefix_len:
            return base
        return base + int(np.count_nonzero(self._bwt[start:prefix_len] == symbol))

    def full_interval(self) -> BwtInterval:
        return BwtInterval(0, self.n + 1, 0)

    def backward_extend(self, iv: BwtInterval, symbol: int,
                        stats: QueryStats | None = None) -> BwtInterval:
        """Interval of symbol+current string; empty when it does not occur.

        Out-of-alphabet symbols yield an empty interval rather than an error,
        and every call counts as one backward step, including the failing one.
        """
        if stats is not None:
            stats.backward_steps += 1
        if not 0 <= symbol < self.alphabet.size:
            return BwtInterval(iv.lo, iv.lo, iv.depth + 1)
        base = self._c[symbol]
        lo = base + self.rank(symbol, iv.lo)
        hi = base + self.rank(symbol, iv.hi)
        return BwtInterval(int(lo), int(hi), iv.depth + 1)

    def backward_search_prefix(self, query, prefix_len: int,
                               stats: QueryStats | None = None) -> tuple[int, BwtInterval]:
        """Match the length-prefix_len prefix of the query right to left.

        Returns how many characters matched before the interval would have
        emptied, i.e. the length of the longest suffix of that prefix
        occurring in the text, with the interval of that suffix.
        """
        codes = query.data if isinstance(query, Pattern) else query
        if not 0 <= prefix_len <= len(codes):
            raise ValueError("prefix length out of range")
        iv = self.full_interval()
        matched = 0
        for pos in range(prefix_len - 1, -1, -1):
            nxt = self.backward_extend(iv, int(codes[pos]), stats)
            if nxt.lo >= nxt.hi:
                break
            iv = nxt
            matched += 1
        return matched, iv

    def _lf(self, row: int) -> int:
        sym = int(self._bwt[row])
        if sym < 0:
            return 0
        return int(self._c[sym]) + self.rank(sym, row)

    def locate_all(self, iv: BwtInterval) -> list[int]:
        """Text positions of every row in the interval, ascending.

        Each row walks at most sample_rate steps to a marked row.  The
        sentinel row resolves to position n and is excluded.
        """
        out = []
        for row in range(iv.lo, iv.hi):
            r, steps = row, 0
            while not self._marks[r]:
                r = self._lf(r)
                steps += 1
                if steps > self.n:
                    raise IndexFormatError("suffix-array samples are unreachable")
            pos = int(self._samples[self._marks_cum[r]]) + steps
            if pos != self.n:
                out.append(pos)
        return sorted(out)

    # -- serialization -------------------------------------------------------

    def to_bytes(self) -> bytes:
        parts = [MAGIC]
        parts.append(struct.pack("<5Q", self.n, self.alphabet.size, self.s,
                                 self._block, self._samples.size))
        parts.append(self.alphabet.symbols)
        parts.append(self._bwt.astype("<i2").tobytes())
        parts.append(self._occ.astype("<i8").tobytes())
        parts.append(np.packbits(self._marks, bitorder="little").tobytes())
        parts.append(self._samples.astype("<i8").tobytes())
        body = b"".join(parts)
        return body + struct.pack("<I", zlib.crc32(body))

    def save(self, destination) -> None:
        Path(destination).write_bytes(self.to_bytes())

    @classmethod
    def from_bytes(cls, data: bytes) -> "FmIndex":
        if data[:8] != MAGIC:
            raise IndexFormatError("not a memlight index")
        if len(data) < 8 + 40 + 4:
            raise IndexFormatError("truncated index file")
        n, sigma, s, block, n_samples = struct.unpack_from("<5Q", data, 8)
        if n < 1 or not 1 <= sigma <= 256 or s < 1 or block < 1:
            raise IndexFormatError("index header is inconsistent")
        nrows = n + 1
        nblocks = -(-nrows // block)
        marks_bytes = -(-nrows // 8)
        expected = 8 + 40 + sigma + nrows * 2 + (nblocks + 1) * sigma * 8 \
            + marks_bytes + n_samples * 8 + 4
        if len(data) != expected:
            raise IndexFormatError(
                f"truncated index file: {len(data)} bytes, expected {expected}"
            )
        body, (crc,) = data[:-4], struct.unpack_from("<I", data, len(data) - 4)
        if zlib.crc32(body) != crc:
            raise IndexFormatError("index checksum mismatch")
        off = 48
        alphabet = Alphabet(data[off : off + sigma])
        off += sigma
        bwt = np.frombuffer(data, dtype="<i2", count=nrows, offset=off)
        off += nrows * 2
        occ = np.frombuffer(data, dtype="<i8", count=(nblocks + 1) * sigma,
                            offset=off).reshape(nblocks + 1, sigma)
        off += (nblocks + 1) * sigma * 8
        packed = np.frombuffer(data, dtype=np.uint8, count=marks_bytes, offset=off)
        marks = np.unpackbits(packed, bitorder="little", count=nrows).astype(bool)
        off += marks_bytes
        samples = np.frombuffer(data, dtype="<i8", count=n_samples, offset=off)
        return cls(alphabet, bwt.astype(np.int16), int(s), marks,
                   samples.astype(np.int64), occ.astype(np.int64), int(block))

    @classmethod
    def load(cls, source) -> "FmIndex":
        return cls.from_bytes(Path(source).read_bytes())


def build_fm(text: Text, sample_rate: int = 32, sa: SuffixArray | None = None) -> FmIndex:
    """FM-index of the text, built from its suffix array."""
    if sample_rate < 1:
        raise ValueError("sample rate must be at least 1")
    if sa is None:
        sa = build_suffix_structures(text)
    ext = np.empty(text.n + 1, dtype=np.int16)
    ext[: text.n] = text.data
    ext[text.n] = _SENTINEL
    bwt = np.where(sa.sa > 0, ext[sa.sa - 1], _SENTINEL).astype(np.int16)
    marks = (sa.sa % sample_rate) == 0
    sample_values = sa.sa[marks]
    return FmIndex(text.alphabet, bwt, sample_rate, marks, sample_values)


def invert_bwt(index: FmIndex) -> np.ndarray:
    """Reconstruct the text codes from the BWT; validates index consistency."""
    out = np.empty(index.n, dtype=np.uint8)
    row = 0
    for i in range(index.n - 1, -1, -1):
        sym = int(index._bwt[row])
        out[i] = sym
        row = int(index._c[sym]) + index.rank(sym, row)
    return out
