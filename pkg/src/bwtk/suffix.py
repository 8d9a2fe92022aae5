"""Burrows-Wheeler transform construction and the queryable index around it.

The terminator is encoded as 0 and sorts below every alphabet symbol, so the
transformed string T# has length n = |T| + 1 and its BWT contains exactly
one 0. Construction sorts suffixes by prefix doubling over numpy lexsort,
which is O(n log^2 n) and entirely adequate at the intended scales.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import InputError
from .text import Sequence
from .wavelet import RankIndex

_MAGIC = b"BWTK1"


def _sort_suffixes(s: np.ndarray) -> np.ndarray:
    """0-based suffix order of s, all symbols distinct-terminated."""
    n = int(s.size)
    rank = s.astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        ro = rank[order]
        so = second[order]
        changed = np.empty(n, dtype=np.int64)
        changed[0] = 0
        changed[1:] = (ro[1:] != ro[:-1]) | (so[1:] != so[:-1])
        fresh = np.cumsum(changed)
        if fresh[-1] == n - 1:
            return order
        rank = np.empty(n, dtype=np.int64)
        rank[order] = fresh
        k *= 2


def suffix_array(seq: Sequence) -> list[int]:
    """1-based starting positions of the sorted suffixes of T#."""
    s = np.concatenate([np.asarray(seq.symbols, dtype=np.int64), [0]])
    return (_sort_suffixes(s) + 1).tolist()


def build_bwt(seq: Sequence) -> "BwtIndex":
    return BwtIndex(seq.symbols, seq.sigma, name=seq.name)


class BwtIndex:
    """BWT of T#, its C array, a rank structure, and the original symbols.

    c[a] counts the symbols of T# strictly smaller than a, so the suffix rows
    starting with a are exactly [c[a]+1 .. c[a+1]]. enumerations counts how
    many traversal passes have touched this index (used by tests).
    """

    __slots__ = ("bwt", "c", "n", "sigma", "ranks", "text", "name", "enumerations")

    def __init__(self, symbols: list[int], sigma: int, name: str = "") -> None:
        if sigma < 1:
            raise InputError("sigma must be at least 1")
        if not symbols:
            raise InputError("empty input")
        s = np.concatenate([np.asarray(symbols, dtype=np.int64), [0]])
        if s[:-1].min() < 1 or s[:-1].max() > sigma:
            raise InputError(f"symbols outside [1..{sigma}]")
        order = _sort_suffixes(s)
        codes = s[order - 1]
        self._install(codes, sigma, list(symbols), name)

    def _install(
        self, codes: np.ndarray, sigma: int, text: list[int], name: str
    ) -> None:
        self.bwt = [int(x) for x in codes]
        self.n = len(self.bwt)
        self.sigma = sigma
        counts = np.bincount(codes, minlength=sigma + 1)
        self.c = [0] + np.cumsum(counts).tolist()
        self.ranks = RankIndex(codes, sigma)
        self.text = text
        self.name = name
        self.enumerations = 0

    def __len__(self) -> int:
        return self.n

    def rank(self, c: int, i: int) -> int:
        return self.ranks.rank(c, i)

    def access(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise InputError(f"position {i} outside [1..{self.n}]")
        return self.bwt[i - 1]

    def interval(self, word) -> tuple[int, int] | None:
        """Suffix-row interval of word via backward search; None if absent."""
        sp, ep = 1, self.n
        for sym in reversed(tuple(word)):
            if not 1 <= sym <= self.sigma:
                raise InputError(f"symbol {sym} outside [1..{self.sigma}]")
            sp = self.c[sym] + self.ranks.rank(sym, sp - 1) + 1
            ep = self.c[sym] + self.ranks.rank(sym, ep)
            if sp > ep:
                return None
        return sp, ep

    def count(self, word) -> int:
        iv = self.interval(word)
        return 0 if iv is None else iv[1] - iv[0] + 1

    # ------------------------------------------------------------------
    # binary round trip

    def dump(self, path: str) -> None:
        """Write magic, n, sigma, then the BWT as packed fixed-width codes."""
        width = self.sigma.bit_length()
        arr = np.asarray(self.bwt, dtype=np.uint16)
        bits = ((arr[:, None] >> np.arange(width, dtype=np.uint16)) & 1).astype(
            np.uint8
        )
        packed = np.packbits(bits.reshape(-1), bitorder="little")
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(struct.pack("<QQ", self.n, self.sigma))
            fh.write(packed.tobytes())

    @classmethod
    def load(cls, path: str) -> "BwtIndex":
        try:
            with open(path, "rb") as fh:
                blob = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        if len(blob) < len(_MAGIC) + 16 or not blob.startswith(_MAGIC):
            raise InputError(f"{path}: not a BWTK1 index")
        n, sigma = struct.unpack_from("<QQ", blob, len(_MAGIC))
        if n < 2 or sigma < 1:
            raise InputError(f"{path}: corrupt header")
        width = int(sigma).bit_length()
        payload = np.frombuffer(blob, dtype=np.uint8, offset=len(_MAGIC) + 16)
        nbits = n * width
        if payload.size != (nbits + 7) // 8:
            raise InputError(f"{path}: payload size mismatch")
        bits = np.unpackbits(payload, count=nbits, bitorder="little")
        codes = (
            (bits.reshape(n, width).astype(np.int64) * (1 << np.arange(width)))
            .sum(axis=1)
        )
        if codes.max() > sigma or int((codes == 0).sum()) != 1:
            raise InputError(f"{path}: corrupt BWT payload")
        index = cls.__new__(cls)
        index._install(codes, int(sigma), [], "")
        index.text = index._invert()
        return index

    def _invert(self) -> list[int]:
        """Recover T by walking the LF mapping from the terminator row."""
        out: list[int] = []
        row = 1
        for _ in range(self.n):
            sym = self.bwt[row - 1]
            if sym == 0:
                break
            out.append(sym)
            row = self.c[sym] + self.ranks.rank(sym, row)
        else:
            raise InputError("LF walk did not terminate; index is corrupt")
        if len(out) != self.n - 1:
            raise InputError("LF walk length mismatch; index is corrupt")
        out.reverse()
        return out

    def to_sequence(self, name: str | None = None) -> Sequence:
        return Sequence(list(self.text), self.sigma, name=self.name if name is None else name)
