"""Rank and rangeDistinct queries over a symbol array.

The array is stored as a binary wavelet tree over [0..maxsym]: each node
splits its symbol range at the midpoint and keeps one bit per element.
Queries walk the tree, so a rank costs O(log maxsym) word operations and
range_distinct costs O(log maxsym) per reported symbol.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError

_LOW_MASKS = tuple((1 << r) - 1 for r in range(64))


class _Node:
    __slots__ = ("lo", "hi", "mid", "words", "cums", "left", "right")

    def __init__(self, lo: int, hi: int) -> None:
        self.lo = lo
        self.hi = hi
        self.mid = (lo + hi) // 2
        self.words: list[int] | None = None
        self.cums: list[int] | None = None
        self.left: _Node | None = None
        self.right: _Node | None = None


def _pack(bits: np.ndarray) -> tuple[list[int], list[int]]:
    """Bit array to 64-bit little-endian words plus cumulative popcounts."""
    if bits.size == 0:
        return [], [0]
    packed = np.packbits(bits, bitorder="little")
    pad = (-packed.size) % 8
    if pad:
        packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
    words = np.frombuffer(packed.tobytes(), dtype="<u8")
    counts = np.bitwise_count(words).astype(np.int64)
    return words.tolist(), [0] + np.cumsum(counts).tolist()


def _rank1(words: list[int], cums: list[int], i: int) -> int:
    # number of 1 bits among the first i bits
    if i <= 0:
        return 0
    w = i >> 6
    r = i & 63
    if r:
        return cums[w] + (words[w] & _LOW_MASKS[r]).bit_count()
    return cums[w]


class RankIndex:
    """Wavelet tree over symbols in [0..maxsym] with 1-based positions."""

    __slots__ = ("n", "maxsym", "root")

    def __init__(self, data, maxsym: int) -> None:
        if maxsym < 0:
            raise InputError("maxsym must be non-negative")
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 1:
            raise InputError("data must be one-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() > maxsym):
            raise InputError("symbol outside [0..maxsym]")
        self.n = int(arr.size)
        self.maxsym = maxsym
        self.root = self._build(arr, 0, maxsym)

    def _build(self, arr: np.ndarray, lo: int, hi: int) -> _Node:
        node = _Node(lo, hi)
        if lo == hi:
            return node
        bits = arr > node.mid
        node.words, node.cums = _pack(bits)
        node.left = self._build(arr[~bits], lo, node.mid)
        node.right = self._build(arr[bits], node.mid + 1, hi)
        return node

    def _check_symbol(self, c: int) -> None:
        if not 0 <= c <= self.maxsym:
            raise InputError(f"symbol {c} outside [0..{self.maxsym}]")

    def rank(self, c: int, i: int) -> int:
        """Occurrences of c among the first i entries; rank(c, 0) = 0."""
        self._check_symbol(c)
        if not 0 <= i <= self.n:
            raise InputError(f"position {i} outside [0..{self.n}]")
        node = self.root
        while node.words is not None:
            ones = _rank1(node.words, node.cums, i)
            if c <= node.mid:
                i -= ones
                node = node.left
            else:
                i = ones
                node = node.right
        return i

    def access(self, i: int) -> int:
        """The symbol at position i in [1..n]."""
        if not 1 <= i <= self.n:
            raise InputError(f"position {i} outside [1..{self.n}]")
        node = self.root
        i -= 1
        while node.words is not None:
            bit = (node.words[i >> 6] >> (i & 63)) & 1
            ones = _rank1(node.words, node.cums, i)
            if bit:
                i = ones
                node = node.right
            else:
                i -= ones
                node = node.left
        return node.lo

    def range_distinct(self, i: int, j: int) -> list[tuple[int, int, int]]:
        """Distinct symbols of positions [i..j] in ascending order.

        Each tuple is (c, rank(c, p_c), rank(c, q_c)) for the first and last
        occurrence p_c/q_c of c inside the range, which equals
        (c, rank(c, i-1) + 1, rank(c, j)).
        """
        if not 1 <= i <= j <= self.n:
            raise InputError(f"invalid range [{i}..{j}] over [1..{self.n}]")
        out: list[tuple[int, int, int]] = []
        stack = [(self.root, i - 1, j)]
        while stack:
            node, x, y = stack.pop()
            words = node.words
            if words is None:
                out.append((node.lo, x + 1, y))
                continue
            cums = node.cums
            x1 = _rank1(words, cums, x)
            y1 = _rank1(words, cums, y)
            # right pushed first so the left child pops first (ascending order)
            if y1 > x1:
                stack.append((node.right, x1, y1))
            x0 = x - x1
            y0 = y - y1
            if y0 > x0:
                stack.append((node.left, x0, y0))
        return out
