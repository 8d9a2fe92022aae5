"""Shared builders for the test suite."""

from __future__ import annotations

import random

from bwtk.suffix import BwtIndex, build_bwt
from bwtk.text import Sequence


def seq(text: str, sigma: int | None = None, name: str | None = None) -> Sequence:
    """Distinct letters to symbols in sorted order: banana -> 2,1,3,1,3,1."""
    order = {ch: i + 1 for i, ch in enumerate(sorted(set(text)))}
    symbols = [order[ch] for ch in text]
    return Sequence(symbols, sigma or len(order), name if name is not None else text)


def idx(text: str, sigma: int | None = None) -> BwtIndex:
    return build_bwt(seq(text, sigma))


def rand_seq(rng: random.Random, n: int, sigma: int, name: str = "rand") -> Sequence:
    return Sequence([rng.randint(1, sigma) for _ in range(n)], sigma, name)
