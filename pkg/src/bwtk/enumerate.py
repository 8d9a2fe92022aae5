"""Depth-first enumeration of right-maximal substrings over one or two BWTs.

A substring W is represented without its label: repr(W) stores the sorted
right-extension symbols chars = (b_1 < ... < b_k) and interval boundaries
first, so that the suffix rows of W b_i are [first[i] .. first[i+1]-1] and
the rows of W itself are [first[0] .. first[-1]-1]. Left extension converts
repr(W) into repr(aW) for every symbol a preceding W, using one
range_distinct query per right-extension block; the traversal then pushes
the right-maximal extensions, widest interval first so the narrowest pops
first, which keeps the stack at O(sigma log n) frames.

The two-string variant walks the generalized suffix tree of the pair: the
two terminators count as distinct right extensions, so a string followed by
the end of both texts is right-maximal even when no letter follows it.
"""

from __future__ import annotations

from .errors import InputError
from .suffix import BwtIndex

__all__ = [
    "Repr",
    "GenRepr",
    "VisitEvent",
    "ABSENT",
    "extend_left",
    "extend_left_generalized",
    "enumerate_right_maximal",
    "enumerate_maximal_repeats",
    "enumerate_generalized",
]


class Repr:
    __slots__ = ("chars", "first")

    def __init__(self, chars: tuple[int, ...], first: tuple[int, ...]) -> None:
        self.chars = chars
        self.first = first

    @property
    def present(self) -> bool:
        return self.first[0] != 0

    @property
    def freq(self) -> int:
        return self.first[-1] - self.first[0]

    def interval(self) -> tuple[int, int]:
        return self.first[0], self.first[-1] - 1

    def widths(self) -> list[int]:
        first = self.first
        return [first[i + 1] - first[i] for i in range(len(self.chars))]

    def __repr__(self) -> str:  # pragma: no cover
        return f"Repr(chars={self.chars}, first={self.first})"


ABSENT = Repr((), (0,))


class GenRepr:
    """Per-string pair of representations; an absent side is ABSENT."""

    __slots__ = ("one", "two")

    def __init__(self, one: Repr, two: Repr) -> None:
        self.one = one
        self.two = two

    @property
    def freq(self) -> int:
        return (self.one.freq if self.one.present else 0) + (
            self.two.freq if self.two.present else 0
        )

    def __repr__(self) -> str:  # pragma: no cover
        return f"GenRepr({self.one!r}, {self.two!r})"


class VisitEvent:
    """One enumeration callback: the node plus all its left extensions.

    lefts[i] is a symbol a (possibly 0) preceding an occurrence of W and
    children[i] is repr(a W), in ascending symbol order. payload carries the
    value produced by child_payload when this node was pushed. The event
    object is reused between visits; do not retain it.
    """

    __slots__ = ("depth", "repr", "lefts", "children", "payload", "_path")

    def __init__(self) -> None:
        self.depth = 0
        self.repr: Repr | GenRepr | None = None
        self.lefts: list[int] = []
        self.children: list = []
        self.payload = None
        self._path: list[int] = []

    def label(self) -> tuple[int, ...]:
        """The node string; _path[d-1] is the symbol prepended at depth d."""
        d = self.depth
        path = self._path
        return tuple(path[d - 1 - j] for j in range(d))


def _root_repr(index: BwtIndex) -> Repr:
    c = index.c
    chars = []
    first = []
    for a in range(index.sigma + 1):
        if c[a + 1] > c[a]:
            chars.append(a)
            first.append(c[a] + 1)
    first.append(index.n + 1)
    return Repr(tuple(chars), tuple(first))


def _extend(rd, c, r: Repr) -> tuple[list[int], list[Repr]]:
    """All (a, repr(aW)) from repr(W), symbols ascending."""
    chars = r.chars
    first = r.first
    out_chars: dict[int, list[int]] = {}
    out_first: dict[int, list[int]] = {}
    for i, b in enumerate(chars):
        for a, r1, r2 in rd(first[i], first[i + 1] - 1):
            oc = out_chars.get(a)
            if oc is None:
                out_chars[a] = [b]
                out_first[a] = [c[a] + r1, c[a] + r2 + 1]
            else:
                oc.append(b)
                out_first[a].append(c[a] + r2 + 1)
    lefts = sorted(out_chars)
    kids = [Repr(tuple(out_chars[a]), tuple(out_first[a])) for a in lefts]
    return lefts, kids


def extend_left(index: BwtIndex, r: Repr) -> list[tuple[int, Repr]]:
    """One entry per distinct symbol preceding W, with repr(aW)."""
    if not r.present or len(r.first) != len(r.chars) + 1:
        raise InputError("malformed representation")
    lefts, kids = _extend(index.ranks.range_distinct, index.c, r)
    return list(zip(lefts, kids))


def _extend_gen(i1: BwtIndex, i2: BwtIndex, g: GenRepr):
    merged: dict[int, list[Repr]] = {}
    if g.one.present:
        lefts, kids = _extend(i1.ranks.range_distinct, i1.c, g.one)
        for a, kid in zip(lefts, kids):
            merged[a] = [kid, ABSENT]
    if g.two.present:
        lefts, kids = _extend(i2.ranks.range_distinct, i2.c, g.two)
        for a, kid in zip(lefts, kids):
            pair = merged.get(a)
            if pair is None:
                merged[a] = [ABSENT, kid]
            else:
                pair[1] = kid
    lefts = sorted(merged)
    kids = [GenRepr(merged[a][0], merged[a][1]) for a in lefts]
    return lefts, kids


def extend_left_generalized(
    index1: BwtIndex, index2: BwtIndex, g: GenRepr
) -> list[tuple[int, GenRepr]]:
    if not (g.one.present or g.two.present):
        raise InputError("malformed representation: both sides absent")
    lefts, kids = _extend_gen(index1, index2, g)
    return list(zip(lefts, kids))


def _distinct_extensions(c1: tuple[int, ...], c2: tuple[int, ...]) -> int:
    """Distinct right-extension events, the two terminators kept apart."""
    count = 0
    i = 1 if c1 and c1[0] == 0 else 0
    j = 1 if c2 and c2[0] == 0 else 0
    count += i + j
    n1, n2 = len(c1), len(c2)
    while i < n1 and j < n2:
        a, b = c1[i], c2[j]
        count += 1
        if a <= b:
            i += 1
        if b <= a:
            j += 1
    count += (n1 - i) + (n2 - j)
    return count


def _run(index: BwtIndex, visitor, fire_all: bool, child_payload, root_payload, stats):
    index.enumerations += 1
    rd = index.ranks.range_distinct
    c = index.c
    ev = VisitEvent()
    path = ev._path
    stack = [(_root_repr(index), 0, 0, root_payload)]
    seen = 0
    fired = 0
    peak = 1
    while stack:
        r, depth, a, payload = stack.pop()
        if depth:
            if len(path) < depth:
                path.extend([0] * (depth - len(path)))
            path[depth - 1] = a
        lefts, kids = _extend(rd, c, r)
        seen += 1
        if fire_all or len(lefts) >= 2:
            fired += 1
            ev.depth = depth
            ev.repr = r
            ev.lefts = lefts
            ev.children = kids
            ev.payload = payload
            visitor(ev)
        cand = [
            i
            for i in range(len(lefts))
            if lefts[i] != 0 and len(kids[i].chars) >= 2
        ]
        if cand:
            if len(cand) > 1:
                cand.sort(key=lambda i: kids[i].freq, reverse=True)
            nd = depth + 1
            for i in cand:
                stack.append(
                    (
                        kids[i],
                        nd,
                        lefts[i],
                        child_payload(ev, i) if child_payload else None,
                    )
                )
            if len(stack) > peak:
                peak = len(stack)
    if stats is not None:
        stats["visits"] = seen
        stats["peak_frames"] = peak
    return fired


def enumerate_right_maximal(
    index: BwtIndex,
    visitor,
    *,
    child_payload=None,
    root_payload=None,
    stats: dict | None = None,
) -> int:
    """Visit every right-maximal substring of T, the empty string included.

    Returns the visit count. child_payload(event, i), when given, produces
    the payload stored with the pushed child event.children[i].
    """
    return _run(index, visitor, True, child_payload, root_payload, stats)


def enumerate_maximal_repeats(
    index: BwtIndex,
    visitor,
    *,
    child_payload=None,
    root_payload=None,
    stats: dict | None = None,
) -> int:
    """As enumerate_right_maximal, but fire only at left-maximal nodes.

    Left-maximality asks for at least two distinct preceding symbols, the
    terminator included. Returns the number of visitor invocations.
    """
    return _run(index, visitor, False, child_payload, root_payload, stats)


def enumerate_generalized(
    index1: BwtIndex,
    index2: BwtIndex,
    visitor,
    *,
    child_payload=None,
    root_payload=None,
    stats: dict | None = None,
) -> int:
    """Visit the internal nodes of the generalized suffix tree of the pair.

    A node is any string right-maximal when the two texts' terminators count
    as distinct extensions. Terminator left-extensions are delivered but
    never pushed: strings through a terminator exist only by the circular
    convention and are not substrings of either text.
    """
    if index1.sigma != index2.sigma:
        raise InputError("alphabet mismatch between the two indexes")
    index1.enumerations += 1
    index2.enumerations += 1
    ev = VisitEvent()
    path = ev._path
    root = GenRepr(_root_repr(index1), _root_repr(index2))
    stack = [(root, 0, 0, root_payload)]
    visits = 0
    peak = 1
    while stack:
        g, depth, a, payload = stack.pop()
        if depth:
            if len(path) < depth:
                path.extend([0] * (depth - len(path)))
            path[depth - 1] = a
        lefts, kids = _extend_gen(index1, index2, g)
        visits += 1
        ev.depth = depth
        ev.repr = g
        ev.lefts = lefts
        ev.children = kids
        ev.payload = payload
        visitor(ev)
        cand = [
            i
            for i in range(len(lefts))
            if lefts[i] != 0
            and _distinct_extensions(kids[i].one.chars, kids[i].two.chars) >= 2
        ]
        if cand:
            if len(cand) > 1:
                cand.sort(key=lambda i: kids[i].freq, reverse=True)
            nd = depth + 1
            for i in cand:
                stack.append(
                    (
                        kids[i],
                        nd,
                        lefts[i],
                        child_payload(ev, i) if child_payload else None,
                    )
                )
            if len(stack) > peak:
                peak = len(stack)
    if stats is not None:
        stats["visits"] = visits
        stats["peak_frames"] = peak
    return visits
