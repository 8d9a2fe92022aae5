"""Similarity and complexity measures, each a fold over one enumeration.

Every function here consumes VisitEvents from the enumeration module and
telescopes node contributions so that only true k-mer or substring loci
survive: a node adds its own term and subtracts one term per child edge,
and the strings that end on leaf edges are covered by closed-form
initializers. Frequencies come straight from interval widths, so integer
measures are computed in exact integer arithmetic.

Conventions shared with the brute-force reference: alphabets of measures
range over [1..sigma] (terminators are delivered by the enumerator but
filtered here), f(empty) = n-1 where a ratio needs it, and logarithms are
base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .enumerate import (
    GenRepr,
    Repr,
    VisitEvent,
    enumerate_generalized,
    enumerate_maximal_repeats,
    enumerate_right_maximal,
)
from .errors import InputError, ZeroDenominatorError
from .params import WeightSpec, ZScoreParams, markov_g, validate_probs
from .suffix import BwtIndex

__all__ = [
    "ProfileMatrix",
    "kmer_complexity",
    "kmer_kernel",
    "kmer_kernel_range",
    "kmer_profile",
    "entropy_range",
    "substring_complexity",
    "substring_kernel",
    "weighted_substring_kernel",
    "d2s_distance",
    "d2star_distance",
    "maw_count",
    "maw_enumerate",
    "maw_words",
    "maw_jaccard",
    "maw_cosine",
    "markov_kernel",
    "kl_divergence_range",
    "calibrate_kmax",
    "calibrate_kmin",
]


@dataclass
class ProfileMatrix:
    """Distinct k-mer counts by length and frequency, saturated at f2."""

    k1: int
    k2: int
    f1: int
    f2: int
    cells: list[list[int]]

    def cell(self, k: int, f: int) -> int:
        return self.cells[k - self.k1][f - self.f1]


def _letter_count(chars: tuple[int, ...]) -> int:
    return len(chars) - 1 if chars and chars[0] == 0 else len(chars)


def _letter_blocks(r: Repr) -> dict[int, int]:
    first = r.first
    return {
        b: first[i + 1] - first[i] for i, b in enumerate(r.chars) if b != 0
    }


def _pair_sums(one: Repr, two: Repr) -> tuple[int, int, int]:
    """(shared-letter width products, side-1 widths squared, side-2)."""
    c1, f1 = one.chars, one.first
    c2, f2 = two.chars, two.first
    s1 = 0
    for i in range(len(c1)):
        w = f1[i + 1] - f1[i]
        s1 += w * w
    s2 = 0
    for j in range(len(c2)):
        w = f2[j + 1] - f2[j]
        s2 += w * w
    cross = 0
    i = j = 0
    n1, n2 = len(c1), len(c2)
    while i < n1 and j < n2:
        a, b = c1[i], c2[j]
        if a == b:
            if a != 0:
                cross += (f1[i + 1] - f1[i]) * (f2[j + 1] - f2[j])
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return cross, s1, s2


def _shared_letter_count(c1: tuple[int, ...], c2: tuple[int, ...]) -> int:
    i = j = 0
    count = 0
    while i < len(c1) and j < len(c2):
        a, b = c1[i], c2[j]
        if a == b:
            if a != 0:
                count += 1
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return count


def _union_letters(c1: tuple[int, ...], c2: tuple[int, ...]) -> list[int]:
    out = sorted(set(c1) | set(c2))
    return out[1:] if out and out[0] == 0 else out


def _cosine(num: float, d1: float, d2: float) -> float:
    if d1 <= 0 or d2 <= 0:
        raise ZeroDenominatorError("zero denominator: a side has zero norm")
    return num / math.sqrt(d1 * d2)


# ---------------------------------------------------------------------------
# k-mer measures


def kmer_complexity(index: BwtIndex, k: int) -> int:
    """Number of distinct k-mers over [1..sigma] occurring in the text."""
    if k < 1:
        raise InputError("k must be at least 1")
    n = index.n
    if k >= n:
        return 0
    total = n - k

    def visit(ev: VisitEvent) -> None:
        nonlocal total
        if ev.depth >= k:
            total += 1 - len(ev.repr.chars)

    enumerate_right_maximal(index, visit)
    return total


def kmer_kernel_range(
    index1: BwtIndex, index2: BwtIndex, k1: int, k2: int
) -> dict[int, float]:
    """Cosine of k-mer count vectors for every k in [k1..k2], one pass.

    Keys with an undefined kernel (a string with fewer than k symbols) are
    absent from the result.
    """
    if not 1 <= k1 <= k2:
        raise InputError("range must satisfy 1 <= k1 <= k2")
    width = k2 + 1
    d_num = [0] * width
    d_one = [0] * width
    d_two = [0] * width

    def visit(ev: VisitEvent) -> None:
        d = ev.depth
        if d < k1:
            return
        g = ev.repr
        one, two = g.one, g.two
        cross, s1, s2 = _pair_sums(one, two)
        col = d if d < k2 else k2
        fo = one.freq
        ft = two.freq
        d_num[col] += fo * ft - cross
        if one.present:
            d_one[col] += fo * fo - s1
        if two.present:
            d_two[col] += ft * ft - s2

    enumerate_generalized(index1, index2, visit)
    out: dict[int, float] = {}
    n1, n2 = index1.n, index2.n
    num = den1 = den2 = 0
    for k in range(k2, k1 - 1, -1):
        num += d_num[k]
        den1 += d_one[k]
        den2 += d_two[k]
        if n1 > k and n2 > k:
            out[k] = num / math.sqrt((n1 - k + den1) * (n2 - k + den2))
    return out


def kmer_kernel(index1: BwtIndex, index2: BwtIndex, k: int) -> float:
    values = kmer_kernel_range(index1, index2, k, k)
    if k not in values:
        raise ZeroDenominatorError(
            f"zero denominator: a string has fewer than k={k} symbols"
        )
    return values[k]


def kmer_profile(
    index: BwtIndex, k1: int, k2: int, f1: int, f2: int
) -> ProfileMatrix:
    """Distinct k-mers per (length, frequency) cell.

    cells[k][f] counts k-mers occurring exactly f times for f < f2 and at
    least f2 times in the saturated last column.
    """
    if not (1 <= k1 <= k2 and 1 <= f1 <= f2):
        raise InputError("bounds must satisfy 1 <= k1 <= k2 and 1 <= f1 <= f2")
    rows = k2 - k1 + 1
    cols = f2 - f1 + 1
    diff = [[0] * cols for _ in range(rows)]

    def visit(ev: VisitEvent) -> None:
        d = ev.depth
        if d < k1:
            return
        row = diff[(d if d < k2 else k2) - k1]
        r = ev.repr
        f = r.freq
        col = f if f < f2 else f2
        if col >= f1:
            row[col - f1] += 1
        first = r.first
        for i in range(len(r.chars)):
            w = first[i + 1] - first[i]
            col = w if w < f2 else f2
            if col >= f1:
                row[col - f1] -= 1

    enumerate_right_maximal(index, visit)
    cells = [[0] * cols for _ in range(rows)]
    acc = [0] * cols
    for r in range(rows - 1, -1, -1):
        row = diff[r]
        for j in range(cols):
            acc[j] += row[j]
        cells[r] = acc.copy()
    if f1 == 1:
        n = index.n
        for k in range(k1, k2 + 1):
            if n - k > 0:
                cells[k - k1][0] += n - k
    return ProfileMatrix(k1, k2, f1, f2, cells)


def entropy_range(index: BwtIndex, k1: int, k2: int) -> list[float]:
    """Order-k empirical entropies H_k for k in [k1..k2], one pass.

    H_k averages, over text positions, the entropy of the follower-symbol
    distribution after each length-k context; the normalizer is n-1.
    """
    if not 0 <= k1 <= k2:
        raise InputError("range must satisfy 0 <= k1 <= k2")
    sums = [0.0] * (k2 - k1 + 1)
    log2 = math.log2

    def visit(ev: VisitEvent) -> None:
        d = ev.depth
        if d < k1 or d > k2:
            return
        r = ev.repr
        first = r.first
        widths = [
            first[i + 1] - first[i] for i, b in enumerate(r.chars) if b != 0
        ]
        if len(widths) < 2:
            return
        fr = sum(widths)
        sums[d - k1] += sum(w * log2(fr / w) for w in widths)

    enumerate_right_maximal(index, visit)
    m = index.n - 1
    return [s / m for s in sums]


# ---------------------------------------------------------------------------
# substring measures


def substring_complexity(index: BwtIndex) -> int:
    """Number of distinct non-empty substrings over [1..sigma]."""
    n = index.n
    total = (n - 1) * n // 2

    def visit(ev: VisitEvent) -> None:
        nonlocal total
        d = ev.depth
        if d:
            total += d * (1 - len(ev.repr.chars))

    enumerate_right_maximal(index, visit)
    return total


def substring_kernel(index1: BwtIndex, index2: BwtIndex) -> float:
    """Cosine of the full substring-count vectors."""
    n1, n2 = index1.n, index2.n
    num = 0
    den1 = (n1 - 1) * n1 // 2
    den2 = (n2 - 1) * n2 // 2

    def visit(ev: VisitEvent) -> None:
        nonlocal num, den1, den2
        d = ev.depth
        if not d:
            return
        g = ev.repr
        one, two = g.one, g.two
        cross, s1, s2 = _pair_sums(one, two)
        fo = one.freq
        ft = two.freq
        num += d * (fo * ft - cross)
        if one.present:
            den1 += d * (fo * fo - s1)
        if two.present:
            den2 += d * (ft * ft - s2)

    enumerate_generalized(index1, index2, visit)
    return _cosine(float(num), float(den1), float(den2))


def _length_prefix_sum(weights: WeightSpec):
    kind = weights.kind
    if kind == "uniform":
        return float
    if kind == "band":
        kmin, kmax = weights.kmin, weights.kmax

        def band_ps(length: int) -> float:
            hi = length if length < kmax else kmax
            return float(hi - kmin + 1) if hi >= kmin else 0.0

        return band_ps
    x = weights.epsilon * weights.epsilon

    def expo_ps(length: int) -> float:
        if x == 1.0:
            return float(length)
        return x * (1.0 - x**length) / (1.0 - x)

    return expo_ps


def _length_denominator(weights: WeightSpec, n: int) -> float:
    kind = weights.kind
    if kind == "uniform":
        return (n - 1) * n / 2
    if kind == "band":
        lo = weights.kmin
        hi = min(weights.kmax, n - 1)
        if hi < lo:
            return 0.0
        return float(sum(n - j for j in range(lo, hi + 1)))
    x = weights.epsilon * weights.epsilon
    total = 0.0
    xp = 1.0
    for j in range(1, n):
        xp *= x
        if xp == 0.0:
            break
        total += (n - j) * xp
    return total


def _charscore_denominator(text: list[int], scores: tuple[float, ...]) -> float:
    tail = 0.0
    total = 0.0
    for sym in reversed(text):
        q = scores[sym - 1]
        tail = q * q * (1.0 + tail)
        total += tail
    return total


def weighted_substring_kernel(
    index1: BwtIndex, index2: BwtIndex, weights: WeightSpec
) -> float:
    """Cosine of weighted substring vectors g(|W|) f(W) or q-product weights.

    The telescoping coefficient of a node is the prefix sum of squared
    weights over its label's prefixes: a closed form of the depth for the
    length-based kinds, a stack payload for charscore.
    """
    if index1.sigma != index2.sigma:
        raise InputError("alphabet mismatch between the two indexes")
    weights.validate(index1.sigma)
    num = 0.0
    if weights.kind == "charscore":
        scores = weights.scores
        den1 = _charscore_denominator(index1.text, scores)
        den2 = _charscore_denominator(index2.text, scores)
        sq = [0.0] + [q * q for q in scores]

        def child_payload(ev: VisitEvent, i: int):
            return sq[ev.lefts[i]] * (1.0 + ev.payload)

        def coefficient(ev: VisitEvent) -> float:
            return ev.payload

        root_payload = 0.0
    else:
        ps = _length_prefix_sum(weights)
        den1 = _length_denominator(weights, index1.n)
        den2 = _length_denominator(weights, index2.n)
        child_payload = None

        def coefficient(ev: VisitEvent) -> float:
            return ps(ev.depth)

        root_payload = None

    def visit(ev: VisitEvent) -> None:
        nonlocal num, den1, den2
        if not ev.depth:
            return
        c = coefficient(ev)
        if not c:
            return
        g = ev.repr
        one, two = g.one, g.two
        cross, s1, s2 = _pair_sums(one, two)
        fo = one.freq
        ft = two.freq
        num += c * (fo * ft - cross)
        if one.present:
            den1 += c * (fo * fo - s1)
        if two.present:
            den2 += c * (ft * ft - s2)

    enumerate_generalized(
        index1, index2, visit, child_payload=child_payload, root_payload=root_payload
    )
    return _cosine(num, den1, den2)


# ---------------------------------------------------------------------------
# centered k-mer distances


def _window_products(text: list[int], k: int, q: tuple[float, ...]):
    """q-products of every length-k window, periodically recomputed."""
    m = len(text)
    if m < k:
        return
    prod = 1.0
    for j in range(k):
        prod *= q[text[j] - 1]
    yield prod
    for i in range(1, m - k + 1):
        if i & 1023:
            prod = prod / q[text[i - 1] - 1] * q[text[i + k - 1] - 1]
        else:
            prod = 1.0
            for j in range(i, i + k):
                prod *= q[text[j] - 1]
        yield prod


def _d2_fold(index1: BwtIndex, index2: BwtIndex, k: int, q, phi, absent_coef):
    total = 0.0
    q_present = 0.0
    for qw in _window_products(index1.text, k, q):
        total += phi(1, 0, qw)
        q_present += qw
    for qw in _window_products(index2.text, k, q):
        total += phi(0, 1, qw)
        q_present += qw

    def visit(ev: VisitEvent) -> None:
        nonlocal total, q_present
        d = ev.depth
        if d < k:
            return
        qk = 1.0
        path = ev._path
        for j in range(d - k, d):
            qk *= q[path[j] - 1]
        g = ev.repr
        one, two = g.one, g.two
        acc = phi(one.freq, two.freq, qk)
        edges = 0
        c1, f1 = one.chars, one.first
        c2, f2 = two.chars, two.first
        i = j = 0
        if i < len(c1) and c1[0] == 0:
            acc -= phi(f1[1] - f1[0], 0, qk)
            edges += 1
            i = 1
        if j < len(c2) and c2[0] == 0:
            acc -= phi(0, f2[1] - f2[0], qk)
            edges += 1
            j = 1
        while i < len(c1) or j < len(c2):
            a = c1[i] if i < len(c1) else None
            b = c2[j] if j < len(c2) else None
            if b is None or (a is not None and a < b):
                acc -= phi(f1[i + 1] - f1[i], 0, qk)
                i += 1
            elif a is None or b < a:
                acc -= phi(0, f2[j + 1] - f2[j], qk)
                j += 1
            else:
                acc -= phi(f1[i + 1] - f1[i], f2[j + 1] - f2[j], qk)
                i += 1
                j += 1
            edges += 1
        total += acc
        q_present += qk * (1 - edges)

    enumerate_generalized(index1, index2, visit)
    return total + absent_coef * (1.0 - q_present)


def _d2_validate(index1: BwtIndex, index2: BwtIndex, k: int, q) -> tuple:
    if k < 1:
        raise InputError("k must be at least 1")
    if index1.sigma != index2.sigma:
        raise InputError("alphabet mismatch between the two indexes")
    q = tuple(float(v) for v in q)
    validate_probs(q, index1.sigma)
    if index1.n <= k or index2.n <= k:
        raise ZeroDenominatorError(
            f"zero denominator: a string has fewer than k={k} symbols"
        )
    return q, index1.n - k, index2.n - k


def d2s_distance(index1: BwtIndex, index2: BwtIndex, k: int, q) -> float:
    """Sum over all k-mers of t1 t2 / sqrt(t1^2 + t2^2) for centered counts.

    t_i(W) = f_i(W) - (n_i - k) q(W). Terms for k-mers absent from both
    strings are linear in q(W) and folded in as a closed-form correction.
    """
    q, e1, e2 = _d2_validate(index1, index2, k, q)

    def phi(x1: int, x2: int, qw: float) -> float:
        t1 = x1 - e1 * qw
        t2 = x2 - e2 * qw
        dd = t1 * t1 + t2 * t2
        if dd == 0.0:
            return 0.0
        return t1 * t2 / math.sqrt(dd)

    coef = e1 * e2 / math.sqrt(e1 * e1 + e2 * e2)
    return _d2_fold(index1, index2, k, q, phi, coef)


def d2star_distance(index1: BwtIndex, index2: BwtIndex, k: int, q) -> float:
    """Sum over all k-mers of t1 t2 / (sqrt((n1-k)(n2-k)) q(W))."""
    q, e1, e2 = _d2_validate(index1, index2, k, q)
    scale = math.sqrt(e1 * e2)

    def phi(x1: int, x2: int, qw: float) -> float:
        return (x1 - e1 * qw) * (x2 - e2 * qw) / (scale * qw)

    return _d2_fold(index1, index2, k, q, phi, scale)


# ---------------------------------------------------------------------------
# minimal absent words


def maw_count(index: BwtIndex) -> int:
    """Number of minimal absent words a W b with letter a, b.

    Only maximal repeats can be MAW infixes, so each maximal-repeat visit
    adds its full left-by-right letter rectangle and removes the occurring
    corners.
    """
    total = 0

    def visit(ev: VisitEvent) -> None:
        nonlocal total
        kr = _letter_count(ev.repr.chars)
        lefts = ev.lefts
        kids = ev.children
        for i in range(len(lefts)):
            if lefts[i] != 0:
                total += kr - _letter_count(kids[i].chars)

    enumerate_maximal_repeats(index, visit)
    return total


def maw_enumerate(index: BwtIndex, visitor) -> int:
    """Fire visitor(a, sp, ep, depth, b) per MAW a W b; returns the count.

    (sp, ep) is the suffix-row interval of the infix W and depth is |W|.
    """
    count = 0

    def visit(ev: VisitEvent) -> None:
        nonlocal count
        r = ev.repr
        letters = [b for b in r.chars if b != 0]
        sp, ep = r.interval()
        depth = ev.depth
        lefts = ev.lefts
        kids = ev.children
        for i in range(len(lefts)):
            a = lefts[i]
            if a == 0:
                continue
            have = set(kids[i].chars)
            for b in letters:
                if b not in have:
                    visitor(a, sp, ep, depth, b)
                    count += 1

    enumerate_maximal_repeats(index, visit)
    return count


def maw_words(index: BwtIndex) -> list[tuple[int, ...]]:
    """All minimal absent words as symbol tuples, in traversal order."""
    out: list[tuple[int, ...]] = []

    def visit(ev: VisitEvent) -> None:
        r = ev.repr
        letters = [b for b in r.chars if b != 0]
        label = ev.label()
        lefts = ev.lefts
        kids = ev.children
        for i in range(len(lefts)):
            a = lefts[i]
            if a == 0:
                continue
            have = set(kids[i].chars)
            head = (a,) + label
            out.extend(head + (b,) for b in letters if b not in have)

    enumerate_maximal_repeats(index, visit)
    return out


def _maw_pair_counts(index1: BwtIndex, index2: BwtIndex) -> tuple[int, int, int]:
    """(|MAW(T1)|, |MAW(T2)|, |intersection|) in one generalized pass."""
    c1 = c2 = inter = 0

    def visit(ev: VisitEvent) -> None:
        nonlocal c1, c2, inter
        g = ev.repr
        ch1, ch2 = g.one.chars, g.two.chars
        rm1 = len(ch1) >= 2
        rm2 = len(ch2) >= 2
        if not (rm1 or rm2):
            return
        kids = ev.children
        lm1 = lm2 = 0
        for kid in kids:
            lm1 += kid.one.present
            lm2 += kid.two.present
        mr1 = rm1 and lm1 >= 2
        mr2 = rm2 and lm2 >= 2
        if not (mr1 or mr2):
            return
        letters1 = [b for b in ch1 if b != 0]
        letters2 = [b for b in ch2 if b != 0]
        shared = [b for b in letters1 if b in letters2]
        lefts = ev.lefts
        for i in range(len(lefts)):
            if lefts[i] == 0:
                continue
            kid = kids[i]
            have1 = set(kid.one.chars)
            have2 = set(kid.two.chars)
            if mr1 and kid.one.present:
                c1 += sum(1 for b in letters1 if b not in have1)
            if mr2 and kid.two.present:
                c2 += sum(1 for b in letters2 if b not in have2)
            if mr1 and mr2 and kid.one.present and kid.two.present:
                inter += sum(
                    1 for b in shared if b not in have1 and b not in have2
                )

    enumerate_generalized(index1, index2, visit)
    return c1, c2, inter


def maw_jaccard(index1: BwtIndex, index2: BwtIndex) -> float:
    """Jaccard similarity of the two MAW sets; empty-empty counts as 1."""
    c1, c2, inter = _maw_pair_counts(index1, index2)
    union = c1 + c2 - inter
    if union == 0:
        return 1.0
    return inter / union


def maw_cosine(index1: BwtIndex, index2: BwtIndex) -> float:
    """Cosine of the binary MAW indicator vectors; empty-empty is 1."""
    c1, c2, inter = _maw_pair_counts(index1, index2)
    if c1 == 0 and c2 == 0:
        return 1.0
    if c1 == 0 or c2 == 0:
        raise ZeroDenominatorError("zero denominator: one MAW set is empty")
    return inter / math.sqrt(c1 * c2)


# ---------------------------------------------------------------------------
# Markovian z-score kernel


def markov_kernel(
    index1: BwtIndex, index2: BwtIndex, params: ZScoreParams
) -> float:
    """Cosine of z-score vectors over strings a W b with letter a, b.

    z is g f(aWb) f(W) / (f(aW) f(Wb)) - 1 for occurring strings and -1 at
    minimal absent words. Nontrivial terms arise only where the infix W is
    a maximal repeat of a side; in exact-g mode the residual (g-1) baseline
    of every other occurring string is folded in through per-length prefix
    sums, exactly mirrored by a (g1-1)(g2-1) subtraction on shared terms.
    """
    params.validate()
    if index1.sigma != index2.sigma:
        raise InputError("alphabet mismatch between the two indexes")
    n1, n2 = index1.n, index2.n
    m1, m2 = n1 - 1, n2 - 1
    exact = params.g_mode == "exact"
    if exact:
        g1a = [1.0, 1.0] + [markov_g(n1, j) for j in range(2, n1 + 1)]
        g2a = [1.0, 1.0] + [markov_g(n2, j) for j in range(2, n2 + 1)]
        ps1 = [0.0] * (n1 + 1)
        for j in range(2, n1 + 1):
            ps1[j] = ps1[j - 1] + (g1a[j] - 1.0) ** 2
        ps2 = [0.0] * (n2 + 1)
        for j in range(2, n2 + 1):
            ps2[j] = ps2[j - 1] + (g2a[j] - 1.0) ** 2
        limit = min(n1, n2)
        psb = [0.0] * (limit + 1)
        for j in range(2, limit + 1):
            psb[j] = psb[j - 1] + (g1a[j] - 1.0) * (g2a[j] - 1.0)
        den1 = sum(ps1[0:n1])
        den2 = sum(ps2[0:n2])
    else:
        g1a = g2a = ps1 = ps2 = psb = None
        den1 = den2 = 0.0
    num = 0.0

    def visit(ev: VisitEvent) -> None:
        nonlocal num, den1, den2
        d = ev.depth
        g = ev.repr
        one, two = g.one, g.two
        ch1, ch2 = one.chars, two.chars
        if exact:
            if one.present:
                den1 += ps1[d] * (1 - len(ch1))
            if two.present:
                den2 += ps2[d] * (1 - len(ch2))
            if one.present and two.present:
                num += psb[d] * (1 - _shared_letter_count(ch1, ch2))
        rm1 = len(ch1) >= 2
        rm2 = len(ch2) >= 2
        if not (rm1 or rm2):
            return
        kids = ev.children
        lm1 = lm2 = 0
        for kid in kids:
            lm1 += kid.one.present
            lm2 += kid.two.present
        mr1 = rm1 and lm1 >= 2
        mr2 = rm2 and lm2 >= 2
        if not (mr1 or mr2):
            return
        if exact:
            g1v = g1a[d + 2] if d + 2 <= n1 else 1.0
            g2v = g2a[d + 2] if d + 2 <= n2 else 1.0
            base_n = (g1v - 1.0) * (g2v - 1.0)
            base_1 = (g1v - 1.0) ** 2
            base_2 = (g2v - 1.0) ** 2
        else:
            g1v = g2v = 1.0
            base_n = base_1 = base_2 = 0.0
        f1 = one.freq if d else m1
        f2 = two.freq if d else m2
        w1 = _letter_blocks(one)
        w2 = _letter_blocks(two)
        letters = _union_letters(ch1, ch2)
        lefts = ev.lefts
        for i in range(len(lefts)):
            if lefts[i] == 0:
                continue
            kid = kids[i]
            fa1 = kid.one.freq
            fa2 = kid.two.freq
            x1d = _letter_blocks(kid.one)
            x2d = _letter_blocks(kid.two)
            for b in letters:
                wb1 = w1.get(b, 0)
                wb2 = w2.get(b, 0)
                x1 = x1d.get(b, 0)
                x2 = x2d.get(b, 0)
                z1 = g1v * (x1 * f1 / (fa1 * wb1)) - 1.0 if x1 else None
                z2 = g2v * (x2 * f2 / (fa2 * wb2)) - 1.0 if x2 else None
                if z1 is not None:
                    if z2 is not None:
                        num += z1 * z2 - base_n
                    elif fa2 and wb2:
                        num -= z1
                elif z2 is not None:
                    if fa1 and wb1:
                        num -= z2
                elif fa1 and wb1 and fa2 and wb2:
                    num += 1.0
                if mr1 and fa1:
                    if z1 is not None:
                        den1 += z1 * z1 - base_1
                    elif wb1:
                        den1 += 1.0
                if mr2 and fa2:
                    if z2 is not None:
                        den2 += z2 * z2 - base_2
                    elif wb2:
                        den2 += 1.0

    enumerate_generalized(index1, index2, visit)
    return _cosine(num, den1, den2)


# ---------------------------------------------------------------------------
# relative entropy and calibration


def kl_divergence_range(index: BwtIndex, k1: int, k2: int) -> list[float]:
    """KL divergence of k-mer probabilities from their Markov estimate.

    p(X) = f(X)/(n-k) against p(pre) p(suf) / p(mid) with each factor
    normalized by its own (n - length). Ratio terms differ from 1 only when
    the infix is a maximal repeat; all other k-mers contribute the length
    normalizer G(k), added in closed form. k beyond the text length gives 0.
    """
    if not 2 <= k1 <= k2:
        raise InputError("range must satisfy 2 <= k1 <= k2")
    n = index.n
    m = n - 1
    log2 = math.log2
    out = [0.0] * (k2 - k1 + 1)
    for k in range(k1, k2 + 1):
        if k <= m:
            out[k - k1] = log2((n - k + 1) ** 2 / ((n - k) * (n - k + 2)))

    def visit(ev: VisitEvent) -> None:
        d = ev.depth
        k = d + 2
        if k < k1 or k > k2 or k > m:
            return
        r = ev.repr
        fmid = r.freq if d else m
        blocks = _letter_blocks(r)
        denom = n - k
        slot = k - k1
        lefts = ev.lefts
        kids = ev.children
        for i in range(len(lefts)):
            if lefts[i] == 0:
                continue
            kid = kids[i]
            fa = kid.freq
            first = kid.first
            for j, b in enumerate(kid.chars):
                if b == 0:
                    continue
                x = first[j + 1] - first[j]
                out[slot] += (x / denom) * log2(x * fmid / (fa * blocks[b]))

    enumerate_maximal_repeats(index, visit)
    return out


def calibrate_kmax(index: BwtIndex, tau: float, kcap: int) -> int:
    """Smallest k in [2..kcap] whose KL tail sum drops below tau."""
    if not tau > 0:
        raise InputError("tau must be positive")
    if kcap < 2:
        raise InputError("kcap must be at least 2")
    kls = kl_divergence_range(index, 2, kcap)
    tail = 0.0
    tails = [0.0] * (kcap + 1)
    for k in range(kcap, 1, -1):
        tail += kls[k - 2]
        tails[k] = tail
    for k in range(2, kcap + 1):
        if tails[k] < tau:
            return k
    return kcap + 1


def calibrate_kmin(index: BwtIndex, kcap: int) -> int:
    """The k in [1..kcap] maximizing distinct k-mers of frequency >= 2."""
    if kcap < 1:
        raise InputError("kcap must be at least 1")
    profile = kmer_profile(index, 1, kcap, 2, 2)
    best_k = 1
    best = -1
    for k in range(1, kcap + 1):
        count = profile.cells[k - 1][0]
        if count > best:
            best = count
            best_k = k
    return best_k
