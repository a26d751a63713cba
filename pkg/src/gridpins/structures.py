"""Generators and maximal-size detectors for the named structures.

Canonical instances follow a fixed drawing convention: sawtooth teeth are
copies of 21 running to the north-east, with the monotone slicing sequence
below them.  Every other orientation is obtained by acting with a plot
symmetry on the canonical instance.
"""

from __future__ import annotations

from .errors import DomainError
from . import pins as _pins
from .perm import (
    PATTERN_21_SYMMETRIES,
    Permutation,
    apply_symmetry,
    contains,
    find_embedding,
    flatten,
    reverse,
)

SUM21 = "sum21"
SKEW12 = "skew12"
PARALLEL_SAWTOOTH = "parallel-sawtooth"
WEDGE_SAWTOOTH = "wedge-sawtooth"
SLICED_WEDGE = "sliced-wedge"
INCREASING_OSCILLATION = "oscillation"


def gen_monotone_sum(kind, k):
    """Sum of k copies of 21 (21 43 65 ...) or skew sum of k copies of 12."""
    if k < 1:
        raise DomainError("PARAM", "need k >= 1, got %d" % k)
    if kind == SUM21:
        out = []
        for i in range(1, k + 1):
            out += [2 * i, 2 * i - 1]
        return Permutation(out)
    if kind == SKEW12:
        out = []
        for i in range(k, 0, -1):
            out += [2 * i - 1, 2 * i]
        return Permutation(out)
    raise DomainError("PARAM", "unknown monotone sum kind %r" % (kind,))


def sum_of_21s(k):
    return gen_monotone_sum(SUM21, k)


def skew_of_12s(k):
    return gen_monotone_sum(SKEW12, k)


def gen_parallel_sawtooth(m, orient="id"):
    """Length-3m sawtooth: m teeth above an increasing slicing sequence."""
    if m < 1:
        raise DomainError("PARAM", "need m >= 1, got %d" % m)
    out = []
    for i in range(1, m + 1):
        out += [m + 2 * i, i, m + 2 * i - 1]
    return apply_symmetry(Permutation(out), orient)


def gen_wedge_sawtooth(m, orient="id"):
    """Length-3m sawtooth with a decreasing slicing sequence (not simple)."""
    if m < 1:
        raise DomainError("PARAM", "need m >= 1, got %d" % m)
    out = []
    for i in range(1, m + 1):
        out += [m + 2 * i, m + 1 - i, m + 2 * i - 1]
    return apply_symmetry(Permutation(out), orient)


def gen_sliced_wedge(m, slice_type, orient="id"):
    """Wedge sawtooth made simple by relocating one point of its first tooth.

    Type 1 pulls the first slicer below the whole slicing sequence, type 2
    pulls the low tooth point to the far right, type 3 replaces the first
    slicer by a new maximum.
    """
    if m < 2:
        raise DomainError("PARAM", "sliced wedge needs m >= 2, got %d" % m)
    wedge = list(gen_wedge_sawtooth(m))
    if slice_type == 1:
        vals = []
        for i in range(1, m + 1):
            slicer = 1 if i == 1 else m + 2 - i
            vals += [m + 2 * i, slicer, m + 2 * i - 1]
        out = Permutation(vals)
    elif slice_type == 2:
        moved = wedge.pop(2)  # the "2" of the leading 312 interval
        out = Permutation(wedge + [moved])
    elif slice_type == 3:
        wedge[1] = 3 * m + 1
        out = flatten(wedge)
    else:
        raise DomainError("PARAM", "sliced wedge type must be 1, 2 or 3")
    return apply_symmetry(out, orient)


def gen_increasing_oscillation(n, variant=1, orient="id"):
    """Oscillation of length n >= 3: a 21 extended by up/right pins only."""
    if n < 3:
        raise DomainError("PARAM", "oscillation needs n >= 3, got %d" % n)
    if variant not in (1, 2):
        raise DomainError("PARAM", "oscillation variant must be 1 or 2")
    first = "UR" if variant == 1 else "RU"
    dirs = "".join(first[i % 2] for i in range(n - 2))
    seq = _pins.realize_pin_word(_pins.PinWord("21", dirs))
    return apply_symmetry(seq.host, orient)


# ---------------------------------------------------------------------------
# detectors


def longest_sum21(perm, with_witness=False, at_least=None):
    """Largest k with a sum of k copies of 21 inside perm.

    Dynamic programming over inversions: an inversion may follow another when
    it lies strictly north-east of it.  Set at_least to stop as soon as a
    chain of that length is known to exist.
    """
    vals = tuple(perm)
    n = len(vals)
    invs = []
    for i in range(n):
        vi = vals[i]
        for j in range(i + 1, n):
            if vals[j] < vi:
                invs.append((i + 1, j + 1, vi, vals[j]))  # (pos_hi, pos_lo, hi, lo)
    invs.sort(key=lambda e: (e[1], e[0]))
    best_len = 0
    best_at = -1
    dp = []
    prev = []
    for b, (bi, bj, bhi, blo) in enumerate(invs):
        best = 1
        arg = -1
        for a in range(b):
            ai, aj, ahi, alo = invs[a]
            if aj < bi and ahi < blo and dp[a] + 1 > best:
                best = dp[a] + 1
                arg = a
        dp.append(best)
        prev.append(arg)
        if best > best_len:
            best_len = best
            best_at = b
            if at_least is not None and best_len >= at_least and not with_witness:
                return best_len
    if not with_witness:
        return best_len
    positions = []
    a = best_at
    while a >= 0:
        positions.extend((invs[a][0], invs[a][1]))
        a = prev[a]
    positions.sort()
    return best_len, tuple(positions)


def longest_skew12(perm, with_witness=False, at_least=None):
    """Largest k with a skew sum of k copies of 12 inside perm (via reversal)."""
    res = longest_sum21(reverse(perm), with_witness=with_witness, at_least=at_least)
    if not with_witness:
        return res
    k, positions = res
    n = len(perm)
    return k, tuple(sorted(n + 1 - p for p in positions))


def _max_param(perm, instance, start):
    """Largest m >= start with instance(m) contained in perm, else 0."""
    m = start
    best = 0
    while True:
        patt = instance(m)
        if len(patt) > len(perm) or not contains(perm, patt):
            return best
        best = m
        m += 1


def max_sawtooth(perm, kind, orient="id"):
    """Largest m whose length-3m sawtooth of this kind/orientation embeds."""
    if kind == PARALLEL_SAWTOOTH:
        return _max_param(perm, lambda m: gen_parallel_sawtooth(m, orient), 1)
    if kind == WEDGE_SAWTOOTH:
        return _max_param(perm, lambda m: gen_wedge_sawtooth(m, orient), 1)
    raise DomainError("PARAM", "unknown sawtooth kind %r" % (kind,))


def max_sliced_wedge(perm, slice_type, orient="id"):
    return _max_param(perm, lambda m: gen_sliced_wedge(m, slice_type, orient), 2)


def max_increasing_oscillation(perm):
    """Largest n >= 3 such that either oscillation variant embeds, else 0."""
    best = 0
    n = 3
    while n <= len(perm):
        if contains(perm, gen_increasing_oscillation(n, 1)) or contains(
            perm, gen_increasing_oscillation(n, 2)
        ):
            best = n
            n += 1
        else:
            break
    return best


def sawtooth_classes():
    """The eight (kind, orientation) classes entering rho.

    Orientations are restricted to the four symmetries that keep 21-patterns:
    the mirrored structures built from 12s are not counted.
    """
    return tuple(
        (kind, g)
        for kind in (PARALLEL_SAWTOOTH, WEDGE_SAWTOOTH)
        for g in PATTERN_21_SYMMETRIES
    )


def rho(perm):
    """Sum over the eight sawtooth classes of 3 * (maximal contained m)."""
    total = 0
    for kind, g in sawtooth_classes():
        total += 3 * max_sawtooth(perm, kind, g)
    return total


def detect(perm, kind, slice_type=None, orient="id"):
    """Maximal parameter plus one witness embedding for a structure kind."""
    if kind == SUM21:
        k, wit = longest_sum21(perm, with_witness=True)
        return k, wit
    if kind == SKEW12:
        k, wit = longest_skew12(perm, with_witness=True)
        return k, wit
    if kind == PARALLEL_SAWTOOTH or kind == WEDGE_SAWTOOTH:
        m = max_sawtooth(perm, kind, orient)
        gen = gen_parallel_sawtooth if kind == PARALLEL_SAWTOOTH else gen_wedge_sawtooth
        wit = find_embedding(perm, gen(m, orient)) if m else ()
        return m, wit or ()
    if kind == SLICED_WEDGE:
        if slice_type not in (1, 2, 3):
            raise DomainError("PARAM", "sliced wedge type must be 1, 2 or 3")
        m = max_sliced_wedge(perm, slice_type, orient)
        wit = find_embedding(perm, gen_sliced_wedge(m, slice_type, orient)) if m else ()
        return m, wit or ()
    if kind == INCREASING_OSCILLATION:
        n = max_increasing_oscillation(perm)
        if not n:
            return 0, ()
        for variant in (1, 2):
            wit = find_embedding(perm, gen_increasing_oscillation(n, variant))
            if wit:
                return n, wit
    raise DomainError("PARAM", "unknown structure kind %r" % (kind,))


def erdos_szekeres_extremal_length(m):
    """Longest sequence with no monotone subsequence of length m, exhaustively.

    Explores every rank-insertion extension that still avoids an increasing
    and a decreasing run of length m; the search tree covers all avoiders, so
    the returned maximum is exact ((m-1)^2 by the classical theorem).
    """
    if m < 2:
        raise DomainError("PARAM", "need m >= 2")
    best = 0

    def lis_bounded(seq, bound, sign):
        # longest monotone run capped at bound; O(n^2) is fine at these sizes
        best_run = 0
        runs = []
        for i, v in enumerate(seq):
            r = 1
            for j in range(i):
                if (seq[j] < v if sign > 0 else seq[j] > v) and runs[j] + 1 > r:
                    r = runs[j] + 1
            runs.append(r)
            if r > best_run:
                best_run = r
                if best_run >= bound:
                    return best_run
        return best_run

    def grow(seq):
        nonlocal best
        if len(seq) > best:
            best = len(seq)
        for rank in range(len(seq) + 1):
            nxt = [v if v < rank + 1 else v + 1 for v in seq] + [rank + 1]
            if lis_bounded(nxt, m, +1) < m and lis_bounded(nxt, m, -1) < m:
                grow(nxt)

    grow([])
    return best
