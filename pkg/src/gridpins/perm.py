"""Permutation kernel: plots, hulls, slicing, intervals, simplicity, inflation.

A permutation of length n is kept in one-line notation over {1..n}; its plot
is the point set {(i, values[i])}.  Rectangles use half-integer bounds so that
no boundary ever passes through a point, which turns every region test into a
strict comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

# region tags for region_of()
NE, NW, SE, SW = "NE", "NW", "SE", "SW"
SLICE_V, SLICE_H, INSIDE = "SLICE_V", "SLICE_H", "INSIDE"

SYMMETRIES = ("id", "rev", "comp", "r180", "inv", "anti", "r90", "r270")
# the four symmetries that map 21-patterns to 21-patterns
PATTERN_21_SYMMETRIES = ("id", "r180", "inv", "anti")


class Permutation(tuple):
    """One-line notation, 1-based values: Permutation([2, 4, 1, 3])."""

    def __new__(cls, values):
        vals = tuple(int(v) for v in values)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise DomainError("PARSE", "not a permutation of 1..%d: %r" % (len(vals), vals))
        return super().__new__(cls, vals)

    def __str__(self):
        return " ".join(str(v) for v in self)

    def __repr__(self):
        return "Permutation(%r)" % (list(self),)

    def __getnewargs__(self):
        return (tuple(self),)

    def points(self):
        return tuple((i, v) for i, v in enumerate(self, 1))


def parse_permutation(text):
    """Parse one-line notation: "2 4 1 3", "2,4,1,3", or compact "2413"."""
    parts = text.replace(",", " ").split()
    if not parts:
        raise DomainError("PARSE", "empty permutation text")
    if len(parts) == 1 and parts[0].isdigit() and len(parts[0]) > 1:
        return Permutation(int(ch) for ch in parts[0])
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise DomainError("PARSE", "non-integer entry in %r" % text) from None
    return Permutation(values)


def flatten(values):
    """Order-isomorphic relabelling of distinct values onto 1..n."""
    vals = list(values)
    rank = {v: r for r, v in enumerate(sorted(vals), 1)}
    return Permutation(rank[v] for v in vals)


def flatten_points(points):
    """Flatten a set of points with distinct coordinates to a Permutation.

    Returns (perm, order) where order[k] is the 1-based position that the
    k-th input point occupies in the flattened permutation.
    """
    pts = list(points)
    xs = sorted(p[0] for p in pts)
    ys = sorted(p[1] for p in pts)
    xpos = {x: i for i, x in enumerate(xs, 1)}
    yval = {y: i for i, y in enumerate(ys, 1)}
    vals = [0] * len(pts)
    order = []
    for x, y in pts:
        vals[xpos[x] - 1] = yval[y]
        order.append(xpos[x])
    return Permutation(vals), tuple(order)


def increasing(n):
    return Permutation(range(1, n + 1))


def decreasing(n):
    return Permutation(range(n, 0, -1))


def iter_permutations(n):
    for vals in itertools.permutations(range(1, n + 1)):
        yield Permutation(vals)


# ---------------------------------------------------------------------------
# rectangles and regions


@dataclass(frozen=True)
class Rectangle:
    """Axes-parallel box with half-integer bounds."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self):
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise DomainError("PARAM", "degenerate rectangle %r" % (self,))

    def contains(self, point):
        x, y = point
        return self.x_lo < x < self.x_hi and self.y_lo < y < self.y_hi


def rect_hull(points):
    """Smallest half-integer rectangle tightly enclosing the given points."""
    pts = list(points)
    if not pts:
        raise DomainError("EMPTY_SET", "rectangular hull of no points")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return Rectangle(min(xs) - 0.5, max(xs) + 0.5, min(ys) - 0.5, max(ys) + 0.5)


def region_of(point, rect):
    """Classify a point against a rectangle: corner, slice, or inside."""
    x, y = point
    in_x = rect.x_lo < x < rect.x_hi
    in_y = rect.y_lo < y < rect.y_hi
    if in_x and in_y:
        return INSIDE
    if in_x:
        return SLICE_V
    if in_y:
        return SLICE_H
    if x > rect.x_hi:
        return NE if y > rect.y_hi else SE
    return NW if y > rect.y_hi else SW


def slices(point, rect):
    return region_of(point, rect) in (SLICE_V, SLICE_H)


def restrict(perm, rect):
    """The permutation order-isomorphic to the points of perm inside rect."""
    inside = [(i, v) for i, v in perm.points() if rect.contains((i, v))]
    if not inside:
        raise DomainError("EMPTY_SET", "no points of %s inside %r" % (perm, rect))
    return flatten(v for _, v in inside)


# ---------------------------------------------------------------------------
# intervals and simplicity


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int
    v_lo: int
    v_hi: int

    def __len__(self):
        return self.hi - self.lo + 1


def intervals(perm):
    """All intervals of perm, by the O(n^2) position-window scan."""
    n = len(perm)
    if n < 1:
        raise DomainError("EMPTY_SET", "intervals of the empty permutation")
    out = []
    vals = tuple(perm)
    for i in range(1, n + 1):
        lo = hi = vals[i - 1]
        for j in range(i, n + 1):
            v = vals[j - 1]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == j - i:
                out.append(Interval(i, j, lo, hi))
    return out


def is_simple(perm):
    """True iff the only intervals are singletons and the whole, and perm != 1."""
    vals = tuple(perm)
    n = len(vals)
    if n < 2:
        return False
    for i in range(n):
        lo = hi = vals[i]
        for j in range(i + 1, n):
            v = vals[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == j - i and j - i < n - 1:
                return False
    return True


@lru_cache(maxsize=None)
def simple_permutations(n):
    """All simple permutations of length n, in lexicographic order."""
    return tuple(p for p in iter_permutations(n) if is_simple(p))


# ---------------------------------------------------------------------------
# inflation and the substitution decomposition


def inflate(skeleton, parts):
    """Replace each entry of the skeleton by an interval copy of parts[i]."""
    parts = [Permutation(p) if not isinstance(p, Permutation) else p for p in parts]
    if len(parts) != len(skeleton):
        raise DomainError("ARITY", "need %d parts, got %d" % (len(skeleton), len(parts)))
    if any(len(p) == 0 for p in parts):
        raise DomainError("ARITY", "empty inflation part")
    # value offset for the block inflating entry i: total size of blocks
    # whose skeleton value is smaller
    sizes_by_value = [0] * (len(skeleton) + 1)
    for i, v in enumerate(skeleton):
        sizes_by_value[v] = len(parts[i])
    offset = [0] * (len(skeleton) + 1)
    acc = 0
    for v in range(1, len(skeleton) + 1):
        offset[v] = acc
        acc += sizes_by_value[v]
    out = []
    for i, v in enumerate(skeleton):
        base = offset[v]
        out.extend(base + x for x in parts[i])
    return Permutation(out)


def sum_components(perm):
    """Finest decomposition into sum-indecomposable layers (length >= 1)."""
    blocks = []
    start = 1
    mx = 0
    for i, v in enumerate(perm, 1):
        if v > mx:
            mx = v
        if mx == i:
            blocks.append(Permutation(x - (start - 1) for x in perm[start - 1 : i]))
            start = i + 1
    return blocks


def skew_components(perm):
    """Finest decomposition into skew-indecomposable layers."""
    n = len(perm)
    blocks = []
    start = 1
    mn = n + 1
    for i, v in enumerate(perm, 1):
        if v < mn:
            mn = v
        if mn == n - i + 1:
            blocks.append(Permutation(x - (n - i) for x in perm[start - 1 : i]))
            start = i + 1
    return blocks


@dataclass(frozen=True)
class Decomposition:
    """Substitution decomposition: a skeleton plus the inflating parts.

    kind is "simple" (skeleton a simple permutation of length >= 4),
    "increasing" or "decreasing" (monotone skeleton, finest layering).
    """

    kind: str
    skeleton: Permutation
    parts: tuple

    def reassemble(self):
        return inflate(self.skeleton, self.parts)


def substitution_decompose(perm):
    if len(perm) < 2:
        raise DomainError("TOO_SHORT", "cannot decompose a permutation of length < 2")
    sc = sum_components(perm)
    if len(sc) > 1:
        return Decomposition("increasing", increasing(len(sc)), tuple(sc))
    kc = skew_components(perm)
    if len(kc) > 1:
        return Decomposition("decreasing", decreasing(len(kc)), tuple(kc))
    # sum- and skew-indecomposable: unique simple skeleton of length >= 4,
    # whose parts are the maximal proper intervals (pairwise disjoint here)
    proper = [iv for iv in intervals(perm) if len(iv) < len(perm)]
    maximal = [
        iv
        for iv in proper
        if not any(o is not iv and o.lo <= iv.lo and iv.hi <= o.hi for o in proper)
    ]
    maximal.sort(key=lambda iv: iv.lo)
    parts = []
    pos = 1
    for iv in maximal:
        if iv.lo != pos:
            raise DomainError("PARAM", "interval structure of %s is inconsistent" % (perm,))
        parts.append(flatten(perm[iv.lo - 1 : iv.hi]))
        pos = iv.hi + 1
    skeleton = flatten(perm[iv.lo - 1] for iv in maximal)
    if len(skeleton) < 4 or not is_simple(skeleton):
        raise DomainError("PARAM", "no simple skeleton found for %s" % (perm,))
    return Decomposition("simple", skeleton, tuple(parts))


# ---------------------------------------------------------------------------
# pattern containment


def find_embedding(perm, pattern, required_pos=None):
    """Positions (1-based, increasing) of an occurrence of pattern in perm.

    Backtracking over host positions with position/value-window pruning.  If
    required_pos is given, only occurrences using that host position count.
    Returns None when there is no occurrence.
    """
    pattern = tuple(pattern)
    k = len(pattern)
    if k < 1:
        raise DomainError("PARAM", "pattern must be nonempty")
    host = tuple(perm)
    n = len(host)
    if k > n:
        return None
    chosen = [0] * k  # host positions
    values = [0] * k  # host values

    def extend(t, start):
        if t == k:
            return required_pos is None or required_pos in chosen
        if n - start + 1 < k - t:
            return False
        if required_pos is not None and start > required_pos and required_pos not in chosen[:t]:
            return False
        pt = pattern[t]
        for j in range(start, n + 1):
            w = host[j - 1]
            ok = True
            for s in range(t):
                if (pattern[s] < pt) != (values[s] < w):
                    ok = False
                    break
            if ok:
                chosen[t] = j
                values[t] = w
                if extend(t + 1, j + 1):
                    return True
        chosen[t] = 0
        return False

    if extend(0, 1):
        return tuple(chosen)
    return None


def contains(perm, pattern, required_pos=None):
    return find_embedding(perm, pattern, required_pos) is not None


# ---------------------------------------------------------------------------
# the dihedral symmetries of the plot


def _sym_point(g, n, x, y):
    if g == "id":
        return (x, y)
    if g == "rev":
        return (n + 1 - x, y)
    if g == "comp":
        return (x, n + 1 - y)
    if g == "r180":
        return (n + 1 - x, n + 1 - y)
    if g == "inv":
        return (y, x)
    if g == "anti":
        return (n + 1 - y, n + 1 - x)
    if g == "r90":  # clockwise quarter turn
        return (y, n + 1 - x)
    if g == "r270":
        return (n + 1 - y, x)
    raise DomainError("PARAM", "unknown symmetry %r" % (g,))


def apply_symmetry(perm, g):
    """Apply one of the eight plot symmetries (see SYMMETRIES)."""
    n = len(perm)
    pts = [_sym_point(g, n, i, v) for i, v in perm.points()]
    vals = [0] * n
    for x, y in pts:
        vals[x - 1] = y
    return Permutation(vals)


def reverse(perm):
    return apply_symmetry(perm, "rev")


def complement(perm):
    return apply_symmetry(perm, "comp")


def inverse(perm):
    return apply_symmetry(perm, "inv")


def symmetry_orbit(perm):
    """The distinct images of perm under all eight symmetries."""
    seen = []
    for g in SYMMETRIES:
        q = apply_symmetry(perm, g)
        if q not in seen:
            seen.append(q)
    return tuple(seen)
