"""Proper pin sequence engine.

A pin sequence in a host permutation is a list of plot points p1, p2, ...
where each later point slices the rectangular hull of its predecessors.  A
proper sequence additionally satisfies maximality (no point further out in
the pin's direction also slices that hull) and separation (each pin lands
strictly between the previous hull and the previous pin, in the previous
pin's direction coordinate).

Points are referred to by their 1-based plot position in the host.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .errors import DomainError
from .perm import Permutation, flatten_points, is_simple

LEFT, RIGHT, UP, DOWN = "L", "R", "U", "D"
OPPOSITE = {"L": "R", "R": "L", "U": "D", "D": "U"}
CW_NEXT = {"L": "U", "U": "R", "R": "D", "D": "L"}
CCW_NEXT = {"L": "D", "D": "R", "R": "U", "U": "L"}


@dataclass(frozen=True)
class PinSequence:
    host: Permutation
    indices: tuple  # 1-based plot positions, in pin order
    directions: tuple  # per pin: None for p1/p2, else 'L'/'R'/'U'/'D'

    def __len__(self):
        return len(self.indices)

    def points(self):
        return tuple((i, self.host[i - 1]) for i in self.indices)


@dataclass(frozen=True)
class PinViolation:
    clause: str  # SLICING, MAXIMALITY or SEPARATION
    index: int  # 1-based position in the sequence of the offending pin


class InvalidPinSequence(DomainError):
    def __init__(self, violation):
        super().__init__(violation.clause, "pin %d violates %s" % (violation.index, violation.clause))
        self.violation = violation


def _analyze(host, indices):
    """Assign directions and find the first violated clause, if any."""
    pts = [(i, host[i - 1]) for i in indices]
    directions = [None, None]
    (x1, y1), (x2, y2) = pts[0], pts[1]
    xlo, xhi = min(x1, x2), max(x1, x2)
    ylo, yhi = min(y1, y2), max(y1, y2)
    prev = (xlo, xhi, ylo, yhi)  # hull before the previous pin
    n = len(host)
    for t in range(2, len(pts)):
        x, y = pts[t]
        if xlo < x < xhi and not (ylo <= y <= yhi):
            d = UP if y > yhi else DOWN
        elif ylo < y < yhi and not (xlo <= x <= xhi):
            d = RIGHT if x > xhi else LEFT
        else:
            return directions, PinViolation("SLICING", t + 1)
        # maximality: nothing beyond this pin in its direction slices the hull
        for qx in range(1, n + 1):
            qy = host[qx - 1]
            if (
                (d == RIGHT and qx > x)
                or (d == LEFT and qx < x)
                or (d == UP and qy > y)
                or (d == DOWN and qy < y)
            ):
                if (xlo < qx < xhi and not (ylo <= qy <= yhi)) or (
                    ylo < qy < yhi and not (xlo <= qx <= xhi)
                ):
                    return directions, PinViolation("MAXIMALITY", t + 1)
        # separation from the previous pin, in its direction coordinate
        dprev = directions[t - 1]
        if dprev is not None:
            px, py = pts[t - 1]
            pxlo, pxhi, pylo, pyhi = prev
            if dprev == RIGHT:
                ok = pxhi < x < px
            elif dprev == LEFT:
                ok = px < x < pxlo
            elif dprev == UP:
                ok = pyhi < y < py
            else:
                ok = py < y < pylo
            if not ok:
                return directions, PinViolation("SEPARATION", t + 1)
        directions.append(d)
        prev = (xlo, xhi, ylo, yhi)
        xlo, xhi = min(xlo, x), max(xhi, x)
        ylo, yhi = min(ylo, y), max(yhi, y)
    return directions, None


def pin_violation(host, indices):
    """First violated clause of a candidate sequence, or None when proper."""
    indices = tuple(indices)
    if len(indices) < 2:
        raise DomainError("PARAM", "a pin sequence needs at least 2 points")
    if len(set(indices)) != len(indices):
        raise DomainError("PARAM", "repeated point in pin sequence")
    if not all(1 <= i <= len(host) for i in indices):
        raise DomainError("PARAM", "point index out of range")
    _, violation = _analyze(host, indices)
    return violation


def validate_pin_sequence(host, indices):
    """Return the validated PinSequence, or raise InvalidPinSequence."""
    indices = tuple(indices)
    violation = pin_violation(host, indices)
    if violation is not None:
        raise InvalidPinSequence(violation)
    directions, _ = _analyze(host, indices)
    return PinSequence(host, indices, tuple(directions))


# ---------------------------------------------------------------------------
# enumeration and right-reaching search


def _extensions(host, state):
    """Valid one-pin extensions of an enumeration state.

    state = (indices, hull, prev_hull, last_dir); hull components are ints.
    """
    indices, hull, prev, last_dir = state
    xlo, xhi, ylo, yhi = hull
    n = len(host)
    used = set(indices)
    lastx = indices[-1]
    lasty = host[lastx - 1]
    out = []
    for x in range(1, n + 1):
        if x in used:
            continue
        y = host[x - 1]
        if xlo < x < xhi and not (ylo <= y <= yhi):
            d = UP if y > yhi else DOWN
        elif ylo < y < yhi and not (xlo <= x <= xhi):
            d = RIGHT if x > xhi else LEFT
        else:
            continue
        if last_dir is not None:
            pxlo, pxhi, pylo, pyhi = prev
            if last_dir == RIGHT:
                ok = pxhi < x < lastx
            elif last_dir == LEFT:
                ok = lastx < x < pxlo
            elif last_dir == UP:
                ok = pyhi < y < lasty
            else:
                ok = lasty < y < pylo
            if not ok:
                continue
        maximal = True
        for qx in range(1, n + 1):
            qy = host[qx - 1]
            if (
                (d == RIGHT and qx > x)
                or (d == LEFT and qx < x)
                or (d == UP and qy > y)
                or (d == DOWN and qy < y)
            ):
                if (xlo < qx < xhi and not (ylo <= qy <= yhi)) or (
                    ylo < qy < yhi and not (xlo <= qx <= xhi)
                ):
                    maximal = False
                    break
        if not maximal:
            continue
        nhull = (min(xlo, x), max(xhi, x), min(ylo, y), max(yhi, y))
        out.append(((indices + (x,), nhull, hull, d), d))
    return out


def _start_state(host, p1, p2):
    y1, y2 = host[p1 - 1], host[p2 - 1]
    hull = (min(p1, p2), max(p1, p2), min(y1, y2), max(y1, y2))
    return ((p1, p2), hull, None, None)


def iter_pin_sequences(host, p1=None, p2=None, max_len=None):
    """Depth-first enumeration of every proper pin sequence (length >= 2).

    With p1/p2 given, only sequences starting with that ordered pair; else
    all ordered start pairs are explored.
    """
    n = len(host)
    limit = n if max_len is None else min(max_len, n)
    if limit < 2:
        return
    if p1 is not None:
        if p1 == p2:
            raise DomainError("PARAM", "start points must differ")
        starts = [(p1, p2)]
    else:
        starts = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    for a, b in starts:
        stack = [(_start_state(host, a, b), (None, None))]
        while stack:
            state, dirs = stack.pop()
            yield PinSequence(host, state[0], dirs)
            if len(state[0]) < limit:
                for nxt, d in reversed(_extensions(host, state)):
                    stack.append((nxt, dirs + (d,)))


def right_reaching(host, p1, p2):
    """Shortest proper pin sequence from (p1, p2) ending at the rightmost point.

    Breadth-first, trying candidate points in plot order, so the result is
    the lexicographically least among the shortest.  Raises NOT_FOUND when no
    such sequence exists (never for a simple host, by design).
    """
    n = len(host)
    if p1 == p2 or not (1 <= p1 <= n and 1 <= p2 <= n):
        raise DomainError("PARAM", "bad start pair (%d, %d)" % (p1, p2))
    if p1 == n:
        raise DomainError("PARAM", "p1 is already the rightmost point")
    state = _start_state(host, p1, p2)
    if p2 == n:
        return PinSequence(host, state[0], (None, None))
    queue = deque([(state, (None, None))])
    while queue:
        state, dirs = queue.popleft()
        for nxt, d in _extensions(host, state):
            if nxt[0][-1] == n:
                return PinSequence(host, nxt[0], dirs + (d,))
            queue.append((nxt, dirs + (d,)))
    raise DomainError("NOT_FOUND", "no right-reaching pin sequence from (%d, %d)" % (p1, p2))


# ---------------------------------------------------------------------------
# turns, spirals, pin words


def count_turns(seq):
    """Pins whose direction repeats the direction two pins back."""
    d = seq.directions
    return sum(1 for t in range(4, len(d)) if d[t] is not None and d[t] == d[t - 2])


@dataclass(frozen=True)
class SpiralInfo:
    is_spiral: bool
    chirality: str  # "cw", "ccw", or None when too short to tell
    phase: str  # first pin direction, or None


def classify_spiral(seq):
    """A spiral is turn-free and cycles through the four directions."""
    ds = [d for d in seq.directions if d is not None]
    if count_turns(seq):
        return SpiralInfo(False, None, None)
    if not ds:
        return SpiralInfo(True, None, None)
    if len(ds) == 1:
        return SpiralInfo(True, None, ds[0])
    if all(CW_NEXT[a] == b for a, b in zip(ds, ds[1:])):
        return SpiralInfo(True, "cw", ds[0])
    if all(CCW_NEXT[a] == b for a, b in zip(ds, ds[1:])):
        return SpiralInfo(True, "ccw", ds[0])
    return SpiralInfo(False, None, None)


def check_pinseq_properties(seq):
    """The four structural clauses every proper pin sequence satisfies.

    (a) consecutive pins never share or oppose a direction;
    (b) no pin slices the hull two steps back;
    (c) consecutive pins are separated by the previous pin or by every
        earlier one (a point separates two others when one of its
        coordinates lies strictly between theirs);
    (d) the points, or the points minus p1, or minus p2, form a simple
        permutation.  This clause needs at least 5 pins: a 4-point set may
        flatten to a one-interval permutation while its 3-point subsets can
        never be simple (witness: points (1,2),(2,4),(5,3),(4,5) of the
        simple host 2 4 1 5 3).  Values reported here are the raw truth;
        callers asserting (d) should skip 4-pin sequences.
    """
    pts = list(seq.points())
    dirs = seq.directions
    m = len(pts)

    a = all(
        dirs[t] is None or dirs[t + 1] not in (dirs[t], OPPOSITE[dirs[t]])
        for t in range(m - 1)
    )

    b = True
    for t in range(3, m):
        hx = [p[0] for p in pts[: t - 1]]
        hy = [p[1] for p in pts[: t - 1]]
        x, y = pts[t]
        if (min(hx) < x < max(hx) and not (min(hy) <= y <= max(hy))) or (
            min(hy) < y < max(hy) and not (min(hx) <= x <= max(hx))
        ):
            b = False
            break

    def separates(z, u, v):
        return (min(u[0], v[0]) < z[0] < max(u[0], v[0])) or (
            min(u[1], v[1]) < z[1] < max(u[1], v[1])
        )

    c = True
    for t in range(2, m - 1):
        u, v = pts[t], pts[t + 1]
        if not separates(pts[t - 1], u, v) and not all(
            separates(z, u, v) for z in pts[: t - 1]
        ):
            c = False
            break

    def simple_points(ps):
        if len(ps) < 2:
            return True
        perm, _ = flatten_points(ps)
        return is_simple(perm)

    d = simple_points(pts) or simple_points(pts[1:]) or simple_points(pts[:1] + pts[2:])
    return {"a": a, "b": b, "c": c, "d": d}


@dataclass(frozen=True)
class PinWord:
    start: str  # "12" or "21"
    directions: str  # over L, R, U, D

    def __post_init__(self):
        if self.start not in ("12", "21"):
            raise DomainError("BAD_WORD", "start must be 12 or 21")
        prev = None
        for ch in self.directions:
            if ch not in "LRUD":
                raise DomainError("BAD_WORD", "bad direction %r" % ch)
            if prev is not None and ch in (prev, OPPOSITE[prev]):
                raise DomainError(
                    "BAD_WORD", "direction %s may not follow %s" % (ch, prev)
                )
            prev = ch


def iter_pin_words(max_dirs):
    """All realizable pin words with at most max_dirs directions."""
    for start in ("12", "21"):
        yield PinWord(start, "")
        frontier = [""]
        for _ in range(max_dirs):
            nxt = []
            for w in frontier:
                for ch in "LRUD":
                    if w and ch in (w[-1], OPPOSITE[w[-1]]):
                        continue
                    nxt.append(w + ch)
                    yield PinWord(start, w + ch)
            frontier = nxt


def _realize_points(word):
    """Place pins in the plane for a word; coordinates stay dyadic, so exact
    binary floats are safe here."""
    if word.start == "21":
        pts = [(0.0, 1.0), (1.0, 0.0)]
    else:
        pts = [(0.0, 0.0), (1.0, 1.0)]
    prev_hull = None
    prev_dir = None
    for d in word.directions:
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        hull = (min(xs), max(xs), min(ys), max(ys))
        if d in (UP, DOWN):
            main = hull[3] + 1.0 if d == UP else hull[2] - 1.0
            if prev_dir is None:
                lo, hi = sorted((pts[0][0], pts[1][0]))
            elif prev_dir == RIGHT:
                lo, hi = prev_hull[1], pts[-1][0]
            else:
                lo, hi = pts[-1][0], prev_hull[0]
            off = (lo + hi) / 2.0
            while off in xs:
                off = (off + lo) / 2.0
            new = (off, main)
        else:
            main = hull[1] + 1.0 if d == RIGHT else hull[0] - 1.0
            if prev_dir is None:
                lo, hi = sorted((pts[0][1], pts[1][1]))
            elif prev_dir == UP:
                lo, hi = prev_hull[3], pts[-1][1]
            else:
                lo, hi = pts[-1][1], prev_hull[2]
            off = (lo + hi) / 2.0
            while off in ys:
                off = (off + lo) / 2.0
            new = (main, off)
        prev_hull = hull
        prev_dir = d
        pts.append(new)
    return pts


def realize_pin_word(word):
    """Canonical geometric realization of a pin word, flattened to a host."""
    pts = _realize_points(word)
    host, order = flatten_points(pts)
    dirs = (None, None) + tuple(word.directions)
    return PinSequence(host, order, dirs)


# ---------------------------------------------------------------------------
# spiral extensions

T1_PLACEMENTS = ("next", "both", "prev")
T2_PLACEMENTS = ("below", "beside")

# frame transforms mapping (chirality, pin direction) to the canonical picture
# where the extended pin is a right pin preceded by an up pin; matrices act as
# (x, y) -> (a x + b y, c x + d y)
_FRAMES = {
    ("cw", RIGHT): (1, 0, 0, 1),
    ("cw", DOWN): (0, -1, 1, 0),
    ("cw", LEFT): (-1, 0, 0, -1),
    ("cw", UP): (0, 1, -1, 0),
    ("ccw", RIGHT): (1, 0, 0, -1),
    ("ccw", UP): (0, 1, 1, 0),
    ("ccw", LEFT): (-1, 0, 0, 1),
    ("ccw", DOWN): (0, -1, -1, 0),
}


def _apply_frame(m, pt):
    a, b, c, d = m
    x, y = pt
    return (a * x + b * y, c * x + d * y)


def _invert_frame(m):
    a, b, c, d = m
    det = a * d - b * c  # always +-1 here
    return (d * det, -b * det, -c * det, a * det)


@dataclass(frozen=True)
class ExtensionRecord:
    pin: int  # 1-based position of the extended pin in the sequence
    ext_type: int  # 1 or 2
    points: tuple  # host plot positions of the added point(s)
    branch: str = ""  # for type 2: which alternative of the slicing clause held


def _pair_is_21(p, q):
    (lx, ly), (rx, ry) = sorted((p, q))
    return ly > ry


def _slicers(rect_pts, pool):
    """Points of pool slicing the hull of rect_pts (pool excludes rect_pts)."""
    xs = [p[0] for p in rect_pts]
    ys = [p[1] for p in rect_pts]
    xlo, xhi, ylo, yhi = min(xs), max(xs), min(ys), max(ys)
    out = []
    for q in pool:
        x, y = q
        if (xlo < x < xhi and not (ylo <= y <= yhi)) or (
            ylo < y < yhi and not (xlo <= x <= xhi)
        ):
            out.append(q)
    return out


def _separates(z, u, v):
    return (min(u[0], v[0]) < z[0] < max(u[0], v[0])) or (
        min(u[1], v[1]) < z[1] < max(u[1], v[1])
    )


def _check_type1(all_pts, pin_pts, i0, q):
    """Type 1 clause set in canonical coordinates for pin index i0 (0-based)."""
    pi = pin_pts[i0]
    if not _pair_is_21(pi, q):
        return False
    allowed = {pin_pts[i0 - 1]}
    if i0 + 1 < len(pin_pts):
        allowed.add(pin_pts[i0 + 1])
    sl = _slicers((pi, q), [p for p in all_pts if p != pi and p != q])
    return bool(sl) and all(s in allowed for s in sl)


def _check_type2(all_pts, pin_pts, i0, q, r, s):
    """Type 2 clause set; returns the slicing branch ("prev"/"next") or None."""
    if i0 + 1 >= len(pin_pts):
        return None
    pi = pin_pts[i0]
    pi1 = pin_pts[i0 + 1]
    q, r = sorted((q, r))
    if not (q[1] > r[1]):  # the added pair must read as a 21
        return None
    # clause: pair sits SW of the pin, NE of the hull two pins back
    hx = max(p[0] for p in pin_pts[: i0 - 1])
    hy = max(p[1] for p in pin_pts[: i0 - 1])
    for z in (q, r):
        if not (z[0] < pi[0] and z[1] < pi[1] and z[0] > hx and z[1] > hy):
            return None
    others = [p for p in all_pts if p not in (q, r)]
    if _slicers((q, r), others) != [s]:
        return None
    # clause: the following pin separates the pair from the pin and is the
    # only pin besides s slicing their joint hull
    if not (_separates(pi1, pi, q) and _separates(pi1, pi, r)):
        return None
    pin_slicers = _slicers((pi, q, r), [p for p in pin_pts if p != pi])
    if pin_slicers != [pi1]:
        return None
    # clause: s pairs with the previous or the following pin
    pim1 = pin_pts[i0 - 1]
    if _pair_is_21(pim1, s):
        sl = _slicers((pim1, s), [p for p in pin_pts if p != pim1])
        if all(p == pi for p in sl):
            return "prev"
    if _pair_is_21(s, pi1):
        sl = _slicers((pi1, s), [p for p in pin_pts if p != pi1])
        nxt = pin_pts[i0 + 2] if i0 + 2 < len(pin_pts) else None
        if all(p == nxt for p in sl):
            return "next"
    return None


def _frame_views(seq):
    """(chirality, frame-by-pin-direction) choices for a spiral sequence."""
    info = classify_spiral(seq)
    if not info.is_spiral:
        raise DomainError("PARAM", "pin sequence is not a spiral")
    if info.chirality is not None:
        return (info.chirality,)
    return ("cw", "ccw")


def find_extensions(host, seq):
    """All single points (type 1) and triples (type 2) of the host satisfying
    an extension clause set relative to some pin of the given spiral."""
    pin_idx = set(seq.indices)
    extras = [(i, host[i - 1]) for i in range(1, len(host) + 1) if i not in pin_idx]
    records = []
    seen = set()
    for chir in _frame_views(seq):
        for t in range(2, len(seq.indices)):
            d = seq.directions[t]
            frame = _FRAMES[(chir, d)]
            pin_pts = [_apply_frame(frame, p) for p in seq.points()]
            extra_pts = [(_apply_frame(frame, (i, v)), i) for i, v in extras]
            all_pts = pin_pts + [p for p, _ in extra_pts]
            for qp, qi in extra_pts:
                if _check_type1(all_pts, pin_pts, t, qp):
                    key = (t + 1, 1, (qi,), "")
                    if key not in seen:
                        seen.add(key)
                        records.append(ExtensionRecord(t + 1, 1, (qi,)))
            for (qp, qi), (rp, ri) in itertools.combinations(extra_pts, 2):
                for sp, si in extra_pts:
                    if si in (qi, ri):
                        continue
                    branch = _check_type2(all_pts, pin_pts, t, qp, rp, sp)
                    if branch:
                        key = (t + 1, 2, tuple(sorted((qi, ri, si))), branch)
                        if key not in seen:
                            seen.add(key)
                            records.append(
                                ExtensionRecord(t + 1, 2, tuple(sorted((qi, ri, si))), branch)
                            )
    return records


def extension_count(records):
    """Largest set of records on pairwise distinct pins with disjoint points."""
    best = 0
    recs = list(records)

    def grow(idx, pins, used, count):
        nonlocal best
        if count > best:
            best = count
        if count + len(recs) - idx <= best:
            return
        for j in range(idx, len(recs)):
            r = recs[j]
            if r.pin in pins or used & set(r.points):
                continue
            grow(j + 1, pins | {r.pin}, used | set(r.points), count + 1)

    grow(0, set(), set(), 0)
    return best


# ---------------------------------------------------------------------------
# spiral generation


def spiral_word(length, chirality="cw"):
    """Canonical spiral pin word of the given total length (>= 4).

    The start pair orientation is chosen so the realized permutation is
    simple; from length 7 on this is the 12 start drawn in the reference
    pictures (mirrored for the other chirality).
    """
    if length < 4:
        raise DomainError("PARAM", "spiral needs length >= 4")
    if chirality not in ("cw", "ccw"):
        raise DomainError("PARAM", "chirality must be cw or ccw")
    cycle = "URDL" if chirality == "cw" else "ULDR"
    dirs = "".join(cycle[i % 4] for i in range(length - 2))
    if length in (4, 6):
        start = "21" if chirality == "cw" else "12"
    else:
        start = "12" if chirality == "cw" else "21"
    return PinWord(start, dirs)


def gen_spiral(length, chirality="cw"):
    return realize_pin_word(spiral_word(length, chirality))


def _mid(lo, hi, taken):
    if not lo < hi:
        raise DomainError("PLACEMENT", "empty placement interval")
    x = (lo + hi) / 2.0
    while x in taken:
        x = (x + lo) / 2.0
    return x


def _at(lo, hi, num, den, taken):
    if not lo < hi:
        raise DomainError("PLACEMENT", "empty placement interval")
    x = lo + (hi - lo) * num / den
    while x in taken:
        x = (x + lo) / 2.0
    return x


def _place_extension(pts, extras, chirality, pin, ext_type, choice):
    """Compute the new point(s) for one extension, in plane coordinates."""
    m = len(pts)
    i0 = pin - 1
    seq_dirs = _spiral_dirs(m, chirality)
    frame = _FRAMES[(chirality, seq_dirs[i0])]
    inv = _invert_frame(frame)
    fp = [_apply_frame(frame, p) for p in pts]
    fx = [p[0] for p in fp]
    fy = [p[1] for p in fp]
    fe = [_apply_frame(frame, p) for p in extras]
    all_x = set(fx) | {p[0] for p in fe}
    all_y = set(fy) | {p[1] for p in fe}
    xR = max(fx[: i0])
    x_i, y_i = fp[i0]
    y_prev = fp[i0 - 1][1]
    cap = min(
        [p[1] for p in fp + fe if p[1] > y_prev],
        default=y_prev + 1.0,
    )
    has_next = i0 + 1 < m
    x_next = fp[i0 + 1][0] if has_next else None
    out = []
    if ext_type == 1:
        if choice == "next":
            if not has_next:
                raise DomainError("PLACEMENT", "placement 'next' needs a following pin")
            q = (_mid(xR, x_next, all_x), _mid(y_i, y_prev, all_y))
        elif choice == "both":
            hi = x_next if has_next else x_i
            q = (_mid(xR, hi, all_x), _mid(y_prev, cap, all_y))
        elif choice == "prev":
            if not has_next:
                raise DomainError("PLACEMENT", "placement 'prev' needs a following pin")
            q = (_mid(x_next, x_i, all_x), _mid(y_prev, cap, all_y))
        else:
            raise DomainError("PLACEMENT", "unknown type 1 placement %r" % (choice,))
        out = [q]
    elif ext_type == 2:
        if not has_next:
            raise DomainError("PLACEMENT", "type 2 needs a following pin")
        yT2 = max(fy[: i0 - 1])
        qx = _at(xR, x_next, 3, 8, all_x)
        rx = _at(xR, x_next, 5, 8, all_x)
        qy = _at(yT2, y_i, 5, 8, all_y)
        ry = _at(yT2, y_i, 3, 8, all_y)
        if choice == "below":
            lo = fp[i0 + 2][1] if i0 + 2 < m else fp[i0 + 1][1]
            sy = _mid(lo, min(fy[:i0]), all_y | {qy, ry})
            sx = _mid(qx, rx, all_x | {qx, rx})
        elif choice == "beside":
            x_prev = fp[i0 - 1][0]
            nxt = min(v for v in all_x if v > x_prev)
            sx = _mid(x_prev, nxt, all_x | {qx, rx})
            sy = _mid(ry, qy, all_y | {qy, ry})
        else:
            raise DomainError("PLACEMENT", "unknown type 2 placement %r" % (choice,))
        out = [(qx, qy), (rx, ry), (sx, sy)]
    else:
        raise DomainError("PLACEMENT", "extension type must be 1 or 2")
    return [_apply_frame(inv, p) for p in out]


def _spiral_dirs(length, chirality):
    w = spiral_word(length, chirality)
    return (None, None) + tuple(w.directions)


@dataclass(frozen=True)
class ExtendedSpiral:
    host: Permutation
    pins: PinSequence
    extensions: tuple  # ExtensionRecords, one per requested extension


def build_extended_spiral(chirality, length, extension_spec):
    """Spiral of the given length with extensions added to chosen pins.

    extension_spec is a sequence of (pin, ext_type, choice) with pins in
    4..length, pairwise at distance >= 2, choices from T1_PLACEMENTS or
    T2_PLACEMENTS.  The result is re-validated: the pin sequence must stay
    proper and every requested extension must be recoverable from its clause
    set, otherwise PLACEMENT is raised.
    """
    spec = sorted(extension_spec)
    pins_used = [e[0] for e in spec]
    if len(set(pins_used)) != len(pins_used):
        raise DomainError("PLACEMENT", "extended pins must be distinct")
    if any(b - a < 2 for a, b in zip(pins_used, pins_used[1:])):
        raise DomainError("PLACEMENT", "extended pins must be >= 2 apart")
    if spec and length < 7:
        raise DomainError("PLACEMENT", "extensions need spiral length >= 7")
    for pin, ext_type, _ in spec:
        if not 4 <= pin <= length:
            raise DomainError("PLACEMENT", "extension pin %d out of range" % pin)
    word = spiral_word(length, chirality)
    pts = _realize_points(word)
    extras = []
    groups = []
    for pin, ext_type, choice in spec:
        placed = _place_extension(pts, extras, chirality, pin, ext_type, choice)
        extras.extend(placed)
        groups.append((pin, ext_type, placed))
    host, order = flatten_points(pts + extras)
    pin_indices = order[: len(pts)]
    seq = validate_pin_sequence(host, pin_indices)
    if tuple(seq.directions[2:]) != tuple(word.directions):
        raise DomainError("PLACEMENT", "extension broke the spiral directions")
    pos_of = dict(zip(pts + extras, order))
    records = []
    for pin, ext_type, placed in groups:
        idxs = tuple(sorted(pos_of[p] for p in placed))
        rec = _verify_record(host, seq, pin, ext_type, idxs)
        records.append(rec)
    return ExtendedSpiral(host, seq, tuple(records))


def _verify_record(host, seq, pin, ext_type, idxs):
    """Check one extension's clause set on the finished host."""
    info = classify_spiral(seq)
    frame = _FRAMES[(info.chirality, seq.directions[pin - 1])]
    pin_pts = [_apply_frame(frame, p) for p in seq.points()]
    pin_set = set(seq.indices)
    all_pts = pin_pts + [
        _apply_frame(frame, (i, host[i - 1]))
        for i in range(1, len(host) + 1)
        if i not in pin_set
    ]
    f = lambda i: _apply_frame(frame, (i, host[i - 1]))
    if ext_type == 1:
        ok = _check_type1(all_pts, pin_pts, pin - 1, f(idxs[0]))
        if not ok:
            raise DomainError("PLACEMENT", "type 1 clause set not satisfied at pin %d" % pin)
        return ExtensionRecord(pin, 1, idxs)
    pts3 = [f(i) for i in idxs]
    for q, r, s in itertools.permutations(pts3):
        branch = _check_type2(all_pts, pin_pts, pin - 1, q, r, s)
        if branch:
            # simplicity of the extended spiral needs the triple's hull to be
            # sliced by two spiral points; degenerate spots near the start
            # pair only manage one and are rejected as placements
            if len(_slicers((q, r, s), pin_pts)) < 2:
                raise DomainError(
                    "PLACEMENT", "type 2 triple at pin %d is sliced by fewer than 2 pins" % pin
                )
            return ExtensionRecord(pin, 2, idxs, branch)
    raise DomainError("PLACEMENT", "type 2 clause set not satisfied at pin %d" % pin)


def gen_spiral_with_extensions(chirality, length, extension_spec):
    return build_extended_spiral(chirality, length, extension_spec).host
