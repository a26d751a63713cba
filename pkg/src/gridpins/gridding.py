"""Monotone gridding search, class scans, and exact bound evaluation.

A gridding cuts the plot with horizontal and vertical half-integer lines so
that every cell is monotone (or empty).  Class scans enumerate a finitely
based class length by length and report, per length, how far the structures
that obstruct monotone griddability have grown among the simple members.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from bisect import bisect_left
from dataclasses import dataclass, field

from .errors import DomainError
from . import pins as _pins
from . import structures as _st
from .perm import (
    Permutation,
    SYMMETRIES,
    apply_symmetry,
    contains,
    is_simple,
    parse_permutation,
)

INC, DEC, EMPTY = "inc", "dec", "empty"


@dataclass(frozen=True)
class Gridding:
    n: int
    h_cuts: tuple  # horizontal lines: y coordinates, sorted half-integers
    v_cuts: tuple  # vertical lines: x coordinates
    labels: dict  # (row, col) -> INC | DEC | EMPTY; row 0 is the bottom band

    def cell_of(self, point):
        x, y = point
        return (bisect_left(self.h_cuts, y), bisect_left(self.v_cuts, x))


def _monotone_label(points):
    """Label for a cell's points (sorted by x), or None if not monotone."""
    if not points:
        return EMPTY
    ys = [y for _, y in points]
    if all(a < b for a, b in zip(ys, ys[1:])):
        return INC
    if all(a > b for a, b in zip(ys, ys[1:])):
        return DEC
    return None


def verify_gridding(perm, gridding):
    """Re-check that every cell is monotone as labelled."""
    cells = {}
    for pt in perm.points():
        cells.setdefault(gridding.cell_of(pt), []).append(pt)
    for key, pts in cells.items():
        pts.sort()
        label = gridding.labels.get(key, EMPTY)
        got = _monotone_label(pts)
        if got is None:
            return False
        if label == EMPTY and pts:
            return False
        if len(pts) > 1 and got != label:
            return False
    return True


def find_monotone_gridding(perm, h, v):
    """Exhaustive search for a monotone gridding with at most h horizontal
    and v vertical lines.  Returns a Gridding, or None (search-certified)."""
    if h < 0 or v < 0:
        raise DomainError("PARAM", "line budgets must be >= 0")
    n = len(perm)
    gaps = [i + 0.5 for i in range(1, n)]
    hn = min(h, len(gaps))
    vn = min(v, len(gaps))
    pts = perm.points()
    for v_cuts in itertools.combinations(gaps, vn):
        cols = [bisect_left(v_cuts, x) for x, _ in pts]
        for h_cuts in itertools.combinations(gaps, hn):
            cells = {}
            for (x, y), col in zip(pts, cols):
                cells.setdefault((bisect_left(h_cuts, y), col), []).append((x, y))
            labels = {}
            ok = True
            for key, cell_pts in cells.items():
                label = _monotone_label(sorted(cell_pts))
                if label is None:
                    ok = False
                    break
                labels[key] = label
            if ok:
                return Gridding(n, tuple(h_cuts), tuple(v_cuts), labels)
    return None


# ---------------------------------------------------------------------------
# finitely based classes


@dataclass(frozen=True)
class ClassSpec:
    basis: tuple  # pairwise incomparable Permutations, sorted

    @staticmethod
    def from_text(text):
        """Parse a basis like "321;2143" (semicolon- or slash-separated)."""
        parts = [p for p in text.replace("/", ";").split(";") if p.strip()]
        if not parts:
            raise DomainError("PARSE", "empty basis")
        return ClassSpec.of(parse_permutation(p) for p in parts)

    @staticmethod
    def of(perms):
        perms = sorted(set(Permutation(p) for p in perms), key=lambda p: (len(p), p))
        basis = [
            p
            for p in perms
            if not any(q is not p and len(q) < len(p) and contains(p, q) for q in perms)
        ]
        return ClassSpec(tuple(basis))

    def text(self):
        return ";".join(str(b).replace(" ", "") for b in self.basis)


def enumerate_class(spec, n_max, cache_dir=None, debug_check=False):
    """Members of Av(basis) by length, via incremental max-value insertion.

    Only basis occurrences through the newly inserted point are tested (the
    class is closed under point deletion, so nothing else can appear); with
    debug_check the pruned test is re-verified by full containment.
    """
    cached = _cache_load(spec, n_max, cache_dir) if cache_dir else None
    if cached is not None:
        return cached
    by_len = {}
    if n_max >= 1:
        one = Permutation((1,))
        members = [] if any(len(b) == 1 for b in spec.basis) else [one]
        by_len[1] = members
    for n in range(2, n_max + 1):
        nxt = []
        for p in by_len.get(n - 1, ()):
            for pos in range(1, n + 1):
                vals = list(p)
                vals.insert(pos - 1, n)
                child = Permutation(vals)
                bad = any(
                    len(b) <= n and contains(child, b, required_pos=pos)
                    for b in spec.basis
                )
                if debug_check:
                    full = any(len(b) <= n and contains(child, b) for b in spec.basis)
                    assert bad == full, child
                if not bad:
                    nxt.append(child)
        by_len[n] = nxt
    if cache_dir:
        _cache_store(spec, by_len, cache_dir)
    return by_len


def _cache_key(spec):
    return hashlib.sha1(spec.text().encode()).hexdigest()[:16]


def _cache_load(spec, n_max, cache_dir):
    root = os.path.join(cache_dir, _cache_key(spec))
    by_len = {}
    for n in range(1, n_max + 1):
        path = os.path.join(root, "len_%02d.txt" % n)
        if not os.path.exists(path):
            return None
        with open(path) as fh:
            by_len[n] = [parse_permutation(line) for line in fh if line.strip()]
    return by_len


def _cache_store(spec, by_len, cache_dir):
    root = os.path.join(cache_dir, _cache_key(spec))
    os.makedirs(root, exist_ok=True)
    for n, members in by_len.items():
        path = os.path.join(root, "len_%02d.txt" % n)
        with open(path, "w") as fh:
            for p in members:
                fh.write(str(p) + "\n")


# ---------------------------------------------------------------------------
# scans


@dataclass
class ScanRow:
    n: int
    members: int
    simples: int
    max_sum21: int = 0
    max_skew12: int = 0
    sum21_witness: str = ""
    skew12_witness: str = ""
    obstructions: dict = field(default_factory=dict)

    def as_json(self):
        return {
            "n": self.n,
            "members": self.members,
            "simples": self.simples,
            "max_sum21": self.max_sum21,
            "max_skew12": self.max_skew12,
            "sum21_witness": self.sum21_witness,
            "skew12_witness": self.skew12_witness,
            "obstructions": self.obstructions,
        }


@dataclass
class ScanReport:
    basis: str
    rows: list

    def as_json(self):
        return {"basis": self.basis.split(";"), "lengths": [r.as_json() for r in self.rows]}

    def write(self, path):
        with open(path, "w") as fh:
            json.dump(self.as_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def criterion_scan(spec, n_max, cache_dir=None):
    """Per length, the largest sum-of-21s and skew-sum-of-12s over members."""
    by_len = enumerate_class(spec, n_max, cache_dir)
    rows = []
    best21 = best12 = 0
    wit21 = wit12 = ""
    for n in range(1, n_max + 1):
        members = by_len.get(n, [])
        simples = [p for p in members if is_simple(p)]
        row = ScanRow(n, len(members), len(simples))
        for p in members:
            k = _st.longest_sum21(p)
            if k > best21:
                best21, wit21 = k, str(p)
            k = _st.longest_skew12(p)
            if k > best12:
                best12, wit12 = k, str(p)
        row.max_sum21, row.sum21_witness = best21, wit21
        row.max_skew12, row.skew12_witness = best12, wit12
        rows.append(row)
    return ScanReport(spec.text(), rows)


def _orientations(gen_instance):
    """Distinct oriented families, keyed by their small instances."""
    out = []
    seen = set()
    for g in SYMMETRIES:
        key = tuple(apply_symmetry(gen_instance(m), g) for m in (2, 3))
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def obstruction_scan(spec, n_max, pin_budget=10, cache_dir=None):
    """Criterion scan plus per-length obstruction maxima over simple members.

    Turn maxima are lower bounds: pin sequences are enumerated only up to
    pin_budget pins per start pair.
    """
    report = criterion_scan(spec, n_max, cache_dir)
    by_len = enumerate_class(spec, n_max, cache_dir)
    par_orients = _orientations(lambda m: _st.gen_parallel_sawtooth(m))
    sw_orients = {
        t: _orientations(lambda m, t=t: _st.gen_sliced_wedge(m, t)) for t in (1, 2, 3)
    }
    best = {
        "parallel_sawtooth": 0,
        "sliced_wedge_1": 0,
        "sliced_wedge_2": 0,
        "sliced_wedge_3": 0,
        "max_turns": 0,
        "max_extensions": 0,
    }
    witness = {k: "" for k in best}
    for row in report.rows:
        for p in by_len.get(row.n, []):
            if not is_simple(p):
                continue
            m = max(_st.max_sawtooth(p, _st.PARALLEL_SAWTOOTH, g) for g in par_orients)
            if m > best["parallel_sawtooth"]:
                best["parallel_sawtooth"], witness["parallel_sawtooth"] = m, str(p)
            for t in (1, 2, 3):
                key = "sliced_wedge_%d" % t
                m = max(_st.max_sliced_wedge(p, t, g) for g in sw_orients[t])
                if m > best[key]:
                    best[key], witness[key] = m, str(p)
            for seq in _pins.iter_pin_sequences(p, max_len=pin_budget):
                turns = _pins.count_turns(seq)
                if turns > best["max_turns"]:
                    best["max_turns"], witness["max_turns"] = turns, str(p)
                info = _pins.classify_spiral(seq)
                if info.is_spiral and len(seq) >= 4:
                    k = _pins.extension_count(_pins.find_extensions(p, seq))
                    if k > best["max_extensions"]:
                        best["max_extensions"], witness["max_extensions"] = k, str(p)
        row.obstructions = {
            k: {"max": best[k], "witness": witness[k]} for k in best
        }
        row.obstructions["pin_budget"] = pin_budget
    return report


# ---------------------------------------------------------------------------
# exact bound functions (arbitrary-precision integers)


def _positive(name, value):
    if not isinstance(value, int) or value < 1:
        raise DomainError("PARAM", "%s must be a positive integer" % name)


def bound_g(m, s):
    """Recursive threshold g(m, s): base value 2 for m <= 3 or s = 1, then
    g(m, s) = (m + 3) * k + 1 with k = (8 s^2)^(8 s^2) * g(m, s - 1)."""
    _positive("m", m)
    _positive("s", s)
    if m <= 3 or s == 1:
        return 2
    k = (8 * s * s) ** (8 * s * s) * bound_g(m, s - 1)
    return (m + 3) * k + 1


def bound_f(n):
    """Threshold f(n) = g(n, 8n)."""
    _positive("n", n)
    return bound_g(n, 8 * n)


def bound_h(m, p, s):
    """Threshold h(m, p, s) = 3 m p (2 s + 1)."""
    _positive("m", m)
    _positive("p", p)
    _positive("s", s)
    return 3 * m * p * (2 * s + 1)


def bound_rect(L, m):
    """Threshold L * (8 m^2)^(8 m^2)."""
    _positive("L", L)
    _positive("m", m)
    return L * (8 * m * m) ** (8 * m * m)
