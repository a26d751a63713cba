"""Exhaustive desk-scale property suites.

Each suite checks one family of engine invariants over a finite range and
reports the number of instances checked plus any counterexamples (always
expected to be none).  Suites accept a scale override and an optional worker
count; instance checks are independent, so chunks may run in parallel.
"""

from __future__ import annotations

import concurrent.futures
import itertools
import random
from dataclasses import dataclass

from . import pins as _pins
from . import structures as _st
from .errors import DomainError
from .perm import (
    Interval,
    Permutation,
    contains,
    flatten,
    intervals,
    is_simple,
    iter_permutations,
    simple_permutations,
    substitution_decompose,
    sum_components,
)

RANDOM_SEED = 20250808  # fixed so the sampled length-7 hosts are reproducible


@dataclass
class CheckResult:
    name: str
    checked: int
    failures: list

    @property
    def ok(self):
        return not self.failures


def _pmap(fn, chunks, jobs):
    chunks = [c for c in chunks if c]
    if jobs <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, chunks))


def _chunked(items, jobs):
    items = list(items)
    k = max(1, jobs * 4)
    size = max(1, (len(items) + k - 1) // k)
    return [items[i : i + size] for i in range(0, len(items), size)]


def _gather(name, results):
    checked = sum(c for c, _ in results)
    failures = [f for _, fs in results for f in fs]
    return CheckResult(name, checked, failures[:10])


def sample_simple_hosts(n, count, seed=RANDOM_SEED):
    pool = list(simple_permutations(n))
    rng = random.Random(seed)
    if count >= len(pool):
        return pool
    return rng.sample(pool, count)


# ---------------------------------------------------------------------------
# decomposition: inflation round trip and skeleton uniqueness


def _decomposition_chunk(perms):
    checked = 0
    failures = []
    for p in perms:
        checked += 1
        dec = substitution_decompose(p)
        if dec.reassemble() != p:
            failures.append("round trip failed for %s" % p)
            continue
        n = len(p)
        ivset = {(iv.lo, iv.hi) for iv in intervals(p)}
        found = []
        for mask in range(1 << (n - 1)):
            blocks = []
            start = 1
            for pos in range(1, n):
                if mask >> (pos - 1) & 1:
                    blocks.append((start, pos))
                    start = pos + 1
            blocks.append((start, n))
            if len(blocks) < 4:
                continue
            if not all(b in ivset for b in blocks):
                continue
            quotient = flatten(p[lo - 1] for lo, _ in blocks)
            if is_simple(quotient):
                found.append((quotient, tuple(blocks)))
        if dec.kind == "simple":
            blocks = []
            pos = 1
            for part in dec.parts:
                blocks.append((pos, pos + len(part) - 1))
                pos += len(part)
            if found != [(dec.skeleton, tuple(blocks))]:
                failures.append("non-unique simple decomposition for %s" % p)
        elif found:
            failures.append("unexpected simple skeleton for decomposable %s" % p)
    return checked, failures


def check_decomposition(max_len=8, jobs=1):
    perms = [p for n in range(2, max_len + 1) for p in iter_permutations(n)]
    results = _pmap(_decomposition_chunk, _chunked(perms, jobs), jobs)
    return [_gather("decomposition: round trip and uniqueness (n <= %d)" % max_len, results)]


# ---------------------------------------------------------------------------
# pins: structural clauses of every proper pin sequence; right-reaching


def _pin_props_chunk(hosts):
    checked = 0
    failures = []
    for host in hosts:
        for seq in _pins.iter_pin_sequences(host):
            checked += 1
            props = _pins.check_pinseq_properties(seq)
            if len(seq) == 4:
                props = dict(props, d=True)  # simplicity clause needs >= 5 pins
            bad = [k for k, v in props.items() if not v]
            if bad:
                failures.append(
                    "clause %s fails for %s in host %s" % (bad, seq.indices, host)
                )
    return checked, failures


def _naive_filter_chunk(hosts):
    checked = 0
    failures = []
    for host in hosts:
        n = len(host)
        got = {s.indices for s in _pins.iter_pin_sequences(host)}
        naive = set()
        for k in range(2, n + 1):
            for idxs in itertools.permutations(range(1, n + 1), k):
                if _pins.pin_violation(host, idxs) is None:
                    naive.add(idxs)
        checked += len(naive)
        if got != naive:
            failures.append("enumeration disagrees with the naive filter on %s" % (host,))
    return checked, failures


def _right_reach_chunk(hosts):
    checked = 0
    failures = []
    for host in hosts:
        n = len(host)
        for p1 in range(1, n):
            for p2 in range(1, n + 1):
                if p2 == p1:
                    continue
                checked += 1
                try:
                    seq = _pins.right_reaching(host, p1, p2)
                except Exception:
                    failures.append("no right-reaching sequence in %s from (%d, %d)" % (host, p1, p2))
                    continue
                if seq.indices[-1] != n:
                    failures.append("sequence does not reach rightmost in %s" % (host,))
    return checked, failures


def check_pins(max_len=7, jobs=1, random_hosts=200):
    hosts = [p for n in range(2, min(max_len, 6) + 1) for p in simple_permutations(n)]
    if max_len >= 7:
        hosts += sample_simple_hosts(7, random_hosts)
    results = _pmap(_pin_props_chunk, _chunked(hosts, jobs), jobs)
    out = [_gather("pins: proper-sequence clauses (simple hosts)", results)]
    results = _pmap(_naive_filter_chunk, _chunked(hosts, jobs), jobs)
    out.append(_gather("pins: enumeration matches the naive filter", results))
    rr_hosts = [p for n in range(2, max_len + 1) for p in simple_permutations(n)]
    results = _pmap(_right_reach_chunk, _chunked(rr_hosts, jobs), jobs)
    out.append(_gather("pins: right-reaching exists (simple hosts, n <= %d)" % max_len, results))
    return out


# ---------------------------------------------------------------------------
# turns: many turns force a long sum of 21s or skew sum of 12s


def _turns_chunk(words):
    checked = 0
    failures = []
    for word in words:
        seq = _pins.realize_pin_word(word)
        t = _pins.count_turns(seq)
        k = t // 3
        checked += 1
        if k == 0:
            continue
        ls = _st.longest_sum21(seq.host)
        lk = _st.longest_skew12(seq.host)
        for total in range(1, k + 1):
            for p in range(total + 1):
                q = total - p
                if (p > 0 and ls < p) and (q > 0 and lk < q):
                    failures.append(
                        "split (%d, %d) fails for word %s%s" % (p, q, word.start, word.directions)
                    )
    return checked, failures


def check_turns(max_dirs=11, jobs=1):
    words = list(_pins.iter_pin_words(max_dirs))
    results = _pmap(_turns_chunk, _chunked(words, jobs), jobs)
    return [_gather("turns: 3(p+q) turns force a sum or skew sum (words <= %d)" % max_dirs, results)]


# ---------------------------------------------------------------------------
# intervals: interval structure of a sum of 21s


def check_intervals(max_L=6, jobs=1):
    checked = 0
    failures = []
    for L in range(1, max_L + 1):
        p = _st.sum_of_21s(L)
        expected = {Interval(i, i, p[i - 1], p[i - 1]) for i in range(1, 2 * L + 1)}
        expected |= {
            Interval(2 * k - 1, 2 * l, 2 * k - 1, 2 * l)
            for k in range(1, L + 1)
            for l in range(k, L + 1)
        }
        checked += 1
        if set(intervals(p)) != expected:
            failures.append("interval set of the %d-fold sum of 21s is wrong" % L)
    return [CheckResult("intervals: sums of 21s have only contiguous-sum intervals (L <= %d)" % max_L, checked, failures)]


# ---------------------------------------------------------------------------
# slicing: any line slicing a sum-indecomposable permutation slices a 21


def _slicing_chunk(perms):
    checked = 0
    failures = []
    for p in perms:
        n = len(p)
        inv = [
            (i, j, p[j - 1], p[i - 1])
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
            if p[i - 1] > p[j - 1]
        ]
        pos_cov = [False] * n
        val_cov = [False] * n
        for i, j, lo, hi in inv:
            for c in range(i, j):
                pos_cov[c] = True
            for c in range(lo, hi):
                val_cov[c] = True
        checked += 1
        if not all(pos_cov[1:n]) or not all(val_cov[1:n]):
            failures.append("a slicing line misses every 21 in %s" % (p,))
    return checked, failures


def check_slicing(max_len=8, jobs=1):
    perms = [
        p
        for n in range(2, max_len + 1)
        for p in iter_permutations(n)
        if len(sum_components(p)) == 1
    ]
    results = _pmap(_slicing_chunk, _chunked(perms, jobs), jobs)
    return [_gather("slicing: lines through sum-indecomposables slice a 21 (n <= %d)" % max_len, results)]


# ---------------------------------------------------------------------------
# corners: a 21 in the NE corner is sliced from NW or SE


def _corners_chunk(perms):
    checked = 0
    failures = []
    for p in perms:
        pts = p.points()
        for px, pv in pts:
            ne = [(x, y) for x, y in pts if x > px and y > pv]
            invs = [
                (a, b)
                for a, b in itertools.combinations(ne, 2)
                if a[1] > b[1]  # combinations keeps x increasing
            ]
            if not invs:
                continue
            checked += 1
            side = [
                (x, y)
                for x, y in pts
                if (x < px and y > pv) or (x > px and y < pv)
            ]
            ok = False
            for (x1, y1), (x2, y2) in invs:
                for qx, qy in side:
                    if (x1 < qx < x2 and not (y2 <= qy <= y1)) or (
                        y2 < qy < y1 and not (x1 <= qx <= x2)
                    ):
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                failures.append("unsliced NE 21 in %s at point (%d, %d)" % (p, px, pv))
    return checked, failures


def check_corners(max_len=8, jobs=1):
    perms = [p for n in range(2, max_len + 1) for p in simple_permutations(n)]
    results = _pmap(_corners_chunk, _chunked(perms, jobs), jobs)
    return [_gather("corners: NE 21s in simples are sliced from NW or SE (n <= %d)" % max_len, results)]


# ---------------------------------------------------------------------------
# extensions: extended spirals are simple and force sums / skew sums


def iter_extension_specs(length, sizes):
    """All spacing-respecting extension specs with the given pin-set sizes."""
    eligible = list(range(4, length + 1))

    def choices(pin):
        out = [(1, "both")]
        if pin < length:
            out = [(1, "next"), (1, "both"), (1, "prev"), (2, "below"), (2, "beside")]
        return out

    for size in sizes:
        for pins_used in itertools.combinations(eligible, size):
            if any(b - a < 2 for a, b in zip(pins_used, pins_used[1:])):
                continue
            for combo in itertools.product(*(choices(p) for p in pins_used)):
                yield tuple((p, t, c) for p, (t, c) in zip(pins_used, combo))


def survey_extended_spirals(lengths, sizes, chirality="cw"):
    """Build every legal spec; yields (spec, ExtendedSpiral).  Specs whose
    placements interfere geometrically are skipped (they are not legal)."""
    for length in lengths:
        for spec in iter_extension_specs(length, sizes):
            try:
                yield spec, _pins.build_extended_spiral(chirality, length, spec)
            except DomainError as exc:
                if exc.code != "PLACEMENT":
                    raise


def _extension_simplicity_chunk(args):
    lengths, sizes, chirality = args
    checked = 0
    failures = []
    for spec, ext in survey_extended_spirals(lengths, sizes, chirality):
        checked += 1
        if not is_simple(ext.host):
            failures.append("extended spiral not simple: %s %s" % (chirality, spec))
    return checked, failures


def _extension_forcing_chunk(args):
    lengths, sizes, chirality = args
    checked = 0
    failures = []
    for spec, ext in survey_extended_spirals(lengths, sizes, chirality):
        k = len(spec) // 2
        if k == 0:
            continue
        checked += 1
        if (
            _st.longest_sum21(ext.host, at_least=k) < k
            and _st.longest_skew12(ext.host, at_least=k) < k
        ):
            failures.append("2k extensions force nothing: %s %s" % (chirality, spec))
    return checked, failures


def check_extensions(max_len=14, jobs=1):
    out = []
    checked = 0
    failures = []
    for length in range(4, max_len + 1):
        for chir in ("cw", "ccw"):
            sp = _pins.gen_spiral(length, chir)
            checked += 1
            if not is_simple(sp.host):
                failures.append("bare spiral of length %d (%s) not simple" % (length, chir))
            if contains(sp.host, Permutation((3, 4, 1, 2))) or contains(
                sp.host, Permutation((2, 1, 4, 3))
            ):
                failures.append("bare spiral of length %d (%s) leaves Av(3412, 2143)" % (length, chir))
    out.append(CheckResult("extensions: bare spirals are simple and skew-merged (<= %d)" % max_len, checked, failures))

    lengths = list(range(7, max_len + 1))
    work = [([l], (1, 2, 3), "cw") for l in lengths] + [([l], (1,), "ccw") for l in lengths]
    results = _pmap(_extension_simplicity_chunk, work, jobs)
    out.append(_gather("extensions: extended spirals are simple (k <= 3)", results))

    work = [([l], (2,), "cw") for l in lengths]
    work += [([l], (4,), "cw") for l in lengths if l >= 10]
    work += [([l], (6,), "cw") for l in lengths if l >= 14]
    results = _pmap(_extension_forcing_chunk, work, jobs)
    out.append(_gather("extensions: 2k extensions force a k-sum or k-skew-sum", results))
    return out


SUITES = {
    "decomposition": check_decomposition,
    "pins": check_pins,
    "turns": check_turns,
    "intervals": check_intervals,
    "slicing": check_slicing,
    "corners": check_corners,
    "extensions": check_extensions,
}


def run_suite(name, max_len=None, jobs=1):
    """Run one named suite (or "all"); returns a list of CheckResults."""
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, max_len, jobs))
        return out
    if name not in SUITES:
        raise DomainError("PARAM", "unknown suite %r (have %s, all)" % (name, ", ".join(SUITES)))
    fn = SUITES[name]
    kwargs = {"jobs": jobs}
    if max_len is not None:
        if name == "turns":
            kwargs["max_dirs"] = max_len
        elif name == "intervals":
            kwargs["max_L"] = max_len
        else:
            kwargs["max_len"] = max_len
    return fn(**kwargs)
