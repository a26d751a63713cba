"""Command-line surface: generators, detectors, pins, gridding, scans,
bounds, property suites, and plot emission.

Exit codes: 0 success, 1 domain error (JSON error object on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gridding as _grid
from . import pins as _pins
from . import structures as _st
from . import svgplot
from . import verify as _verify
from .errors import DomainError
from .perm import is_simple, parse_permutation, substitution_decompose

_GEN_KINDS = (
    "sum21",
    "skew12",
    "parallel-sawtooth",
    "wedge-sawtooth",
    "sliced-wedge",
    "oscillation",
    "spiral",
)


def _parse_ext_spec(text):
    """Extension spec "4:1:both,8:2:below" -> ((4, 1, "both"), ...)."""
    out = []
    if not text:
        return ()
    for item in text.split(","):
        parts = item.split(":")
        if len(parts) != 3:
            raise DomainError("PARSE", "extension spec item %r is not pin:type:placement" % item)
        out.append((int(parts[0]), int(parts[1]), parts[2]))
    return tuple(out)


def _emit(args, payload, plain=None):
    if getattr(args, "json", False) or plain is None:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(plain)


def _seq_payload(seq):
    info = _pins.classify_spiral(seq)
    return {
        "host": str(seq.host),
        "points": list(seq.indices),
        "directions": "".join(d or "." for d in seq.directions),
        "turns": _pins.count_turns(seq),
        "spiral": {"is_spiral": info.is_spiral, "chirality": info.chirality, "phase": info.phase},
    }


def cmd_gen(args):
    kind, param = args.kind, args.param
    if kind == "sum21":
        p = _st.gen_monotone_sum(_st.SUM21, param)
    elif kind == "skew12":
        p = _st.gen_monotone_sum(_st.SKEW12, param)
    elif kind == "parallel-sawtooth":
        p = _st.gen_parallel_sawtooth(param, args.orient)
    elif kind == "wedge-sawtooth":
        p = _st.gen_wedge_sawtooth(param, args.orient)
    elif kind == "sliced-wedge":
        if args.type not in (1, 2, 3):
            raise DomainError("PARAM", "--type must be 1, 2 or 3")
        p = _st.gen_sliced_wedge(param, args.type, args.orient)
    elif kind == "oscillation":
        p = _st.gen_increasing_oscillation(param, args.variant, args.orient)
    elif kind == "spiral":
        p = _pins.gen_spiral_with_extensions(args.chirality, param, _parse_ext_spec(args.ext))
    else:
        raise DomainError("PARAM", "unknown generator kind %r" % kind)
    _emit(args, {"perm": str(p)}, str(p))
    return 0


def cmd_detect(args):
    p = parse_permutation(args.perm)
    if args.kind == "simple":
        print(json.dumps({"simple": is_simple(p)}))
        return 0
    kind_map = {
        "sum21": _st.SUM21,
        "skew12": _st.SKEW12,
        "parallel-sawtooth": _st.PARALLEL_SAWTOOTH,
        "wedge-sawtooth": _st.WEDGE_SAWTOOTH,
        "sliced-wedge": _st.SLICED_WEDGE,
        "oscillation": _st.INCREASING_OSCILLATION,
    }
    if args.kind not in kind_map:
        raise DomainError("PARAM", "unknown detector kind %r" % args.kind)
    best, witness = _st.detect(p, kind_map[args.kind], slice_type=args.type, orient=args.orient)
    print(json.dumps({"kind": args.kind, "max": best, "witness": list(witness)}))
    return 0


def cmd_decompose(args):
    p = parse_permutation(args.perm)
    dec = substitution_decompose(p)
    payload = {
        "kind": dec.kind,
        "skeleton": str(dec.skeleton),
        "parts": [str(q) for q in dec.parts],
    }
    plain = "%s skeleton: %s\nparts: %s" % (
        dec.kind,
        dec.skeleton,
        " | ".join(str(q) for q in dec.parts),
    )
    _emit(args, payload, plain)
    return 0


def cmd_pins(args):
    host = parse_permutation(args.perm) if args.perm else None
    if args.pins_cmd == "enumerate":
        seqs = list(
            _pins.iter_pin_sequences(host, args.start[0], args.start[1], args.max_len)
        )
        print(json.dumps({"count": len(seqs), "sequences": [_seq_payload(s) for s in seqs]}))
        return 0
    if args.pins_cmd == "right-reach":
        seq = _pins.right_reaching(host, args.start[0], args.start[1])
        print(json.dumps(_seq_payload(seq)))
        return 0
    if args.pins_cmd == "word":
        seq = _pins.realize_pin_word(_pins.PinWord(args.start_pair, args.word))
        print(json.dumps(_seq_payload(seq)))
        return 0
    raise DomainError("PARAM", "unknown pins subcommand")


def cmd_grid(args):
    p = parse_permutation(args.perm)
    g = _grid.find_monotone_gridding(p, args.h, args.v)
    if g is None:
        print(json.dumps({"found": False}))
        return 0
    cells = [
        {"row": r, "col": c, "label": label}
        for (r, c), label in sorted(g.labels.items())
    ]
    print(
        json.dumps(
            {"found": True, "h_cuts": list(g.h_cuts), "v_cuts": list(g.v_cuts), "cells": cells},
            sort_keys=True,
        )
    )
    return 0


def cmd_class(args):
    spec = _grid.ClassSpec.from_text(args.basis)
    if args.class_cmd != "scan":
        raise DomainError("PARAM", "unknown class subcommand")
    if args.obstructions:
        report = _grid.obstruction_scan(
            spec, args.max_len, pin_budget=args.pin_budget, cache_dir=args.cache_dir
        )
    else:
        report = _grid.criterion_scan(spec, args.max_len, cache_dir=args.cache_dir)
    if args.report:
        report.write(args.report)
    if args.csv:
        _write_csv(report, args.csv)
    if args.fig:
        _write_figure(report, args.fig)
    for row in report.rows:
        print(
            "n=%d members=%d simples=%d max_sum21=%d max_skew12=%d"
            % (row.n, row.members, row.simples, row.max_sum21, row.max_skew12)
        )
    return 0


def _write_csv(report, path):
    import csv

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "members", "simples", "max_sum21", "max_skew12"])
        for r in report.rows:
            w.writerow([r.n, r.members, r.simples, r.max_sum21, r.max_skew12])


def _write_figure(report, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r.n for r in report.rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.plot(ns, [r.members for r in report.rows], "o-", label="members")
    ax1.plot(ns, [r.simples for r in report.rows], "s-", label="simple")
    ax1.set_xlabel("length")
    ax1.set_ylabel("count")
    ax1.set_yscale("symlog")
    ax1.legend()
    ax2.plot(ns, [r.max_sum21 for r in report.rows], "o-", label="max sum of 21s")
    ax2.plot(ns, [r.max_skew12 for r in report.rows], "s-", label="max skew sum of 12s")
    ax2.set_xlabel("length")
    ax2.set_ylabel("max parameter")
    ax2.legend()
    fig.suptitle("Av(%s)" % report.basis)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def cmd_bounds(args):
    fn = args.bound
    vals = args.values
    need = {"g": 2, "f": 1, "h": 3, "rect": 2}[fn]
    if len(vals) != need:
        raise DomainError("PARAM", "bounds %s takes %d arguments" % (fn, need))
    if fn == "g":
        out = _grid.bound_g(*vals)
    elif fn == "f":
        out = _grid.bound_f(*vals)
    elif fn == "h":
        out = _grid.bound_h(*vals)
    else:
        out = _grid.bound_rect(*vals)
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # bounds legitimately exceed the default
    print(out)
    return 0


def cmd_verify(args):
    results = _verify.run_suite(args.suite, max_len=args.max_len, jobs=args.jobs)
    bad = 0
    for r in results:
        status = "ok" if r.ok else "FAIL"
        print("%-70s checked=%-8d failures=%d [%s]" % (r.name, r.checked, len(r.failures), status))
        for f in r.failures:
            print("    counterexample: %s" % f)
            bad += 1
    return 1 if bad else 0


def cmd_plot(args):
    p = parse_permutation(args.perm)
    spec = svgplot.PlotSpec(
        perm=p,
        pins=tuple(args.pins or ()),
        hollow=tuple(args.hollow or ()),
        rects=tuple(tuple(int(v) for v in r.split(":")) for r in (args.rect or ())),
        h_lines=tuple(args.hline or ()),
        v_lines=tuple(args.vline or ()),
    )
    doc = svgplot.render_plot(spec)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)
    return 0


def _int_list(text):
    return [int(v) for v in text.replace(",", " ").split()]


def build_parser():
    ap = argparse.ArgumentParser(
        prog="gridpins",
        description="Simple permutations, pin sequences, sawtooth structures, "
        "and monotone gridding experiments.",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="print a canonical structure instance")
    g.add_argument("kind", choices=_GEN_KINDS)
    g.add_argument("param", type=int, help="size parameter (k, m, n, or spiral length)")
    g.add_argument("--orient", default="id", help="plot symmetry to apply")
    g.add_argument("--type", type=int, default=None, help="sliced wedge type (1, 2 or 3)")
    g.add_argument("--variant", type=int, default=1, help="oscillation variant (1 or 2)")
    g.add_argument("--chirality", default="cw", choices=("cw", "ccw"))
    g.add_argument("--ext", default="", help="spiral extensions pin:type:placement,...")
    g.add_argument("--json", action="store_true")
    g.set_defaults(fn=cmd_gen)

    d = sub.add_parser("detect", help="maximal structure parameter in a permutation")
    d.add_argument("kind")
    d.add_argument("perm")
    d.add_argument("--type", type=int, default=None)
    d.add_argument("--orient", default="id")
    d.set_defaults(fn=cmd_detect)

    dc = sub.add_parser("decompose", help="substitution decomposition")
    dc.add_argument("perm")
    dc.add_argument("--json", action="store_true")
    dc.set_defaults(fn=cmd_decompose)

    pn = sub.add_parser("pins", help="pin sequence tools")
    pnsub = pn.add_subparsers(dest="pins_cmd", required=True)
    pe = pnsub.add_parser("enumerate", help="all proper pin sequences from a start pair")
    pe.add_argument("perm")
    pe.add_argument("--start", type=int, nargs=2, required=True, metavar=("I", "J"))
    pe.add_argument("--max-len", type=int, default=None)
    pe.set_defaults(fn=cmd_pins)
    pw = pnsub.add_parser("word", help="realize a pin word as a permutation")
    pw.add_argument("start_pair", choices=("12", "21"))
    pw.add_argument("word", help="directions over L, R, U, D")
    pw.set_defaults(fn=cmd_pins, perm=None)
    pr = pnsub.add_parser("right-reach", help="shortest right-reaching pin sequence")
    pr.add_argument("perm")
    pr.add_argument("--start", type=int, nargs=2, required=True, metavar=("I", "J"))
    pr.set_defaults(fn=cmd_pins)

    gr = sub.add_parser("grid", help="search for a monotone gridding")
    gr.add_argument("perm")
    gr.add_argument("--h", type=int, required=True, help="horizontal line budget")
    gr.add_argument("--v", type=int, required=True, help="vertical line budget")
    gr.set_defaults(fn=cmd_grid)

    cl = sub.add_parser("class", help="finitely based class scans")
    clsub = cl.add_subparsers(dest="class_cmd", required=True)
    cs = clsub.add_parser("scan", help="per-length criterion/obstruction scan")
    cs.add_argument("--basis", required=True, help='e.g. "321;2143"')
    cs.add_argument("--max-len", type=int, required=True)
    cs.add_argument("--report", help="write the JSON report here")
    cs.add_argument("--csv", help="write a delimited summary here")
    cs.add_argument("--fig", help="render a matplotlib trend figure here")
    cs.add_argument("--cache-dir", help="enumeration cache directory")
    cs.add_argument("--obstructions", action="store_true", help="include obstruction maxima")
    cs.add_argument("--pin-budget", type=int, default=10)
    cs.set_defaults(fn=cmd_class)

    b = sub.add_parser("bounds", help="exact integer threshold functions")
    b.add_argument("bound", choices=("g", "f", "h", "rect"))
    b.add_argument("values", type=int, nargs="+")
    b.set_defaults(fn=cmd_bounds)

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("suite", choices=tuple(_verify.SUITES) + ("all",))
    v.add_argument("--max-len", type=int, default=None)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(fn=cmd_verify)

    pl = sub.add_parser("plot", help="deterministic SVG plot with overlays")
    pl.add_argument("perm")
    pl.add_argument("--out", help="output file (stdout when omitted)")
    pl.add_argument("--pins", type=_int_list, help="pin sequence point positions")
    pl.add_argument("--hollow", type=_int_list, help="hollow marker positions")
    pl.add_argument("--rect", action="append", help="hull outline I:J (repeatable)")
    pl.add_argument("--hline", type=float, action="append", help="dashed horizontal line")
    pl.add_argument("--vline", type=float, action="append", help="dashed vertical line")
    pl.set_defaults(fn=cmd_plot)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except DomainError as exc:
        sys.stderr.write(json.dumps(exc.as_json()) + "\n")
        return 1
    except BrokenPipeError:
        import os

        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1


if __name__ == "__main__":
    sys.exit(main())
