"""Deterministic SVG rendering of permutation plots with overlays.

Output is plain SVG 1.1 built from fixed-precision strings in a fixed
element order, so identical input yields byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .perm import rect_hull


@dataclass
class PlotSpec:
    perm: Permutation
    pins: tuple = ()  # plot positions traced as a pin sequence, in order
    hollow: tuple = ()  # plot positions drawn as hollow markers
    rects: tuple = ()  # (i, j) position ranges whose hull is outlined
    h_lines: tuple = ()  # horizontal dashed lines (half-integer y)
    v_lines: tuple = ()  # vertical dashed lines (half-integer x)
    cell: int = 24  # pixels per unit
    margin: int = 18


def _fmt(x):
    return "%.1f" % (x,)


def render_plot(spec):
    """Render the plot as an SVG document string."""
    perm = spec.perm
    n = len(perm)
    for idx in tuple(spec.pins) + tuple(spec.hollow):
        if not 1 <= idx <= n:
            raise DomainError("PLOT", "overlay index %d out of range" % idx)
    for i, j in spec.rects:
        if not 1 <= i <= j <= n:
            raise DomainError("PLOT", "bad rectangle range %d..%d" % (i, j))
    c = spec.cell
    size = 2 * spec.margin + (n + 1) * c

    def px(x):
        return spec.margin + x * c

    def py(y):
        return spec.margin + (n + 1 - y) * c

    out = []
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%d" height="%d" viewBox="0 0 %d %d">' % (size, size, size, size)
    )
    out.append('<rect width="%d" height="%d" fill="white"/>' % (size, size))
    # light unit grid
    for k in range(1, n + 1):
        out.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#dddddd" stroke-width="1"/>'
            % (_fmt(px(k)), _fmt(py(n + 0.5)), _fmt(px(k)), _fmt(py(0.5)))
        )
        out.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#dddddd" stroke-width="1"/>'
            % (_fmt(px(0.5)), _fmt(py(k)), _fmt(px(n + 0.5)), _fmt(py(k)))
        )
    # hull rectangles
    for i, j in spec.rects:
        r = rect_hull([(x, perm[x - 1]) for x in range(i, j + 1)])
        out.append(
            '<rect x="%s" y="%s" width="%s" height="%s" fill="none" '
            'stroke="#888888" stroke-width="1.5"/>'
            % (
                _fmt(px(r.x_lo)),
                _fmt(py(r.y_hi)),
                _fmt((r.x_hi - r.x_lo) * c),
                _fmt((r.y_hi - r.y_lo) * c),
            )
        )
    # dashed slicing / gridding lines
    for y in spec.h_lines:
        out.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#333333" '
            'stroke-width="1" stroke-dasharray="4 3"/>'
            % (_fmt(px(0.25)), _fmt(py(y)), _fmt(px(n + 0.75)), _fmt(py(y)))
        )
    for x in spec.v_lines:
        out.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#333333" '
            'stroke-width="1" stroke-dasharray="4 3"/>'
            % (_fmt(px(x)), _fmt(py(n + 0.75)), _fmt(px(x)), _fmt(py(0.25)))
        )
    # pin sequence arrows: each pin drawn from the previous hull edge
    if spec.pins:
        pts = [(i, perm[i - 1]) for i in spec.pins]
        for t in range(2, len(pts)):
            hx = [p[0] for p in pts[:t]]
            hy = [p[1] for p in pts[:t]]
            x, y = pts[t]
            if min(hx) < x < max(hx):
                y0 = max(hy) if y > max(hy) else min(hy)
                x0, label = x, ("U" if y > max(hy) else "D")
            else:
                x0 = max(hx) if x > max(hx) else min(hx)
                y0, label = y, ("R" if x > max(hx) else "L")
            out.append(
                '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#2255aa" stroke-width="2"/>'
                % (_fmt(px(x0)), _fmt(py(y0)), _fmt(px(x)), _fmt(py(y)))
            )
            out.append(
                '<text x="%s" y="%s" font-size="%d" fill="#2255aa">%s</text>'
                % (_fmt(px(x) + 4), _fmt(py(y) - 4), max(c // 2, 8), label)
            )
    # points
    hollow = set(spec.hollow)
    for i, v in perm.points():
        if i in hollow:
            out.append(
                '<circle cx="%s" cy="%s" r="%s" fill="white" stroke="black" '
                'stroke-width="1.5"/>' % (_fmt(px(i)), _fmt(py(v)), _fmt(c * 0.22))
            )
        else:
            out.append(
                '<circle cx="%s" cy="%s" r="%s" fill="black"/>'
                % (_fmt(px(i)), _fmt(py(v)), _fmt(c * 0.18))
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
