"""Static SVG 1.1 pictures of planar orchards."""

from fractions import Fraction
from xml.sax.saxutils import escape

from .core import orchard_partition, separating_subsets
from .errors import InputError

CHERRY = "#c8102e"
PLUM = "#7d3c98"
LINE = "#555555"
SIZE = 400  # pixels along the longer side

HEADER = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="{vx} {vy} {vw} {vh}">
"""


def _num(x):
    s = "%.4f" % float(x)
    s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _viewport(points):
    xs = [p[0] for p in points] or [Fraction(0)]
    ys = [p[1] for p in points] or [Fraction(0)]
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    span = max(w, h) or Fraction(1)
    mx, my = (w or span) / 10, (h or span) / 10
    if not w:
        mx = span / 2
    if not h:
        my = span / 2
    return min(xs) - mx, min(ys) - my, w + 2 * mx, h + 2 * my


def _clip(p, q, box):
    """Part of the line through p and q inside ``box`` (Liang-Barsky)."""
    x0, y0, w, h = box
    dx, dy = q[0] - p[0], q[1] - p[1]
    lo, hi = None, None
    for delta, start, a, b in ((dx, p[0], x0, x0 + w), (dy, p[1], y0, y0 + h)):
        if delta == 0:
            if not a <= start <= b:
                return None
            continue
        t1, t2 = sorted(((a - start) / delta, (b - start) / delta))
        lo = t1 if lo is None else max(lo, t1)
        hi = t2 if hi is None else min(hi, t2)
    if lo is None or lo > hi:
        return None
    return ((p[0] + lo * dx, p[1] + lo * dy), (p[0] + hi * dx, p[1] + hi * dy))


def render_svg(cfg, partition=None, pair=None, labels=True):
    """SVG document (a str) coloring class A cherry and class B plum.

    ``pair`` = (i, j) overlays the segment P_i P_j and every line spanned by
    two other points that separates them.  Output bytes depend only on the
    arguments.
    """
    if cfg.dim != 2:
        raise InputError("plots need a planar (d = 2) configuration")
    if partition is None:
        partition = orchard_partition(cfg)
    pts = [(x, -y) for x, y in cfg.points]
    box = _viewport(pts)
    vw, vh = box[2], box[3]
    scale = Fraction(SIZE) / max(vw, vh)
    unit = max(vw, vh) / 100
    out = [HEADER.format(w=_num(vw * scale), h=_num(vh * scale), vx=_num(box[0]),
                         vy=_num(box[1]), vw=_num(vw), vh=_num(vh))]
    out.append('<rect x="%s" y="%s" width="%s" height="%s" fill="#ffffff"/>\n'
               % (_num(box[0]), _num(box[1]), _num(vw), _num(vh)))
    if pair is not None:
        i, j = pair
        for S in separating_subsets(cfg, i, j):
            seg = _clip(pts[S[0] - 1], pts[S[1] - 1], box)
            if seg:
                out.append('<line class="separator" x1="%s" y1="%s" x2="%s" y2="%s" '
                           'stroke="%s" stroke-width="%s"/>\n'
                           % (_num(seg[0][0]), _num(seg[0][1]), _num(seg[1][0]),
                              _num(seg[1][1]), LINE, _num(unit / 4)))
        p, q = pts[i - 1], pts[j - 1]
        out.append('<line class="pair" x1="%s" y1="%s" x2="%s" y2="%s" stroke="#000000" '
                   'stroke-width="%s" stroke-dasharray="%s"/>\n'
                   % (_num(p[0]), _num(p[1]), _num(q[0]), _num(q[1]), _num(unit / 3),
                      _num(unit)))
    for k, (x, y) in enumerate(pts, 1):
        color = CHERRY if partition.class_of(k) == "A" else PLUM
        out.append('<circle cx="%s" cy="%s" r="%s" fill="%s"/>\n'
                   % (_num(x), _num(y), _num(unit * 2), color))
        if labels:
            out.append('<text x="%s" y="%s" font-family="sans-serif" font-size="%s">%s</text>\n'
                       % (_num(x + unit * 2.5), _num(y - unit * 2.5), _num(unit * 4),
                          escape(str(k))))
    out.append("</svg>\n")
    return "".join(out)
