"""Plain-text input formats.

Affine configuration::

    d n
    x_1 ... x_d          # n lines, rationals written p/q or p

Homogeneous configuration: header ``proj d n`` or ``sphere d n``, then n
lines of d+1 rationals.  Wiring diagram: ``wiring n`` then C(n,2) swap
positions.  A generalized configuration is an affine block preceded by a
``family <name> [params]`` line (see :mod:`orchard.families`).

``#`` starts a comment anywhere on a line.
"""

from fractions import Fraction

from .errors import ParseError
from .geometry import Configuration


def _lines(text):
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _rat(tok, lineno):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError("line %d: %r is not a rational number" % (lineno, tok)) from None


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError("line %d: %r is not an integer" % (lineno, tok)) from None


def format_rat(x):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def _read_rows(lines, n, width):
    if len(lines) != n:
        raise ParseError("expected %d point lines, found %d" % (n, len(lines)))
    rows = []
    for lineno, line in lines:
        toks = line.split()
        if len(toks) != width:
            raise ParseError("line %d: expected %d coordinates, found %d"
                             % (lineno, width, len(toks)))
        rows.append(tuple(_rat(t, lineno) for t in toks))
    return tuple(rows)


def _parse_affine_block(lines):
    if not lines:
        raise ParseError("empty input")
    lineno, head = lines[0]
    toks = head.split()
    if len(toks) != 2:
        raise ParseError("line %d: header must be 'd n'" % lineno)
    d, n = _int(toks[0], lineno), _int(toks[1], lineno)
    if d < 1 or n < 0:
        raise ParseError("line %d: need d >= 1 and n >= 0" % lineno)
    return Configuration(d, _read_rows(lines[1:], n, d))


def parse_configuration(text):
    return _parse_affine_block(_lines(text))


def format_configuration(cfg):
    out = ["%d %d" % (cfg.dim, cfg.n)]
    out.extend(" ".join(format_rat(x) for x in p) for p in cfg.points)
    return "\n".join(out) + "\n"


def parse_homogeneous(text):
    from .projective import HomogeneousConfiguration

    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    lineno, head = lines[0]
    toks = head.split()
    if len(toks) != 3 or toks[0] not in ("proj", "sphere"):
        raise ParseError("line %d: header must be 'proj d n' or 'sphere d n'" % lineno)
    d, n = _int(toks[1], lineno), _int(toks[2], lineno)
    rows = _read_rows(lines[1:], n, d + 1)
    return HomogeneousConfiguration(d, rows, antipodal=(toks[0] == "sphere"))


def format_homogeneous(hcfg):
    kind = "sphere" if hcfg.antipodal else "proj"
    out = ["%s %d %d" % (kind, hcfg.dim, hcfg.n)]
    out.extend(" ".join(format_rat(x) for x in v) for v in hcfg.vectors)
    return "\n".join(out) + "\n"


def parse_wiring(text):
    from .pseudolines import WiringDiagram

    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    lineno, head = lines[0]
    toks = head.split()
    if len(toks) != 2 or toks[0] != "wiring":
        raise ParseError("line %d: header must be 'wiring n'" % lineno)
    n = _int(toks[1], lineno)
    word = [_int(t, ln) for ln, line in lines[1:] for t in line.split()]
    return WiringDiagram(n, tuple(word))


def format_wiring(wd):
    return "wiring %d\n%s\n" % (wd.n, " ".join(str(k) for k in wd.word))


def parse_generalized(text):
    from .families import GeneralizedConfiguration, family_from_header

    lines = _lines(text)
    if not lines or not lines[0][1].startswith("family"):
        raise ParseError("generalized configuration must start with a 'family' line")
    family = family_from_header(lines[0][1])
    cfg = _parse_affine_block(lines[1:])
    return GeneralizedConfiguration(family, cfg.points)


def sniff(text):
    """Name of the format of ``text``: affine, homogeneous, wiring or family."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input")
    first = lines[0][1].split()[0]
    if first in ("proj", "sphere"):
        return "homogeneous"
    if first == "wiring":
        return "wiring"
    if first == "family":
        return "family"
    return "affine"
