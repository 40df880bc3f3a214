"""Orchard relation for separating function families.

A family is a (d+1)-dimensional space C of polynomial functions on Q^k that
contains the constants, given by a basis b_1..b_d of the functions in C
vanishing at the origin.  Points are mapped to Q^d by
V(P) = (b_1(P), ..., b_d(P)); a d-subset S separates P and Q when the
function of C vanishing on S (unique up to scale) takes opposite signs at P
and Q.

Polynomial grammar (used by ``family poly``)::

    poly  := term (('+' | '-') term)*
    term  := ['-'] [rational ['*']] [mono ('*' mono)*]
    mono  := var ['^' int]
    var   := x1 | x2 | ... | x | y | z      (x, y, z alias x1, x2, x3)
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import orchard_partition, target_parity
from .errors import ConsistencyError, InputError, NonGenericError, ParseError
from .geometry import (Configuration, as_rat, degenerate_subset, nullspace,
                       separation_sign)

_ALIASES = {"x": 1, "y": 2, "z": 3}
_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(x\d+|[xyz])|(\^)|(\*)|([+-]))")


class Polynomial:
    """Polynomial with rational coefficients in variables x1..xk."""

    def __init__(self, k, terms):
        self.k = k
        self.terms = {}
        for exps, c in terms.items():
            exps = tuple(exps) + (0,) * (k - len(exps))
            if len(exps) != k:
                raise InputError("monomial has more than %d variables" % k)
            c = as_rat(c)
            if c:
                self.terms[exps] = self.terms.get(exps, Fraction(0)) + c
                if not self.terms[exps]:
                    del self.terms[exps]

    @classmethod
    def variable(cls, k, i, power=1):
        exps = [0] * k
        exps[i - 1] = power
        return cls(k, {tuple(exps): 1})

    @classmethod
    def parse(cls, text, k):
        return cls(k, _parse_terms(text, k))

    def __call__(self, point):
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term *= as_rat(x) ** e
            total += term
        return total

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Polynomial(self.k, terms)

    def scale(self, c):
        return Polynomial(self.k, {e: c * v for e, v in self.terms.items()})

    @property
    def constant_term(self):
        return self.terms.get((0,) * self.k, Fraction(0))

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), [-x for x in e])):
            c = self.terms[exps]
            mono = "*".join("x%d" % (i + 1) if e == 1 else "x%d^%d" % (i + 1, e)
                            for i, e in enumerate(exps) if e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = "%s*%s" % (mag, mono)
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, body in parts[1:]:
            out += " %s %s" % (s, body)
        return out

    __repr__ = __str__


def _tokens(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("cannot parse polynomial near %r" % text[pos:])
        num, var, caret, star, pm = m.groups()
        if num:
            out.append(("num", Fraction(num)))
        elif var:
            out.append(("var", _ALIASES.get(var) or int(var[1:])))
        elif caret:
            out.append(("^", None))
        elif star:
            out.append(("*", None))
        else:
            out.append(("pm", pm))
        pos = m.end()
    return out


def _parse_terms(text, k):
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty polynomial")
    terms = {}
    i = 0
    first = True
    while i < len(toks):
        sgn = 1
        if toks[i][0] == "pm":
            sgn = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError("expected '+' or '-' in %r" % text)
        first = False
        coef = Fraction(sgn)
        exps = [0] * k
        seen_factor = False
        while i < len(toks) and toks[i][0] in ("num", "var", "*"):
            kind, val = toks[i]
            if kind == "*":
                if not seen_factor:
                    raise ParseError("dangling '*' in %r" % text)
                i += 1
                continue
            if kind == "num":
                coef *= val
                i += 1
            else:
                if not 1 <= val <= k:
                    raise ParseError("variable x%d outside x1..x%d" % (val, k))
                power = 1
                i += 1
                if i < len(toks) and toks[i][0] == "^":
                    if i + 1 >= len(toks) or toks[i + 1][0] != "num" \
                            or toks[i + 1][1].denominator != 1:
                        raise ParseError("exponent must be a non-negative integer")
                    power = int(toks[i + 1][1])
                    i += 2
                exps[val - 1] += power
            seen_factor = True
        if not seen_factor:
            raise ParseError("empty term in %r" % text)
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coef
    return terms


@dataclass(frozen=True)
class FunctionFamily:
    name: str
    source_dim: int
    basis: tuple
    params: tuple = ()

    def __post_init__(self):
        for b in self.basis:
            if b.k != self.source_dim:
                raise InputError("basis polynomial %s is not in %d variables"
                                 % (b, self.source_dim))
            if b.constant_term != 0:
                raise InputError("basis polynomial %s does not vanish at the origin" % b)
        if not self.basis:
            raise InputError("a family needs at least one basis function")

    @property
    def sep_dim(self):
        return len(self.basis)

    def lift(self, point):
        if len(point) != self.source_dim:
            raise InputError("point has %d coordinates, family expects %d"
                             % (len(point), self.source_dim))
        return tuple(b(point) for b in self.basis)

    def header(self):
        if self.name == "poly":
            return "family poly %d ; %s" % (self.source_dim,
                                            " ; ".join(str(b) for b in self.basis))
        return " ".join(["family", self.name] + [str(p) for p in self.params])

    def to_dict(self):
        return {"name": self.name, "source_dim": self.source_dim, "sep_dim": self.sep_dim,
                "basis": [str(b) for b in self.basis]}


def affine_family(d):
    return FunctionFamily("affine", d, tuple(Polynomial.variable(d, i) for i in range(1, d + 1)),
                          (d,))


def circle_family():
    x, y = Polynomial.variable(2, 1), Polynomial.variable(2, 2)
    r2 = Polynomial.variable(2, 1, 2) + Polynomial.variable(2, 2, 2)
    return FunctionFamily("circles", 2, (x, y, r2))


def conic_family():
    b = [Polynomial.parse(s, 2) for s in ("x1", "x2", "x1^2", "x1*x2", "x2^2")]
    return FunctionFamily("conics", 2, tuple(b))


def interpolation_family(d):
    """Polynomials of degree < d in x plus multiples of y (k = 2)."""
    if d < 1:
        raise InputError("interpolation family needs d >= 1")
    b = [Polynomial.variable(2, 1, e) for e in range(1, d)] + [Polynomial.variable(2, 2)]
    return FunctionFamily("interpolation", 2, tuple(b), (d,))


def polynomial_family(k, basis):
    polys = tuple(b if isinstance(b, Polynomial) else Polynomial.parse(b, k) for b in basis)
    return FunctionFamily("poly", k, polys)


def family_from_header(line):
    """Parse ``family <name> [params]``."""
    body = line.strip()
    if not body.startswith("family"):
        raise ParseError("family line must start with 'family'")
    body = body[len("family"):].strip()
    if body.startswith("poly"):
        parts = [p.strip() for p in body[len("poly"):].split(";")]
        try:
            k = int(parts[0])
        except ValueError:
            raise ParseError("'family poly' needs the number of variables first") from None
        return polynomial_family(k, [p for p in parts[1:] if p])
    toks = body.split()
    if not toks:
        raise ParseError("missing family name")
    name, params = toks[0], toks[1:]
    try:
        if name == "affine" and len(params) == 1:
            return affine_family(int(params[0]))
        if name == "circles" and not params:
            return circle_family()
        if name == "conics" and not params:
            return conic_family()
        if name == "interpolation" and len(params) == 1:
            return interpolation_family(int(params[0]))
    except ValueError:
        raise ParseError("bad parameters for family %r" % name) from None
    raise ParseError("unknown family specification %r" % line.strip())


@dataclass(frozen=True)
class GeneralizedConfiguration:
    family: FunctionFamily
    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(as_rat(x) for x in p) for p in self.points)
        for p in pts:
            if len(p) != self.family.source_dim:
                raise InputError("point has %d coordinates, family expects %d"
                                 % (len(p), self.family.source_dim))
        object.__setattr__(self, "points", pts)

    @property
    def n(self):
        return len(self.points)


def veronese_image(gcfg):
    return Configuration(gcfg.family.sep_dim,
                         tuple(gcfg.family.lift(p) for p in gcfg.points))


def c_generic(gcfg):
    return degenerate_subset(veronese_image(gcfg)) is None


def require_c_generic(gcfg):
    image = veronese_image(gcfg)
    bad = degenerate_subset(image)
    if bad is not None:
        raise NonGenericError(bad, "points %s are not generic for family %r"
                              % (list(bad), gcfg.family.name))
    return image


def vanishing_function(gcfg, subset):
    """The function of the family vanishing on the points of ``subset``.

    Solved directly as the kernel of the interpolation system; raises
    NonGenericError unless that kernel is one-dimensional.
    """
    fam = gcfg.family
    rows = [[1] + list(fam.lift(gcfg.points[s - 1])) for s in subset]
    ker = nullspace(rows, fam.sep_dim + 1)
    if len(ker) != 1:
        raise NonGenericError(subset, "functions vanishing on %s form a %d-dimensional space"
                              % (list(subset), len(ker)))
    c = ker[0]
    f = Polynomial(fam.source_dim, {(0,) * fam.source_dim: c[0]})
    for coef, b in zip(c[1:], fam.basis):
        f = f + b.scale(coef)
    return f


def _subsets(gcfg, i, j):
    others = [k for k in range(1, gcfg.n + 1) if k not in (i, j)]
    return combinations(others, gcfg.family.sep_dim)


def separating_subsets_direct(gcfg, i, j):
    """Subsets whose vanishing function has opposite signs at P_i and P_j."""
    require_c_generic(gcfg)
    p, q = gcfg.points[i - 1], gcfg.points[j - 1]
    out = []
    for S in _subsets(gcfg, i, j):
        f = vanishing_function(gcfg, S)
        if f(p) * f(q) < 0:
            out.append(S)
    return out


def separating_subsets_image(gcfg, i, j):
    """Subsets whose spanned hyperplane separates V(P_i), V(P_j)."""
    image = require_c_generic(gcfg)
    return [S for S in _subsets(gcfg, i, j)
            if separation_sign(image, S, i) * separation_sign(image, S, j) < 0]


def c_separating_count(gcfg, i, j, method="image"):
    if i == j or not (1 <= i <= gcfg.n and 1 <= j <= gcfg.n):
        raise InputError("need two distinct labels in 1..%d" % gcfg.n)
    if method == "image":
        return len(separating_subsets_image(gcfg, i, j))
    if method == "direct":
        return len(separating_subsets_direct(gcfg, i, j))
    raise InputError("unknown method %r" % (method,))


def c_orchard_partition(gcfg, verify=True):
    """Orchard partition of the family; with ``verify`` the direct count is re-checked."""
    image = require_c_generic(gcfg)
    part = orchard_partition(image)
    if verify:
        t = target_parity(gcfg.n, gcfg.family.sep_dim)
        for i, j in combinations(range(1, gcfg.n + 1), 2):
            direct = c_separating_count(gcfg, i, j, method="direct") % 2 == t
            if direct != part.related(i, j):
                raise ConsistencyError("direct count disagrees with the image for pair %s"
                                       % ([i, j],))
    return part


def inverse_stereographic(u, v):
    """Rational point of the unit sphere projecting to (u, v) from the north pole."""
    u, v = as_rat(u), as_rat(v)
    s = u * u + v * v
    return (2 * u / (s + 1), 2 * v / (s + 1), (s - 1) / (s + 1))

