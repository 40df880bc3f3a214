"""Exact rational geometry: determinant signs, genericity, chirotopes.

Coordinates are :class:`fractions.Fraction` values.  Nothing in this module
touches floating point.  Labels are 1-based everywhere.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from math import comb, lcm

from .errors import DimensionMismatch, NonGenericError, RetryBudgetExceeded

PERTURBATION_EPSILON = Fraction(1, 2 ** 40)
DEFAULT_RETRIES = 1000


def as_rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use int, str or Fraction")
    return Fraction(x)


def binom(a, b):
    """Binomial coefficient that is 0 whenever a < 0, b < 0 or b > a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def sign(x):
    return (x > 0) - (x < 0)


# --- linear algebra over Z and Q ------------------------------------------

def bareiss_det(m):
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    flip = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    flip = -flip
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return flip * a[n - 1][n - 1]


def integer_rows(rows):
    """Scale each rational row by the lcm of its denominators.

    Every multiplier is positive, so determinant signs are preserved.
    """
    out = []
    for row in rows:
        den = reduce(lcm, (as_rat(x).denominator for x in row), 1)
        out.append([int(as_rat(x) * den) for x in row])
    return out


def det_value(rows):
    """Exact determinant of a square rational matrix."""
    ints = []
    scale = Fraction(1)
    for row in rows:
        den = reduce(lcm, (as_rat(x).denominator for x in row), 1)
        ints.append([int(as_rat(x) * den) for x in row])
        scale *= den
    return Fraction(bareiss_det(ints)) / scale


def det_sign_rows(rows):
    """Sign of the determinant of a square matrix of rationals."""
    for row in rows:
        if len(row) != len(rows):
            raise DimensionMismatch("matrix is not square")
    return sign(bareiss_det(integer_rows(rows)))


def rank(rows):
    """Rank of a rational matrix (Gaussian elimination over Q)."""
    a = [[as_rat(x) for x in row] for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def solve(m, b):
    """Solve the nonsingular rational system ``m x = b``."""
    n = len(m)
    a = [[as_rat(x) for x in row] + [as_rat(y)] for row, y in zip(m, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[c], a[piv] = a[piv], a[c]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] / a[i][i] for i in range(n)]


def nullspace(rows, ncols):
    """Basis of the right kernel of a rational matrix, as lists of Fractions."""
    a = [[as_rat(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


# --- configurations --------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """An ordered, labeled list of points in Q^dim (label i is ``points[i-1]``)."""

    dim: int
    points: tuple = field(default=())

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch("dimension must be positive")
        pts = tuple(tuple(as_rat(x) for x in p) for p in self.points)
        for i, p in enumerate(pts, 1):
            if len(p) != self.dim:
                raise DimensionMismatch(
                    "point %d has %d coordinates, expected %d" % (i, len(p), self.dim))
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points, dim=None):
        points = [tuple(p) if not isinstance(p, (int, str, Fraction)) else (p,)
                  for p in points]
        if dim is None:
            if not points:
                raise DimensionMismatch("cannot infer dimension of an empty configuration")
            dim = len(points[0])
        return cls(dim, tuple(points))

    @property
    def n(self):
        return len(self.points)

    @property
    def labels(self):
        return range(1, self.n + 1)

    def __len__(self):
        return len(self.points)

    def point(self, label):
        if not 1 <= label <= self.n:
            raise IndexError("label %d out of range 1..%d" % (label, self.n))
        return self.points[label - 1]

    def sub(self, labels):
        """Induced subconfiguration; relative label order is kept."""
        return Configuration(self.dim, tuple(self.point(i) for i in labels))

    def replace(self, label, coords):
        pts = list(self.points)
        pts[label - 1] = tuple(coords)
        return Configuration(self.dim, tuple(pts))

    @cached_property
    def integral(self):
        """Points scaled by one common positive integer so all coordinates are ints.

        Every determinant sign of this module is invariant under that scaling.
        """
        den = reduce(lcm, (x.denominator for p in self.points for x in p), 1)
        return tuple(tuple(int(x * den) for x in p) for p in self.points)


def _det_sign_int(s_rows, x):
    return sign(bareiss_det([[a - b for a, b in zip(p, x)] for p in s_rows]))


def det_sign(S, X):
    """Sign of det(S - X): the d x d matrix with rows P - X for P in S."""
    X = tuple(as_rat(x) for x in X)
    d = len(X)
    if len(S) != d:
        raise DimensionMismatch("need exactly %d points, got %d" % (d, len(S)))
    rows = []
    for p in S:
        if len(p) != d:
            raise DimensionMismatch("point dimension differs from %d" % d)
        rows.append([as_rat(a) - b for a, b in zip(p, X)])
    return det_sign_rows(rows)


def simplex_sign(cfg, labels):
    """Orientation of the simplex (P_{i_0}, ..., P_{i_d}) taken in the given order."""
    pts = cfg.integral
    base = pts[labels[0] - 1]
    return _det_sign_int([pts[i - 1] for i in labels[1:]], base)


def separation_sign(cfg, subset, label):
    """det_sign over the integer-scaled points; ``subset`` holds d labels."""
    pts = cfg.integral
    return _det_sign_int([pts[i - 1] for i in subset], pts[label - 1])


def degenerate_subset(cfg):
    """Return one affinely dependent subset (sorted labels) or None."""
    n, d = cfg.n, cfg.dim
    if n <= d + 1:
        if n <= 1:
            return None
        base = cfg.points[0]
        diffs = [[a - b for a, b in zip(p, base)] for p in cfg.points[1:]]
        if rank(diffs) < n - 1:
            # shrink to a minimal witness for a useful message
            for k in range(2, n + 1):
                for sub in combinations(range(1, n + 1), k):
                    b0 = cfg.point(sub[0])
                    dd = [[a - b for a, b in zip(cfg.point(i), b0)] for i in sub[1:]]
                    if rank(dd) < k - 1:
                        return sub
        return None
    for sub in combinations(range(1, n + 1), d + 1):
        if simplex_sign(cfg, sub) == 0:
            return sub
    return None


def is_generic(cfg):
    return degenerate_subset(cfg) is None


def require_generic(cfg):
    bad = degenerate_subset(cfg)
    if bad is not None:
        raise NonGenericError(bad, "configuration is not generic: points %s are affinely "
                                   "dependent" % (list(bad),))


@dataclass(frozen=True)
class Chirotope:
    dim: int
    n: int
    signs: dict

    def __getitem__(self, key):
        return self.signs[tuple(key)]

    def __eq__(self, other):
        return (isinstance(other, Chirotope) and self.dim == other.dim
                and self.n == other.n and self.signs == other.signs)

    def differences(self, other):
        return sorted(k for k in self.signs if self.signs[k] != other.signs[k])


def chirotope(cfg):
    """Orientation of every sorted (d+1)-subset of a generic configuration."""
    require_generic(cfg)
    signs = {sub: simplex_sign(cfg, sub)
             for sub in combinations(range(1, cfg.n + 1), cfg.dim + 1)}
    return Chirotope(cfg.dim, cfg.n, signs)


def _permutation_sign(seq):
    seq = list(seq)
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def same_isomorphism_type(a, b, bijection=None):
    """True iff the chirotopes of ``a`` and ``b`` agree under ``bijection``.

    ``bijection`` maps labels of ``a`` to labels of ``b`` (dict or sequence
    indexed from label 1); identity by default.
    """
    if a.n != b.n or a.dim != b.dim:
        raise DimensionMismatch("configurations differ in size or dimension")
    if bijection is None:
        phi = {i: i for i in a.labels}
    elif isinstance(bijection, dict):
        phi = dict(bijection)
    else:
        phi = {i: j for i, j in enumerate(bijection, 1)}
    if sorted(phi) != list(a.labels) or sorted(phi.values()) != list(b.labels):
        raise DimensionMismatch("bijection is not a permutation of the labels")
    ca, cb = chirotope(a), chirotope(b)
    for sub, s in ca.signs.items():
        image = [phi[i] for i in sub]
        if cb[tuple(sorted(image))] * _permutation_sign(image) != s:
            return False
    return True


def _extends_generically(points, candidate, d):
    """Would appending ``candidate`` keep an already generic point list generic?"""
    k = len(points)
    if k + 1 <= d + 1:
        base = candidate
        diffs = [[a - b for a, b in zip(p, base)] for p in points]
        return rank(diffs) == k
    for sub in combinations(points, d):
        if _det_sign_int(sub, candidate) == 0:
            return False
    return True


def random_generic(n, d, seed=0, coord_bound=50, retries=DEFAULT_RETRIES):
    """Seeded generic configuration with integer coordinates in [-bound, bound].

    Points are drawn one at a time; a point that breaks genericity is redrawn,
    at most ``retries`` times per point.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    rng = random.Random(seed)
    pts = []
    for idx in range(n):
        for _ in range(retries + 1):
            cand = tuple(rng.randint(-coord_bound, coord_bound) for _ in range(d))
            if _extends_generically(pts, cand, d):
                pts.append(cand)
                break
        else:
            raise RetryBudgetExceeded(
                "no generic position found for point %d after %d retries; "
                "coord_bound=%d is too small for n=%d, d=%d"
                % (idx + 1, retries, coord_bound, n, d))
    return Configuration(d, tuple(pts))


def perturb(cfg, seed=0, epsilon=PERTURBATION_EPSILON, spread=1000):
    """Move every coordinate by epsilon times a seeded integer in [-spread, spread].

    Used to evaluate the relation on the generic points of a degenerate
    configuration.  The result depends on the perturbation; raises
    NonGenericError if the perturbed configuration is still degenerate.
    """
    rng = random.Random(seed)
    pts = tuple(tuple(x + epsilon * rng.randint(-spread, spread) for x in p)
                for p in cfg.points)
    out = Configuration(cfg.dim, pts)
    require_generic(out)
    return out


def generic_points(cfg):
    """Labels P such that P together with any k <= d others spans a k-flat."""
    d = cfg.dim
    good = []
    for p in cfg.labels:
        others = [i for i in cfg.labels if i != p]
        ok = True
        for k in range(1, min(d, len(others)) + 1):
            for sub in combinations(others, k):
                base = cfg.point(p)
                diffs = [[a - b for a, b in zip(cfg.point(i), base)] for i in sub]
                if rank(diffs) < k:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            good.append(p)
    return good


def affine_image(cfg, matrix, offset=None):
    """Apply x -> M x + offset with rational M (rows) and offset."""
    d = cfg.dim
    offset = [as_rat(o) for o in (offset or [0] * d)]
    m = [[as_rat(x) for x in row] for row in matrix]
    pts = [tuple(sum(m[r][c] * p[c] for c in range(d)) + offset[r] for r in range(len(m)))
           for p in cfg.points]
    return Configuration(len(m), tuple(pts))


def moment_curve(n, d, params=None):
    """Points (a, a^2, ..., a^d) for increasing positive parameters (default 1..n)."""
    params = [as_rat(a) for a in (params or range(1, n + 1))]
    return Configuration(d, tuple(tuple(a ** k for k in range(1, d + 1)) for a in params))


def circle_point(t):
    """Rational point on the unit circle with tangent half-angle t."""
    t = as_rat(t)
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def regular_polygon(m, max_denominator=1000):
    """Convex m-gon with exact rational vertices on the unit circle.

    The tangent half-angles are rational approximations of the regular
    polygon's; the float is only used to choose them.  Vertices on a circle
    are in convex position with no three collinear, so the result has the
    isomorphism type of the regular m-gon.
    """
    from math import pi, tan

    pts = []
    for k in range(m):
        theta = 2 * pi * k / m - pi / 2 + pi / (2 * m)
        t = Fraction(tan(theta / 2)).limit_denominator(max_denominator)
        pts.append(circle_point(t))
    return Configuration(2, tuple(pts))
