"""Projective and antipodal spherical configurations.

Points of RP^d (or antipodal pairs of S^d) are given by nonzero
representative vectors in Q^(d+1).  Affine charts are nonzero covectors l;
a chart maps v to v / l(v) in the affine hyperplane {l = 1}, whose
coordinates are the entries of v / l(v) with the chart's pivot entry
dropped.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import orchard_partition, target_parity
from .errors import (ConsistencyError, InputError, NonGenericError, ParityGateError,
                     RetryBudgetExceeded)
from .geometry import (DEFAULT_RETRIES, Configuration, as_rat, bareiss_det, binom,
                       integer_rows, rank, sign)
from .geometry import degenerate_subset as affine_degenerate


@dataclass(frozen=True)
class HomogeneousConfiguration:
    dim: int
    vectors: tuple
    antipodal: bool = False

    def __post_init__(self):
        vecs = tuple(tuple(as_rat(x) for x in v) for v in self.vectors)
        for i, v in enumerate(vecs, 1):
            if len(v) != self.dim + 1:
                raise InputError("vector %d has %d entries, expected %d"
                                 % (i, len(v), self.dim + 1))
            if not any(v):
                raise InputError("vector %d is zero" % i)
        object.__setattr__(self, "vectors", vecs)

    @property
    def n(self):
        return len(self.vectors)

    @property
    def labels(self):
        return range(1, self.n + 1)


def homogenize(cfg, antipodal=False):
    """Append a coordinate 1 to every point."""
    return HomogeneousConfiguration(cfg.dim, tuple(p + (Fraction(1),) for p in cfg.points),
                                    antipodal)


def degenerate_subset(hcfg):
    n, d = hcfg.n, hcfg.dim
    if n <= d + 1:
        if rank(hcfg.vectors) == n:
            return None
        for k in range(2, n + 1):
            for sub in combinations(hcfg.labels, k):
                if rank([hcfg.vectors[i - 1] for i in sub]) < k:
                    return sub
    for sub in combinations(hcfg.labels, d + 1):
        if bareiss_det(integer_rows([hcfg.vectors[i - 1] for i in sub])) == 0:
            return sub
    return None


def is_generic(hcfg):
    return degenerate_subset(hcfg) is None


def require_generic(hcfg):
    bad = degenerate_subset(hcfg)
    if bad is not None:
        raise NonGenericError(bad, "vectors %s are linearly dependent" % (list(bad),))


def random_homogeneous(n, d, seed=0, coord_bound=20, antipodal=False,
                       retries=DEFAULT_RETRIES):
    """Seeded generic configuration of integer representative vectors."""
    rng = random.Random(seed)
    vecs = []
    for idx in range(n):
        for _ in range(retries + 1):
            v = tuple(rng.randint(-coord_bound, coord_bound) for _ in range(d + 1))
            trial = HomogeneousConfiguration(d, tuple(vecs) + (v,)) if any(v) else None
            if trial is not None and _extends(trial):
                vecs.append(v)
                break
        else:
            raise RetryBudgetExceeded("no generic vector found for point %d" % (idx + 1))
    return HomogeneousConfiguration(d, tuple(vecs), antipodal)


def _extends(trial):
    n, d = trial.n, trial.dim
    last = n
    if n <= d + 1:
        return rank(trial.vectors) == n
    for sub in combinations(range(1, last), d):
        rows = [trial.vectors[i - 1] for i in sub] + [trial.vectors[-1]]
        if bareiss_det(integer_rows(rows)) == 0:
            return False
    return True


# --- charts ----------------------------------------------------------------

@dataclass(frozen=True)
class Chart:
    functional: tuple

    def __post_init__(self):
        f = tuple(as_rat(x) for x in self.functional)
        if not any(f):
            raise InputError("chart functional is zero")
        object.__setattr__(self, "functional", f)

    def __call__(self, v):
        return sum(a * b for a, b in zip(self.functional, v))

    @property
    def pivot(self):
        return max(i for i, a in enumerate(self.functional) if a != 0)

    def valid_for(self, hcfg):
        return len(self.functional) == hcfg.dim + 1 and all(self(v) != 0 for v in hcfg.vectors)

    def normalize(self, v):
        lv = self(v)
        return tuple(x / lv for x in v)

    def coordinates(self, v):
        w = self.normalize(v)
        return w[:self.pivot] + w[self.pivot + 1:]


def canonical_chart(d):
    return Chart((0,) * d + (1,))


def random_chart(hcfg, rng, coord_bound=10, retries=DEFAULT_RETRIES):
    """Random integer covector that vanishes on no representative."""
    for _ in range(retries):
        ch = tuple(rng.randint(-coord_bound, coord_bound) for _ in range(hcfg.dim + 1))
        if any(ch):
            chart = Chart(ch)
            if chart.valid_for(hcfg):
                return chart
    raise RetryBudgetExceeded("no valid chart found in %d attempts" % retries)


def _chart(hcfg, chart, seed, retries=DEFAULT_RETRIES):
    if chart is None:
        return random_chart(hcfg, random.Random(seed), retries=retries)
    if not isinstance(chart, Chart):
        chart = Chart(chart)
    if len(chart.functional) != hcfg.dim + 1:
        raise InputError("chart needs %d entries" % (hcfg.dim + 1))
    bad = [i for i, v in enumerate(hcfg.vectors, 1) if chart(v) == 0]
    if bad:
        raise InputError("chart vanishes on point %d" % bad[0])
    return chart


def project_to_chart(hcfg, chart):
    """Affine configuration in R^d seen in ``chart``.

    In spherical mode each pair contributes the representative with
    l(v) > 0, which is what the normalization v / l(v) produces.
    """
    require_generic(hcfg)
    if chart is None:
        raise InputError("project_to_chart needs an explicit chart")
    chart = _chart(hcfg, chart, None)
    cfg = Configuration(hcfg.dim, tuple(chart.coordinates(v) for v in hcfg.vectors))
    if affine_degenerate(cfg) is not None:
        raise ConsistencyError("projection of a generic configuration is degenerate")
    return cfg


def projective_parity_even(n, d):
    return binom(n - 2, d) % 2 == 0


def projective_orchard(hcfg, chart=None, seed=0, retries=DEFAULT_RETRIES):
    """Orchard partition of a generic projective configuration (C(n-2,d) even)."""
    require_generic(hcfg)
    if not projective_parity_even(hcfg.n, hcfg.dim):
        raise ParityGateError(
            "C(n-2,d) = C(%d,%d) is odd: projective points carry no chart-independent "
            "partition; the odd case is described by the gamma graph (see 'gamma')"
            % (hcfg.n - 2, hcfg.dim))
    return orchard_partition(project_to_chart(hcfg, _chart(hcfg, chart, seed, retries)))


# --- antipodal spherical configurations ------------------------------------

@dataclass(frozen=True)
class SignedPartition:
    """Classes of signed labels: +i stands for v_i, -i for -v_i."""

    classA: tuple
    classB: tuple

    @classmethod
    def from_classes(cls, a, b):
        key = lambda s: (abs(s), -s)
        a, b = tuple(sorted(a, key=key)), tuple(sorted(b, key=key))
        if 1 not in a:
            a, b = b, a
        return cls(a, b)

    def class_of(self, signed):
        return "A" if signed in self.classA else "B"

    def related(self, s, t):
        return self.class_of(s) == self.class_of(t)

    @property
    def antipodes_related(self):
        """True when every P is equivalent to -P, False when none is."""
        rel = {self.related(i, -i) for i in map(abs, self.classA + self.classB)}
        if len(rel) != 1:
            raise ConsistencyError("antipodal rule is not uniform")
        return rel.pop()

    def to_dict(self):
        return {"classA": list(self.classA), "classB": list(self.classB)}


def spherical_orchard(hcfg, chart=None, seed=0, retries=DEFAULT_RETRIES):
    require_generic(hcfg)
    if not hcfg.antipodal:
        raise InputError("spherical mode needs an antipodal ('sphere') configuration")
    n, d = hcfg.n, hcfg.dim
    chart = _chart(hcfg, chart, seed, retries)
    if projective_parity_even(n, d):
        part = projective_orchard(hcfg, chart)
        a = [s * i for i in part.classA for s in (1, -1)]
        b = [s * i for i in part.classB for s in (1, -1)]
        return SignedPartition.from_classes(a, b)
    part = orchard_partition(project_to_chart(hcfg, chart))
    a, b = [], []
    for i in hcfg.labels:
        s = sign(chart(hcfg.vectors[i - 1]))
        same, other = (a, b) if part.class_of(i) == "A" else (b, a)
        same.append(s * i)
        other.append(-s * i)
    return SignedPartition.from_classes(a, b)


# --- the gamma graph -------------------------------------------------------

@dataclass(frozen=True)
class GammaEdge:
    """Chosen component of L_{P,Q} minus {P, Q} for one pair.

    ``component`` is 'bounded' or 'unbounded' relative to the chart, with
    ``homology_class`` 0 or 1 accordingly.  ``positive`` says whether the
    component is {a v_P + b v_Q : ab > 0}, a chart-free description.
    """

    pair: tuple
    counts: tuple
    component: str
    homology_class: int
    positive: bool

    def to_dict(self):
        return {"pair": list(self.pair), "counts": {"bounded": self.counts[0],
                                                    "unbounded": self.counts[1]},
                "component": self.component, "homology_class": self.homology_class,
                "positive": self.positive}


@dataclass(frozen=True)
class GammaGraph:
    chart: Chart
    edges: dict

    def edge_class(self, i, j):
        return self.edges[min(i, j), max(i, j)].homology_class

    def cycle_class(self, cycle):
        k = len(cycle)
        return sum(self.edge_class(cycle[m], cycle[(m + 1) % k]) for m in range(k)) % 2

    def to_dict(self):
        return {"chart": [str(x) for x in self.chart.functional],
                "edges": [e.to_dict() for _, e in sorted(self.edges.items())]}


def _hyperplane_value(rows, x):
    return Fraction(bareiss_det(integer_rows(list(rows) + [x])))


def gamma_graph(hcfg, chart=None, seed=0, retries=DEFAULT_RETRIES):
    require_generic(hcfg)
    n, d = hcfg.n, hcfg.dim
    if projective_parity_even(n, d):
        raise ParityGateError("C(n-2,d) = C(%d,%d) is even: both components have the same "
                              "parity and the edge graph is not defined" % (n - 2, d))
    chart = _chart(hcfg, chart, seed, retries)
    want = target_parity(n, d)
    edges = {}
    for i, j in combinations(hcfg.labels, 2):
        p = chart.normalize(hcfg.vectors[i - 1])
        q = chart.normalize(hcfg.vectors[j - 1])
        bounded = 0
        total = 0
        others = [k for k in hcfg.labels if k not in (i, j)]
        for S in combinations(others, d):
            rows = [hcfg.vectors[k - 1] for k in S]
            fp, fq = _hyperplane_value(rows, p), _hyperplane_value(rows, q)
            total += 1
            if fp != fq:
                t0 = fp / (fp - fq)
                if 0 < t0 < 1:
                    bounded += 1
        unbounded = total - bounded
        if bounded % 2 == want:
            component, h = "bounded", 0
        elif unbounded % 2 == want:
            component, h = "unbounded", 1
        else:
            raise ConsistencyError("no component has the required parity")
        same_side = sign(chart(hcfg.vectors[i - 1])) == sign(chart(hcfg.vectors[j - 1]))
        edges[i, j] = GammaEdge((i, j), (bounded, unbounded), component, h,
                                positive=(component == "bounded") == same_side)
    return GammaGraph(chart, edges)


@dataclass
class TrivialityReport:
    passed: bool
    triangles_checked: int
    witness: tuple = None

    def to_dict(self):
        return {"passed": self.passed, "triangles_checked": self.triangles_checked,
                "witness": list(self.witness) if self.witness else None}


def verify_homological_triviality(hcfg, chart=None, seed=0, retries=DEFAULT_RETRIES):
    """Every triangle of the gamma graph has even total class.

    Triangles generate the cycle space of the complete graph, so this
    decides triviality of the whole immersion.
    """
    graph = gamma_graph(hcfg, chart, seed, retries)
    checked = 0
    for tri in combinations(hcfg.labels, 3):
        checked += 1
        if graph.cycle_class(tri) != 0:
            return TrivialityReport(False, checked, tri)
    return TrivialityReport(True, checked)

