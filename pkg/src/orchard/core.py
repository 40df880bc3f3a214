"""The Orchard relation on generic affine configurations.

Two points P, Q of a generic configuration of n points in R^d are related
when the number of hyperplanes spanned by d other points that separate them
has the parity of C(n-3, d-1).  The relation is an equivalence with at most
two classes; this module computes it three independent ways (direct
counting, sign products, and the anchor method that only looks at hyperplane
functionals normalized at P_1) plus the derived tree and sign invariants.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .errors import ConsistencyError, InputError
from .geometry import (bareiss_det, binom, require_generic, separation_sign, sign)


@dataclass
class PredicateCounter:
    """Instrumentation for the complexity budget checks.

    ``sign_tests`` counts (pair, hyperplane) separation tests; ``determinants``
    counts determinant evaluations of the anchor method.
    """

    sign_tests: int = 0
    determinants: int = 0


@dataclass(frozen=True)
class SeparationCount:
    pair: tuple
    count: int


@dataclass(frozen=True)
class OrchardPartition:
    classA: tuple
    classB: tuple = ()

    @classmethod
    def from_classes(cls, first, second=()):
        """Canonical form: the class holding the smallest label is A."""
        first, second = tuple(sorted(first)), tuple(sorted(second))
        if not first or (second and second[0] < first[0]):
            first, second = second, first
        return cls(first, second)

    @property
    def labels(self):
        return tuple(sorted(self.classA + self.classB))

    def class_of(self, label):
        if label in self.classA:
            return "A"
        if label in self.classB:
            return "B"
        raise KeyError(label)

    def related(self, i, j):
        return self.class_of(i) == self.class_of(j)

    def members(self, name):
        return self.classA if name == "A" else self.classB

    def relabel(self, mapping):
        """Image under a label map (dict or 1-based sequence), re-canonicalized."""
        if not isinstance(mapping, dict):
            mapping = {i: m for i, m in enumerate(mapping, 1)}
        return OrchardPartition.from_classes([mapping[i] for i in self.classA],
                                             [mapping[i] for i in self.classB])

    def to_dict(self):
        return {"classA": list(self.classA), "classB": list(self.classB)}


@dataclass(frozen=True)
class OrchardTree:
    labels: tuple
    children: tuple = field(default=())

    @property
    def is_leaf(self):
        return not self.children

    def leaves(self):
        if self.is_leaf:
            return [self.labels]
        return [leaf for c in self.children for leaf in c.leaves()]

    def to_dict(self):
        return {"set": list(self.labels), "children": [c.to_dict() for c in self.children]}


def target_parity(n, d):
    return binom(n - 3, d - 1) % 2


def _check_pair(cfg, i, j, allow_equal=False):
    for k in (i, j):
        if not 1 <= k <= cfg.n:
            raise InputError("label %d out of range 1..%d" % (k, cfg.n))
    if i == j and not allow_equal:
        raise InputError("need two distinct labels, got %d twice" % i)


def _others(cfg, *exclude):
    return [k for k in cfg.labels if k not in exclude]


def _count(cfg, i, j, counter=None):
    total = 0
    for S in combinations(_others(cfg, i, j), cfg.dim):
        if counter is not None:
            counter.sign_tests += 1
        if separation_sign(cfg, S, i) * separation_sign(cfg, S, j) < 0:
            total += 1
    return total


def separating_subsets(cfg, i, j):
    """The d-subsets of the other points whose hyperplane separates P_i, P_j."""
    require_generic(cfg)
    _check_pair(cfg, i, j)
    return [S for S in combinations(_others(cfg, i, j), cfg.dim)
            if separation_sign(cfg, S, i) * separation_sign(cfg, S, j) < 0]


def separating_count(cfg, i, j):
    require_generic(cfg)
    _check_pair(cfg, i, j)
    return SeparationCount((i, j), _count(cfg, i, j))


def orchard_related(cfg, i, j):
    require_generic(cfg)
    _check_pair(cfg, i, j, allow_equal=True)
    if i == j:
        return True
    return _count(cfg, i, j) % 2 == target_parity(cfg.n, cfg.dim)


def sign_product_related(cfg, i, j):
    """Relation from the sign of (-1)^C(n-3,d-1) * prod det(S-P_i) det(S-P_j)."""
    require_generic(cfg)
    _check_pair(cfg, i, j)
    s = -1 if binom(cfg.n - 3, cfg.dim - 1) % 2 else 1
    for S in combinations(_others(cfg, i, j), cfg.dim):
        s *= separation_sign(cfg, S, i) * separation_sign(cfg, S, j)
    return s > 0


def _sign_table(cfg):
    """det_sign(S, P_x) for every sorted d-subset S and every x outside S."""
    table = {}
    for S in combinations(cfg.labels, cfg.dim):
        for x in cfg.labels:
            if x not in S:
                table[S, x] = separation_sign(cfg, S, x)
    return table


def pair_counts(cfg, counter=None):
    """n(P_i, P_j) for every pair i < j."""
    require_generic(cfg)
    table = _sign_table(cfg)
    counts = {}
    for i, j in combinations(cfg.labels, 2):
        c = 0
        for S in combinations(_others(cfg, i, j), cfg.dim):
            if counter is not None:
                counter.sign_tests += 1
            if table[S, i] * table[S, j] < 0:
                c += 1
        counts[i, j] = c
    return counts


def _hyperplane_normal(pts, counter):
    """Normal vector of the hyperplane through d integer points.

    Component k is the signed minor of the (d-1) x d difference matrix with
    column k removed; each minor counts as one determinant.
    """
    base = pts[0]
    rows = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    d = len(base)
    normal = []
    for k in range(d):
        minor = [row[:k] + row[k + 1:] for row in rows]
        counter.determinants += 1
        normal.append((-1) ** k * bareiss_det(minor))
    return normal, base


def anchor_parities(cfg, counter=None):
    """Parity of n(P_1, P_i) for every i >= 2 from hyperplane functionals.

    For each hyperplane H spanned by d points of P_2..P_n the affine function
    f_H vanishing on H is oriented so that f_H(P_1) < 0; H contributes to
    n(P_1, P_i) exactly when f_H(P_i) > 0.
    """
    if counter is None:
        counter = PredicateCounter()
    pts = cfg.integral
    parity = {i: 0 for i in cfg.labels if i != 1}
    for S in combinations(range(2, cfg.n + 1), cfg.dim):
        normal, base = _hyperplane_normal([pts[k - 1] for k in S], counter)

        def f(p):
            return sum(c * (a - b) for c, a, b in zip(normal, p, base))

        s1 = sign(f(pts[0]))
        if s1 == 0:
            raise ConsistencyError("P_1 lies on a spanned hyperplane of a generic input")
        for i in parity:
            if i not in S and sign(f(pts[i - 1])) == -s1:
                parity[i] ^= 1
    return parity


def _partition_from_relation(labels, related):
    """Equivalence classes of ``related`` after checking the Orchard law."""
    labels = list(labels)
    for i, j, k in combinations(labels, 3):
        rij, rjk, rik = related(i, j), related(j, k), related(i, k)
        if rij + rjk + rik == 2:
            raise ConsistencyError("transitivity fails on labels %s" % ([i, j, k],))
    if not labels:
        return OrchardPartition((), ())
    a = [labels[0]] + [k for k in labels[1:] if related(labels[0], k)]
    b = [k for k in labels if k not in a]
    for i, j in combinations(b, 2):
        if not related(i, j):
            raise ConsistencyError("more than two classes (labels %d, %d)" % (i, j))
    return OrchardPartition.from_classes(a, b)


def orchard_partition(cfg, method="anchor", counter=None):
    """Canonical Orchard partition; ``method`` is 'anchor' or 'all_pairs'."""
    require_generic(cfg)
    t = target_parity(cfg.n, cfg.dim)
    if method == "anchor":
        if cfg.n <= 1:
            return OrchardPartition(tuple(cfg.labels), ())
        parity = anchor_parities(cfg, counter)
        a = [1] + [i for i, p in parity.items() if p == t]
        b = [i for i, p in parity.items() if p != t]
        return OrchardPartition.from_classes(a, b)
    if method == "all_pairs":
        counts = pair_counts(cfg, counter)

        def related(i, j):
            return i == j or counts[min(i, j), max(i, j)] % 2 == t

        return _partition_from_relation(cfg.labels, related)
    raise InputError("unknown method %r (expected 'anchor' or 'all_pairs')" % (method,))


def orchard_tree(cfg, method="anchor"):
    require_generic(cfg)
    return _tree(cfg, tuple(cfg.labels), method)


def _tree(cfg, labels, method):
    part = orchard_partition(cfg.sub(labels), method)
    if not part.classB:
        return OrchardTree(labels)
    children = []
    for cls in (part.classA, part.classB):
        children.append(_tree(cfg, tuple(labels[k - 1] for k in cls), method))
    children.sort(key=lambda c: c.labels[0])
    return OrchardTree(labels, tuple(children))


# --- sign invariants -------------------------------------------------------

@dataclass(frozen=True)
class SignInvariant:
    """Values of phi (keyed by label) or omega (keyed by ordered pair).

    ``well_defined`` maps class name 'A'/'B' to the binomial flag; classes
    whose flag is False were normalized (see phi_invariant/omega_invariant).
    """

    values: dict
    well_defined: dict

    def to_dict(self):
        vals = {}
        for k, v in sorted(self.values.items()):
            key = str(k) if not isinstance(k, tuple) else "%d,%d" % k
            vals[key] = v
        return {"values": vals, "well_defined": dict(sorted(self.well_defined.items()))}


def _check_partition(cfg, partition):
    if partition.labels != tuple(cfg.labels):
        raise InputError("partition labels do not match the configuration")


def phi_invariant(cfg, partition=None):
    """phi(P) = sign of prod det(S - P) over sorted d-subsets S of P's opposite class.

    Well defined on a class A when C(n-2-|A|, d-2) is even.  Otherwise it is
    only defined up to a global sign on A and is normalized so the smallest
    label of A gets +1.
    """
    if cfg.dim < 1:
        raise InputError("dimension must be at least 1")
    require_generic(cfg)
    if partition is None:
        partition = orchard_partition(cfg)
    _check_partition(cfg, partition)
    n, d = cfg.n, cfg.dim
    values, flags = {}, {}
    for name, other in (("A", "B"), ("B", "A")):
        cls, opp = partition.members(name), partition.members(other)
        if not cls:
            continue
        flags[name] = binom(n - 2 - len(cls), d - 2) % 2 == 0
        for p in cls:
            s = 1
            for S in combinations(opp, d):
                s *= separation_sign(cfg, S, p)
            values[p] = s
        if not flags[name] and values[cls[0]] < 0:
            for p in cls:
                values[p] = -values[p]
    return SignInvariant(values, flags)


def omega_invariant(cfg, partition=None):
    """omega(P, Q) for ordered same-class pairs.

    Product over sorted (d-1)-subsets T of the opposite class B of
    det(P - Q, T_1 - Q, ..., T_{d-1} - Q).  Relabeling B changes the sign of
    C(|B|-2, d-3) factors per transposition, so the values are well defined
    on A when C(n-2-|A|, d-3) is even; otherwise they are normalized so
    omega(a1, a2) = +1 for the two smallest labels a1 < a2 of A.

    Swapping P and Q negates every factor, hence
    omega(Q, P) = (-1)^C(|B|, d-1) * omega(P, Q).
    """
    require_generic(cfg)
    if partition is None:
        partition = orchard_partition(cfg)
    _check_partition(cfg, partition)
    n, d = cfg.n, cfg.dim
    pts = cfg.integral
    values, flags = {}, {}
    for name, other in (("A", "B"), ("B", "A")):
        cls, opp = partition.members(name), partition.members(other)
        if len(cls) < 2:
            continue
        flags[name] = binom(n - 2 - len(cls), d - 3) % 2 == 0
        for p in cls:
            for q in cls:
                if p == q:
                    continue
                pq = pts[q - 1]
                s = 1
                for T in combinations(opp, d - 1):
                    rows = [pts[p - 1]] + [pts[t - 1] for t in T]
                    s *= sign(bareiss_det([[a - b for a, b in zip(r, pq)] for r in rows]))
                values[p, q] = s
        if not flags[name] and values[cls[0], cls[1]] < 0:
            for key in list(values):
                if key[0] in cls:
                    values[key] = -values[key]
    return SignInvariant(values, flags)
