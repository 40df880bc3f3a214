"""Flips: moving one point across the hyperplane spanned by d others.

A flip is realized geometrically.  The mover travels on the line through it
perpendicular to the flip hyperplane H; it reaches H at parameter 1/2 and
its mirror image at parameter 1.  It stops halfway between 1/2 and the next
hyperplane crossing, so exactly one simplex (the flipset) changes
orientation.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import orchard_partition
from .errors import ConsistencyError, FlipError, InputError
from .geometry import (DEFAULT_RETRIES, binom, chirotope, det_value, random_generic,
                       require_generic, sign, solve)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class FlipSpec:
    flipset: tuple
    mover: int

    def __post_init__(self):
        object.__setattr__(self, "flipset", tuple(sorted(self.flipset)))
        if len(set(self.flipset)) != len(self.flipset):
            raise InputError("flipset has repeated labels")
        if self.mover not in self.flipset:
            raise InputError("mover %d is not in the flipset" % self.mover)

    def to_dict(self):
        return {"flipset": list(self.flipset), "mover": self.mover}


@dataclass(frozen=True)
class FlipResult:
    before: object
    after: object
    spec: FlipSpec
    crossing_parameter: Fraction
    stop_parameter: Fraction
    direction: tuple


def _projection(p, hyper):
    """Orthogonal projection of p onto the affine span of ``hyper``."""
    q1 = hyper[0]
    basis = [[a - b for a, b in zip(q, q1)] for q in hyper[1:]]
    if not basis:
        return q1
    gram = [[sum(x * y for x, y in zip(u, v)) for v in basis] for u in basis]
    rhs = [sum(x * (a - b) for x, a, b in zip(u, p, q1)) for u in basis]
    coef = solve(gram, rhs)
    return tuple(q + sum(c * u[k] for c, u in zip(coef, basis)) for k, q in enumerate(q1))


def _det_at(subset_pts, x):
    return det_value([[a - b for a, b in zip(p, x)] for p in subset_pts])


def _snap(target, others, d, max_bits=256):
    """Coarsest dyadic point in the same open cell as ``target``.

    The cell is that of the arrangement of hyperplanes spanned by d of
    ``others``, so the snapped point gives the same chirotope.  Keeps
    coordinate sizes bounded along long flip walks.
    """
    subsets = list(combinations(others, d))
    want = [sign(_det_at(S, target)) for S in subsets]
    for bits in range(max_bits):
        scale = 2 ** bits
        cand = tuple(Fraction(round(x * scale), scale) for x in target)
        if all(sign(_det_at(S, cand)) == w for S, w in zip(subsets, want)):
            return cand
    return target


def _validate_spec(cfg, spec):
    if len(spec.flipset) != cfg.dim + 1:
        raise InputError("flipset must have d+1 = %d labels" % (cfg.dim + 1))
    for k in spec.flipset:
        if not 1 <= k <= cfg.n:
            raise InputError("label %d out of range 1..%d" % (k, cfg.n))


def apply_flip(cfg, spec, check=True):
    """Flip ``spec.flipset`` by moving ``spec.mover`` across the opposite facet.

    Raises FlipError when the straight path meets another spanned hyperplane
    before (or at the same time as) the flip hyperplane; in that case no
    single flip of this flipset is realized by moving this point.
    """
    require_generic(cfg)
    _validate_spec(cfg, spec)
    m = spec.mover
    hyper_labels = tuple(k for k in spec.flipset if k != m)
    p = cfg.point(m)
    foot = _projection(p, [cfg.point(k) for k in hyper_labels])
    v = tuple(2 * (a - b) for a, b in zip(foot, p))
    p1 = tuple(a + b for a, b in zip(p, v))
    t_next = Fraction(1)
    others = [k for k in cfg.labels if k != m]
    for S in combinations(others, cfg.dim):
        if S == hyper_labels:
            continue
        pts = [cfg.point(k) for k in S]
        g0, g1 = _det_at(pts, p), _det_at(pts, p1)
        if g0 == g1:
            continue
        t = g0 / (g0 - g1)
        if 0 < t <= HALF:
            raise FlipError("moving point %d toward the hyperplane of %s crosses the "
                            "hyperplane of %s first" % (m, list(hyper_labels), list(S)))
        if HALF < t < t_next:
            t_next = t
    stop = (HALF + t_next) / 2
    target = tuple(a + stop * b for a, b in zip(p, v))
    after = cfg.replace(m, _snap(target, [cfg.point(k) for k in others], cfg.dim))
    if check:
        diff = chirotope(cfg).differences(chirotope(after))
        if diff != [spec.flipset]:
            raise ConsistencyError("flip changed orientations of %s" % diff)
    return FlipResult(cfg, after, spec, HALF, stop, v)


def random_flip(cfg, rng, retries=DEFAULT_RETRIES):
    """Apply a uniformly chosen realizable flip.

    Candidates (mover, facet) are tried in random order.  Moving a point
    toward its nearest spanned hyperplane never crosses another one first,
    so a realizable candidate exists whenever n >= d+1.
    """
    d = cfg.dim
    cands = [(m, S) for m in cfg.labels
             for S in combinations([k for k in cfg.labels if k != m], d)]
    rng.shuffle(cands)
    for m, S in cands[:retries]:
        try:
            return apply_flip(cfg, FlipSpec(tuple(S) + (m,), m))
        except FlipError:
            continue
    raise FlipError("no realizable flip found in %d attempts" % min(retries, len(cands)))


@dataclass
class FlipRuleReport:
    passed: bool
    single_entry: bool
    checked_pairs: int
    failures: list = field(default_factory=list)

    @property
    def counterexample(self):
        return self.failures[0] if self.failures else None

    def to_dict(self):
        return {"passed": self.passed, "single_entry": self.single_entry,
                "checked_pairs": self.checked_pairs,
                "counterexample": list(self.counterexample) if self.failures else None,
                "failures": [list(f) for f in self.failures]}


def verify_flip_rule(res):
    """Same-side pairs keep their relation, mixed pairs toggle it."""
    before = orchard_partition(res.before)
    after = orchard_partition(res.after)
    single = chirotope(res.before).differences(chirotope(res.after)) == [res.spec.flipset]
    fs = set(res.spec.flipset)
    failures = []
    checked = 0
    for i, j in combinations(res.before.labels, 2):
        checked += 1
        same_side = (i in fs) == (j in fs)
        kept = before.related(i, j) == after.related(i, j)
        if kept != same_side:
            failures.append((i, j))
    return FlipRuleReport(not failures and single, single, checked, failures)


@dataclass(frozen=True)
class FlipType:
    counts: tuple
    monochromatic: bool
    orchard_equivalence_eligible: bool

    def to_dict(self):
        return {"counts": list(self.counts), "monochromatic": self.monochromatic,
                "orchard_equivalence_eligible": self.orchard_equivalence_eligible}


def classify_flip(partition, spec):
    labels = set(partition.labels)
    for k in spec.flipset:
        if k not in labels:
            raise InputError("label %d out of range" % k)
    a = sum(1 for k in spec.flipset if k in partition.classA)
    b = len(spec.flipset) - a
    d = len(spec.flipset) - 1
    eligible = d % 2 == 1 and a == b == (d + 1) // 2
    return FlipType((a, b), a == 0 or b == 0, eligible)


# --- pointed parity experiments ---------------------------------------------

def pi_value(n, d):
    """Common parity of both class sizes for d odd and n = 2m even."""
    if d % 2 == 0 or n % 2 == 1:
        raise InputError("pi(n, d) is only defined for d odd and n even")
    m = n // 2
    return m % 2 if binom(n - 3, d - 1) % 2 == 1 else 0


def parity_law(n, d):
    if d % 2 == 0:
        return "toggle"
    if n % 2 == 1:
        return "constant"
    return "pi"


def pointed_parity_experiment(n, d, trials=10, steps=10, seed=0, coord_bound=50,
                              retries=DEFAULT_RETRIES):
    """Random flip walks on pointed configurations; checks the parity laws.

    The selected class starts as A.  After a flip of F the selected class is
    predicted to be (selected - F) + (F - selected), which must be one of the
    two new classes; its size is the new a-bar.
    """
    rng = random.Random(seed)
    law = parity_law(n, d)
    pi = pi_value(n, d) if law == "pi" else None
    records = []
    passed = True
    for trial in range(trials):
        cfg = random_generic(n, d, seed=rng.randrange(2 ** 32), coord_bound=coord_bound,
                             retries=retries)
        part = orchard_partition(cfg)
        selected = set(part.classA)
        abar = [len(selected)]
        bbar = [n - len(selected)]
        flips = []
        violations = []
        if law == "pi" and not (abar[0] % 2 == bbar[0] % 2 == pi):
            violations.append({"step": 0, "reason": "a-bar/b-bar parity differs from pi"})
        for step in range(1, steps + 1 if n >= d + 1 else 1):
            res = random_flip(cfg, rng, retries)
            new_part = orchard_partition(res.after)
            predicted = selected ^ set(res.spec.flipset)
            classes = (set(new_part.classA), set(new_part.classB))
            if predicted not in classes:
                violations.append({"step": step, "reason": "selected class not preserved"})
            selected = predicted
            prev = abar[-1]
            abar.append(len(selected))
            bbar.append(n - len(selected))
            flips.append(res.spec.to_dict())
            if law == "toggle" and abar[-1] % 2 == prev % 2:
                violations.append({"step": step, "reason": "a-bar parity did not toggle"})
            if law == "constant" and abar[-1] % 2 != prev % 2:
                violations.append({"step": step, "reason": "a-bar parity changed"})
            if law == "pi" and not (abar[-1] % 2 == bbar[-1] % 2 == pi):
                violations.append({"step": step, "reason": "a-bar/b-bar parity differs from pi"})
            cfg = res.after
        passed = passed and not violations
        records.append({"trial": trial, "abar": abar, "bbar": bbar, "flips": flips,
                        "violations": violations})
    return {"n": n, "d": d, "law": law, "pi": pi, "trials": trials, "steps": steps,
            "seed": seed, "passed": passed, "records": records}


def flip_walk(cfg, steps, seed=0, retries=DEFAULT_RETRIES):
    """Sequence of FlipResults of a seeded random walk."""
    rng = random.Random(seed)
    out = []
    for _ in range(steps):
        res = random_flip(cfg, rng, retries)
        out.append(res)
        cfg = res.after
    return out

