"""Simple pseudoline arrangements in RP^2 as wiring diagrams.

Wire i starts at level i (levels count from 1 at the bottom).  The word is
a sequence of swap positions k in 1..n-1, each exchanging the wires at
levels k and k+1; every pair of wires swaps exactly once.  Closing each
wire through the point at infinity turns the diagram into an arrangement of
pseudolines in the projective plane.

For two wires i, j the complement of their union has two components:
the wedge (the regions between the two wires, left and right of their
crossing, joined at infinity) and the band (above both joined with below
both).
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import _partition_from_relation
from .errors import (ConsistencyError, DiagramError, InputError, ParityGateError,
                     RetryBudgetExceeded)
from .geometry import DEFAULT_RETRIES, binom, require_generic


@dataclass(frozen=True)
class WiringDiagram:
    n: int
    word: tuple
    labels: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(int(k) for k in self.word))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.n:
                raise InputError("need %d labels, got %d" % (self.n, len(self.labels)))

    @property
    def wires(self):
        return range(1, self.n + 1)

    def label_of(self, wire):
        return self.labels[wire - 1] if self.labels is not None else wire

    def crossings(self):
        """(index, level, lower wire, upper wire) for every swap, in word order.

        Lower/upper refer to the levels just before the swap.
        """
        at = list(range(self.n + 1))
        out = []
        for idx, k in enumerate(self.word):
            out.append((idx, k, at[k], at[k + 1]))
            at[k], at[k + 1] = at[k + 1], at[k]
        return out

    def to_dict(self):
        d = {"n": self.n, "word": list(self.word)}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d


def validate_diagram(wd):
    """True for a simple arrangement; DiagramError with a word index otherwise."""
    n = wd.n
    if n < 1:
        raise DiagramError("need at least one wire", None)
    at = list(range(n + 1))
    seen = set()
    for idx, k in enumerate(wd.word):
        if not 1 <= k <= n - 1:
            raise DiagramError("swap position %d out of range 1..%d" % (k, n - 1), idx)
        pair = (min(at[k], at[k + 1]), max(at[k], at[k + 1]))
        if pair in seen:
            raise DiagramError("wires %d and %d swap twice" % pair, idx)
        seen.add(pair)
        at[k], at[k + 1] = at[k + 1], at[k]
    if len(wd.word) != binom(n, 2):
        raise DiagramError("word has length %d, expected C(%d,2) = %d"
                           % (len(wd.word), n, binom(n, 2)), len(wd.word))
    return True


def random_diagram(n, seed=0):
    """Seeded random simple arrangement: swap random not-yet-swapped neighbours."""
    rng = random.Random(seed)
    at = list(range(n + 1))
    word = []
    while True:
        open_pos = [k for k in range(1, n) if at[k] < at[k + 1]]
        if not open_pos:
            break
        k = rng.choice(open_pos)
        word.append(k)
        at[k], at[k + 1] = at[k + 1], at[k]
    return WiringDiagram(n, tuple(word))


# --- digon counts and the partition ------------------------------------------

@dataclass(frozen=True)
class DigonCounts:
    pair: tuple
    wedge: int
    band: int

    def coherent(self, oi, oj):
        """Crossings in the digon whose boundary the orientations orient coherently.

        Two wires oriented the same way (both forward or both backward)
        orient the band coherently; opposite orientations orient the wedge.
        """
        return self.band if oi == oj else self.wedge

    def to_dict(self):
        return {"pair": list(self.pair), "wedge": self.wedge, "band": self.band}


def _check_wires(wd, i, j):
    for w in (i, j):
        if not 1 <= w <= wd.n:
            raise InputError("wire %d out of range 1..%d" % (w, wd.n))
    if i == j:
        raise InputError("need two distinct wires")


def all_digon_counts(wd):
    """DigonCounts for every pair i < j."""
    validate_diagram(wd)
    n = wd.n
    level = list(range(n + 1))
    at = list(range(n + 1))
    wedge = {p: 0 for p in combinations(wd.wires, 2)}
    for k in wd.word:
        s, t = at[k], at[k + 1]
        for i, j in wedge:
            if i in (s, t) or j in (s, t):
                continue
            if (level[i] > k) != (level[j] > k):
                wedge[i, j] += 1
        at[k], at[k + 1] = t, s
        level[s], level[t] = k + 1, k
    total = binom(n - 2, 2)
    return {p: DigonCounts(p, w, total - w) for p, w in wedge.items()}


def digon_counts(wd, i, j):
    _check_wires(wd, i, j)
    c = all_digon_counts(wd)[min(i, j), max(i, j)]
    return DigonCounts((i, j), c.wedge, c.band)


def _target(n):
    return binom(n - 3, 2) % 2


def partition_parity_even(n):
    return binom(n - 2, 2) % 2 == 0


def pseudoline_partition(wd):
    """Orchard partition of the wires (only when C(n-2,2) is even)."""
    validate_diagram(wd)
    n = wd.n
    if not partition_parity_even(n):
        raise ParityGateError("C(n-2,2) = C(%d,2) is odd: wires carry an orientation, "
                              "not a partition (see pseudoline_orientation)" % (n - 2))
    counts = all_digon_counts(wd)
    t = _target(n)

    def related(i, j):
        return i == j or counts[min(i, j), max(i, j)].wedge % 2 == t

    return _partition_from_relation(wd.wires, related)


# --- orientations ----------------------------------------------------------

@dataclass(frozen=True)
class PseudolineOrientation:
    """+1 for a wire traversed left to right, -1 for right to left."""

    directions: tuple

    def complement(self):
        return PseudolineOrientation(tuple(-o for o in self.directions))

    def to_dict(self):
        return {"directions": list(self.directions)}


def compatibility_failures(wd, orientation, counts=None):
    if len(orientation.directions) != wd.n:
        raise InputError("orientation has %d entries for %d wires"
                         % (len(orientation.directions), wd.n))
    if counts is None:
        counts = all_digon_counts(wd)
    t = _target(wd.n)
    o = orientation.directions
    return [(i, j) for (i, j), c in sorted(counts.items())
            if c.coherent(o[i - 1], o[j - 1]) % 2 != t]


def is_compatible(wd, orientation):
    return not compatibility_failures(wd, orientation)


def pseudoline_orientation(wd):
    """Both compatible orientations (only when C(n-2,2) is odd).

    Wire 1 is fixed forward, every other wire is forced by compatibility at
    its pair with wire 1, and the remaining pairs are then checked.  The
    second solution is the complement of the first.
    """
    validate_diagram(wd)
    n = wd.n
    if partition_parity_even(n):
        raise ParityGateError("C(n-2,2) = C(%d,2) is even: wires carry a partition, "
                              "not an orientation (see pseudoline_partition)" % (n - 2))
    counts = all_digon_counts(wd)
    t = _target(n)
    dirs = [1]
    for j in range(2, n + 1):
        c = counts[1, j]
        dirs.append(1 if c.coherent(1, 1) % 2 == t else -1)
    sol = PseudolineOrientation(tuple(dirs))
    bad = compatibility_failures(wd, sol, counts)
    if bad:
        raise ConsistencyError("orientation forced by wire 1 is incompatible at %s" % (bad[0],))
    return sol, sol.complement()


# --- triangle moves --------------------------------------------------------

def applicable_triangle_positions(wd):
    w = wd.word
    return [p for p in range(len(w) - 2)
            if w[p] == w[p + 2] and abs(w[p] - w[p + 1]) == 1]


def triangle_move(wd, position):
    """Rewrite (k, k+-1, k) at word index ``position`` into (k+-1, k, k+-1)."""
    w = wd.word
    if position not in applicable_triangle_positions(wd):
        raise DiagramError("no triangle pattern at index %d" % position, position)
    k, m = w[position], w[position + 1]
    out = WiringDiagram(wd.n, w[:position] + (m, k, m) + w[position + 3:], wd.labels)
    validate_diagram(out)
    return out


def triangle_wires(wd, position):
    """The three wires involved in the triangle at ``position``."""
    if position not in applicable_triangle_positions(wd):
        raise DiagramError("no triangle pattern at index %d" % position, position)
    k, m = wd.word[position], wd.word[position + 1]
    lo = min(k, m)
    at = list(range(wd.n + 1))
    for q in wd.word[:position]:
        at[q], at[q + 1] = at[q + 1], at[q]
    return tuple(sorted(at[lo:lo + 3]))


# --- desingularization -----------------------------------------------------

@dataclass(frozen=True)
class CurveReport:
    mode: str
    curves: int
    one_sided: int
    lengths: tuple

    def to_dict(self):
        return {"mode": self.mode, "curves": self.curves, "one_sided": self.one_sided,
                "two_sided": self.curves - self.one_sided, "lengths": list(self.lengths)}


def desingularize(wd, orientation, mode="respect"):
    """Smooth every crossing and describe the resulting closed curves.

    At a crossing where the lower wire a and the upper wire b meet, the
    ports are a and b on the left and right.  'respect' joins incoming to
    outgoing strands, 'oppose' uses the other smoothing.  A curve is
    one-sided in RP^2 when it passes through the line at infinity an odd
    number of times, i.e. uses an odd number of wire closures.
    ``lengths`` lists, per curve, the number of strand segments it uses.
    """
    if mode not in ("respect", "oppose"):
        raise InputError("mode must be 'respect' or 'oppose'")
    validate_diagram(wd)
    if not is_compatible(wd, orientation):
        raise InputError("orientation is not compatible")
    o = orientation.directions
    # ports: (crossing index, wire, side) with side 'L' or 'R'
    strand = {}
    infinity = set()
    by_wire = {w: [] for w in wd.wires}
    smooth = {}
    for idx, _, a, b in wd.crossings():
        by_wire[a].append(idx)
        by_wire[b].append(idx)
        parallel = o[a - 1] == o[b - 1]
        if (mode == "respect") != parallel:
            pairs = [((idx, a, "L"), (idx, b, "L")), ((idx, a, "R"), (idx, b, "R"))]
        else:
            pairs = [((idx, a, "L"), (idx, b, "R")), ((idx, b, "L"), (idx, a, "R"))]
        for u, v in pairs:
            smooth[u], smooth[v] = v, u
    curves = []
    lonely = 0
    for w, cs in by_wire.items():
        if not cs:
            lonely += 1
            continue
        for c0, c1 in zip(cs, cs[1:]):
            u, v = (c0, w, "R"), (c1, w, "L")
            strand[u], strand[v] = v, u
        u, v = (cs[-1], w, "R"), (cs[0], w, "L")
        strand[u], strand[v] = v, u
        infinity.add(frozenset((u, v)))
    seen = set()
    for start in sorted(strand):
        if start in seen:
            continue
        port, segs, inf = start, 0, 0
        while True:
            seen.add(port)
            nxt = strand[port]
            seen.add(nxt)
            segs += 1
            if frozenset((port, nxt)) in infinity:
                inf += 1
            port = smooth[nxt]
            if port == start:
                break
        curves.append((segs, inf % 2 == 1))
    curves.extend([(1, True)] * lonely)
    one_sided = sum(1 for _, odd in curves if odd)
    if one_sided % 2 != wd.n % 2:
        raise ConsistencyError("one-sided curve count has the wrong parity")
    return CurveReport(mode, len(curves), one_sided, tuple(sorted(s for s, _ in curves)))


# --- duality from point configurations -------------------------------------

def dualize(cfg, seed=0, retries=DEFAULT_RETRIES):
    """Wiring diagram of the lines dual to a generic planar configuration.

    After a seeded shear (x, y) -> (x + l*y, y) making all x-coordinates
    distinct, the point (a, b) goes to the line y = a*x - b.  The crossing
    of two dual lines lies above the slope of the line through the two
    points, so sweeping crossings by abscissa lists the swaps.  Crossings
    with equal abscissa (parallel connecting lines) involve disjoint wire
    pairs at different heights and are emitted bottom to top.  ``labels``
    maps wires to point labels.
    """
    if cfg.dim != 2:
        raise InputError("dualize needs a planar configuration")
    require_generic(cfg)
    rng = random.Random(seed)
    for attempt in range(retries):
        lam = Fraction(0) if attempt == 0 and seed == 0 else \
            Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
        pts = [(x + lam * y, y) for x, y in cfg.points]
        if len({p[0] for p in pts}) == len(pts):
            break
    else:
        raise RetryBudgetExceeded("no shear separates the x-coordinates")
    n = cfg.n
    order = sorted(range(1, n + 1), key=lambda i: -pts[i - 1][0])
    events = []
    for s, t in combinations(range(1, n + 1), 2):
        (a1, b1), (a2, b2) = pts[s - 1], pts[t - 1]
        x = (b1 - b2) / (a1 - a2)
        events.append((x, a1 * x - b1, s, t))
    events.sort()
    wire = {p: w for w, p in enumerate(order, 1)}
    at = list(range(n + 1))
    level = list(range(n + 1))
    word = []
    for x, y, p, q in events:
        s, t = wire[p], wire[q]
        k = min(level[s], level[t])
        if abs(level[s] - level[t]) != 1:
            raise ConsistencyError("sweep met a non-adjacent crossing")
        word.append(k)
        at[k], at[k + 1] = at[k + 1], at[k]
        level[at[k]], level[at[k + 1]] = k, k + 1
    wd = WiringDiagram(n, tuple(word), tuple(order))
    validate_diagram(wd)
    return wd


def partition_in_labels(wd, partition):
    """Translate a wire partition into the labels carried by ``wd``."""
    return partition.relabel({w: wd.label_of(w) for w in wd.wires})


def wire_of(wd):
    return {wd.label_of(w): w for w in wd.wires}
