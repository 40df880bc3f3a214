"""Independent oracles and seeded corpora shared by the tests.

The oracles deliberately avoid the library's determinant code: they use the
Leibniz expansion over Fractions and plain permutation bookkeeping.
"""

import random
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from orchard.geometry import random_generic


def binom(a, b):
    return comb(a, b) if a >= 0 and 0 <= b <= a else 0


def perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def leibniz_det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_sign(p))
        for r in range(n):
            term *= rows[r][p[r]]
        total += term
    return total


def side(points, S, x):
    """Sign of det(P_s - X) over s in S (0-based indices into ``points``)."""
    X = points[x]
    v = leibniz_det([[Fraction(a) - b for a, b in zip(points[s], X)] for s in S])
    return (v > 0) - (v < 0)


def naive_count(points, d, i, j):
    """Hyperplanes spanned by d points other than i, j separating them (0-based)."""
    others = [k for k in range(len(points)) if k not in (i, j)]
    return sum(1 for S in combinations(others, d) if side(points, S, i) * side(points, S, j) < 0)


def naive_partition(points, d):
    """Classes (sets of 1-based labels) of the naive relation, or None if it is not
    an equivalence relation with at most two classes."""
    n = len(points)
    t = binom(n - 3, d - 1) % 2
    rel = {}
    for i, j in combinations(range(n), 2):
        rel[i, j] = rel[j, i] = naive_count(points, d, i, j) % 2 == t
    for i in range(n):
        rel[i, i] = True
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if rel[i, j] and rel[j, k] and not rel[i, k]:
                    return None
    classes = []
    for i in range(n):
        for c in classes:
            if rel[i, c[0]]:
                c.append(i)
                break
        else:
            classes.append([i])
    if len(classes) > 2:
        return None
    return [set(k + 1 for k in c) for c in classes]


def as_classes(partition):
    return sorted([set(partition.classA), set(partition.classB)] if partition.classB
                  else [set(partition.classA)], key=min)


def corpus(size=200, seed=20240611):
    """Seeded random generic configurations with d in 1..4 and n in 3..10 (n <= 8 for d = 4)."""
    rng = random.Random(seed)
    out = []
    for k in range(size):
        d = 1 + k % 4
        n = rng.randint(3, 8 if d == 4 else 10)
        out.append(random_generic(n, d, seed=rng.randrange(2 ** 31), coord_bound=50))
    return out


def replay_levels(n, word, upto):
    """Bottom-to-top wire order after the first ``upto`` swaps."""
    order = list(range(1, n + 1))
    for k in word[:upto]:
        order[k - 1], order[k] = order[k], order[k - 1]
    return order


def naive_wedge(n, word, i, j):
    """Crossings of other wire pairs lying between wires i and j (vertically)."""
    total = 0
    for idx, k in enumerate(word):
        order = replay_levels(n, word, idx)
        s, t = order[k - 1], order[k]
        if {s, t} & {i, j}:
            continue
        li, lj = order.index(i) + 1, order.index(j) + 1
        if min(li, lj) < k + 0.5 < max(li, lj):
            total += 1
    return total
