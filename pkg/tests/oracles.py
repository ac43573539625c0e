"""Slow, obviously-correct reference implementations used only by tests."""

import itertools
from fractions import Fraction
from math import gcd


def cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def minors(rows, k):
    m, n = len(rows), len(rows[0]) if rows else 0
    for ri in itertools.combinations(range(m), k):
        for ci in itertools.combinations(range(n), k):
            yield cofactor_det([[rows[i][j] for j in ci] for i in ri])


def minor_rank(rows):
    if not rows or not rows[0]:
        return 0
    for k in range(min(len(rows), len(rows[0])), 0, -1):
        if any(minors(rows, k)):
            return k
    return 0


def determinantal_divisors(rows):
    """Elementary divisors as D_k / D_(k-1), D_k = gcd of the k x k minors."""
    out, prev = [], 1
    for k in range(1, minor_rank(rows) + 1):
        d = 0
        for x in minors(rows, k):
            d = gcd(d, x)
        out.append(d // prev)
        prev = d
    return out


def dual_quotient_brute(gram):
    """All classes of L*/L by scanning x/|det| for x in a box, reduced mod L.

    x/|det| is dual iff x.G = 0 mod |det|.  Returns the set of reduced
    coordinate tuples, so its size is |L*/L|.
    """
    n = len(gram)
    det = abs(cofactor_det(gram))
    seen = set()
    for x in itertools.product(range(det), repeat=n):
        if all(sum(x[i] * gram[i][j] for i in range(n)) % det == 0 for j in range(n)):
            seen.add(tuple(Fraction(c, det) for c in x))
    return seen


def brute_overlattices(gram, p):
    """Index-p integral overlattices, one per order-p subgroup of L*/L.

    Scans h = x/p for x in {0..p-1}^n: h is dual iff x.G = 0 mod p, and
    h.h is integral iff x.G.x = 0 mod p^2.  Returns the subgroups <h> as
    frozensets of residue tuples.
    """
    n = len(gram)
    groups = set()
    for x in itertools.product(range(p), repeat=n):
        if not any(x):
            continue
        if any(sum(x[i] * gram[i][j] for i in range(n)) % p for j in range(n)):
            continue
        if sum(x[i] * gram[i][j] * x[j] for i in range(n) for j in range(n)) % (p * p):
            continue
        groups.add(frozenset(tuple((k * c) % p for c in x) for k in range(1, p)))
    return groups
