"""Slow reference implementations used only by the tests.

Nothing here imports the package's predicates: determinants go through
sympy, hull membership through Caratheodory (q lies in the hull iff it lies
in a simplex spanned by at most d+1 generators), and segment crossings are
solved directly.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy


def F(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def det(rows):
    return Fraction(str(sympy.Matrix([[sympy.Rational(str(F(v))) for v in r] for r in rows]).det()))


def orient(points):
    d = len(points[0])
    cols = [list(map(F, p)) + [Fraction(1)] for p in points]
    rows = [[cols[j][i] for j in range(d + 1)] for i in range(d + 1)]
    v = det(rows)
    return (v > 0) - (v < 0)


def _simplex_contains(q, verts):
    """Solve sum l_i v_i = q, sum l_i = 1 for affinely independent verts."""
    k = len(verts)
    d = len(q)
    M = sympy.Matrix([[sympy.Rational(str(F(v[i]))) for v in verts] for i in range(d)]
                     + [[1] * k])
    b = sympy.Matrix([sympy.Rational(str(F(x))) for x in q] + [1])
    if M.rank() != k:
        return False
    try:
        sol, params = M.gauss_jordan_solve(b)
    except ValueError:
        return False
    if params.shape[0]:
        return False
    return all(x >= 0 for x in sol)


def in_hull(q, S):
    q = tuple(map(F, q))
    S = [tuple(map(F, p)) for p in S]
    d = len(q)
    for k in range(1, min(d + 1, len(S)) + 1):
        for sub in itertools.combinations(S, k):
            if _simplex_contains(q, list(sub)):
                return True
    return False


def _segments_cross(a, b, c, e):
    """Closed segments ab and ce share a point (planar)."""
    def cr(o, p, r):
        return (p[0] - o[0]) * (r[1] - o[1]) - (p[1] - o[1]) * (r[0] - o[0])

    def on(o, p, r):
        return min(o[0], p[0]) <= r[0] <= max(o[0], p[0]) and min(o[1], p[1]) <= r[1] <= max(o[1], p[1])

    d1, d2, d3, d4 = cr(c, e, a), cr(c, e, b), cr(a, b, c), cr(a, b, e)
    if ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4)):
        return True
    return ((d1 == 0 and on(c, e, a)) or (d2 == 0 and on(c, e, b))
            or (d3 == 0 and on(a, b, c)) or (d4 == 0 and on(a, b, e)))


def hulls_intersect_2d(S1, S2):
    S1 = [tuple(map(F, p)) for p in S1]
    S2 = [tuple(map(F, p)) for p in S2]
    if any(in_hull(p, S2) for p in S1) or any(in_hull(p, S1) for p in S2):
        return True
    for a, b in itertools.combinations(S1, 2):
        for c, e in itertools.combinations(S2, 2):
            if _segments_cross(a, b, c, e):
                return True
    return False


def one_sided_bruteforce(P, A, weights=None):
    """max over S subset of P of the one-sided objective, by direct counting."""
    P = [tuple(map(F, p)) for p in P]
    A = [tuple(map(F, p)) for p in A]
    weights = weights or [1] * len(A)
    W = sum(weights)
    best = Fraction(0)
    n = len(P)
    for r in range(1, n + 1):
        for S in itertools.combinations(range(n), r):
            gens = [P[i] for i in S]
            pc = sum(1 for p in P if in_hull(p, gens))
            aw = sum(w for a, w in zip(A, weights) if in_hull(a, gens))
            best = max(best, Fraction(pc, n) - Fraction(aw, W))
    return best


def stabs(x, intervals):
    """Each element of x in a different interval (intervals as (lo, hi))."""
    used = set()
    for v in x:
        hit = [k for k, (lo, hi) in enumerate(intervals) if lo <= v <= hi]
        if not hit or hit[0] in used:
            return False
        used.add(hit[0])
    return True
