"""Convex-set discrepancy between a point sequence and a weighted multiset.

Every convex set is represented by the closed hull of a finite generator
set, which loses nothing on a finite ground set: the trace of any convex C
is the trace of conv(C ∩ ground).
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exceptions import (CapExceeded, EmptyApproximant, InternalInvariantViolation,
                         NotConvexPosition, NotPlanar)
from .geometry import (HullOracle, Point, PointSequence, format_scalar,
                       in_convex_hull, make_point)
from .homogeneous import sequence_sign

ONE_SIDED_CAP = 14
TWO_SIDED_CAP = 18


@dataclass(frozen=True)
class WeightedPointSet:
    """A multiset of points: ``entries`` is a tuple of (point, multiplicity)."""

    dim: int
    entries: tuple

    def __post_init__(self):
        if not self.entries:
            raise EmptyApproximant("an approximant needs positive total weight")
        for p, w in self.entries:
            if len(p) != self.dim:
                raise ValueError("point dimension does not match")
            if int(w) != w or w < 1:
                raise ValueError("multiplicities must be positive integers")

    @classmethod
    def from_points(cls, points, weights=None, dim: int | None = None) -> "WeightedPointSet":
        """Merge equal points, summing their multiplicities (default 1 each)."""
        points = [make_point(p) for p in points]
        weights = [1] * len(points) if weights is None else [int(w) for w in weights]
        merged: dict = {}
        for p, w in zip(points, weights):
            if w < 1:
                raise ValueError("multiplicities must be positive integers")
            merged[p] = merged.get(p, 0) + w
        if not merged:
            raise EmptyApproximant("an approximant needs positive total weight")
        if dim is None:
            dim = len(points[0])
        return cls(dim, tuple(merged.items()))

    @property
    def total_weight(self) -> int:
        return sum(w for _, w in self.entries)

    @property
    def points(self) -> list:
        return [p for p, _ in self.entries]

    @property
    def weights(self) -> list:
        return [w for _, w in self.entries]

    def __len__(self):
        return len(self.entries)


def as_weighted(A, dim: int | None = None) -> WeightedPointSet:
    if isinstance(A, WeightedPointSet):
        return A
    if isinstance(A, PointSequence):
        return WeightedPointSet.from_points(A.points, dim=A.dim)
    A = list(A)
    if not A:
        raise EmptyApproximant("an approximant needs positive total weight")
    return WeightedPointSet.from_points(A, dim=dim)


@dataclass(frozen=True)
class DiscrepancyReport:
    value: Fraction
    witness: tuple
    mode: str
    exact: bool

    def to_json(self) -> str:
        return json.dumps({"mode": self.mode, "value": format_scalar(self.value),
                           "exact": self.exact, "witness": list(self.witness)})

    @classmethod
    def from_json(cls, text: str) -> "DiscrepancyReport":
        obj = json.loads(text)
        return cls(Fraction(obj["value"]), tuple(obj["witness"]), obj["mode"], bool(obj["exact"]))


class _Ground:
    """Distinct points of P ∪ supp(A) with per-point P-counts and A-weights."""

    def __init__(self, P: PointSequence, A: WeightedPointSet):
        if P.dim != A.dim:
            raise ValueError("P and A live in different dimensions")
        pos: dict = {}
        pts: list = []
        for p in list(P) + A.points:
            if p not in pos:
                pos[p] = len(pts)
                pts.append(p)
        self.points = pts
        self.p_of = [pos[p] for p in P]
        self.a_of = [pos[p] for p in A.points]
        self.pcount = [0] * len(pts)
        self.aweight = [0] * len(pts)
        for g in self.p_of:
            self.pcount[g] += 1
        for g, w in zip(self.a_of, A.weights):
            self.aweight[g] += w
        self.oracle = HullOracle(pts)
        self._pt = _ByteSums(self.pcount)
        self._at = _ByteSums(self.aweight)

    def counts(self, mask: int) -> tuple:
        return self._pt(mask), self._at(mask)


class _ByteSums:
    """Weighted popcount of a bitmask via per-byte lookup tables."""

    def __init__(self, weights):
        self.tables = []
        for start in range(0, len(weights), 8):
            chunk = weights[start:start + 8]
            self.tables.append([sum(chunk[b] for b in range(len(chunk)) if v >> b & 1)
                                for v in range(256)])

    def __call__(self, mask: int) -> int:
        total = 0
        for table in self.tables:
            total += table[mask & 255]
            mask >>= 8
        return total


def _best_subset(table, score, k):
    """Max of ``score(table[S])`` over bitmasks S of k members; ties broken by
    the lexicographically smallest sorted index tuple."""
    best_val, best = None, None
    for S in range(1 << k):
        v = score(table[S])
        if best_val is None or v > best_val:
            best_val, best = v, [S]
        elif v == best_val:
            best.append(S)
    witness = min(tuple(i for i in range(k) if S >> i & 1) for S in best)
    return best_val, witness


def _check_cap(size, cap, what):
    if size > cap:
        raise CapExceeded(f"{what} has {size} points, above the exact cap {cap}")


def one_sided_discrepancy_exact(P: PointSequence, A, *, cap: int = ONE_SIDED_CAP) -> DiscrepancyReport:
    """max over S ⊆ P of |P ∩ conv S|/|P| − w(A ∩ conv S)/w(A)."""
    A = as_weighted(A, P.dim)
    if len(P) == 0:
        raise ValueError("P must be nonempty")
    _check_cap(len(P), cap, "P")
    G = _Ground(P, A)
    n, W = len(P), A.total_weight
    table = G.oracle.closure_table(G.p_of)

    def score(mask):
        pc, aw = G.counts(mask)
        return pc * W - aw * n

    val, witness = _best_subset(table, score, n)
    return DiscrepancyReport(Fraction(val, n * W), witness, "one_sided", True)


def two_sided_discrepancy_exact(P: PointSequence, A, *, cap: int = TWO_SIDED_CAP) -> DiscrepancyReport:
    """max over convex C of the absolute fraction difference.

    The side where P is overrepresented is attained at a hull of P points and
    the other side at a hull of A points, so the two directions are two
    subset enumerations.  Witness indices address P followed by the entries
    of A (offset by |P|).
    """
    A = as_weighted(A, P.dim)
    if len(P) == 0:
        raise ValueError("P must be nonempty")
    _check_cap(len(P) + len(A), cap, "P plus A")
    G = _Ground(P, A)
    n, W = len(P), A.total_weight
    over = G.oracle.closure_table(G.p_of)
    v1, w1 = _best_subset(over, lambda m: (lambda c: c[0] * W - c[1] * n)(G.counts(m)), n)
    under = G.oracle.closure_table(G.a_of)
    v2, w2 = _best_subset(under, lambda m: (lambda c: c[1] * n - c[0] * W)(G.counts(m)), len(A))
    w2 = tuple(n + i for i in w2)
    if v1 > v2 or (v1 == v2 and w1 <= w2):
        val, witness = v1, w1
    else:
        val, witness = v2, w2
    return DiscrepancyReport(Fraction(val, n * W), witness, "two_sided", True)


def closed_trace_discrepancy(P: PointSequence, A, *, one_sided: bool = True,
                             cap: int = TWO_SIDED_CAP) -> DiscrepancyReport:
    """Brute-force maximum over every convexly closed T of the ground set.

    Slower than the subset reductions above; kept as their cross-check.
    The witness is the bitmask-sorted list of ground indices of T.
    """
    A = as_weighted(A, P.dim)
    G = _Ground(P, A)
    g = len(G.points)
    _check_cap(g, cap, "ground set")
    n, W = len(P), A.total_weight
    table = G.oracle.closure_table(list(range(g)))
    best, witness = None, ()
    for T in range(1 << g):
        if table[T] != T:
            continue
        pc, aw = G.counts(T)
        v = pc * W - aw * n
        if not one_sided:
            v = abs(v)
        if best is None or v > best:
            best, witness = v, tuple(i for i in range(g) if T >> i & 1)
    return DiscrepancyReport(Fraction(best, n * W), witness,
                             "one_sided" if one_sided else "two_sided", True)


def eps_net_check(P: PointSequence, A, epsilon, *, cap: int = ONE_SIDED_CAP):
    """True if every hull holding more than an epsilon fraction of P meets
    supp(A); otherwise the lexicographically smallest violating S ⊆ P."""
    epsilon = Fraction(epsilon)
    A = as_weighted(A, P.dim)
    n = len(P)
    if epsilon >= 1:
        return True
    _check_cap(n, cap, "P")
    G = _Ground(P, A)
    table = G.oracle.closure_table(G.p_of)
    bad = []
    for S in range(1, 1 << n):
        pc, aw = G.counts(table[S])
        if aw == 0 and pc > epsilon * n:
            bad.append(S)
    if not bad:
        return True
    return min(tuple(i for i in range(n) if S >> i & 1) for S in bad)


# ---------------------------------------------------------------------------
# exact evaluation of single convex sets
# ---------------------------------------------------------------------------

def _to_int_coords(points, scale):
    return [tuple(int(c * scale) for c in p) for p in points]


def _common_scale(points) -> int:
    scale = 1
    for p in points:
        for c in p:
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return scale


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    """Counter-clockwise hull vertices (collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _inside_2d(hull, q) -> bool:
    """Closed membership in a convex polygon given counter-clockwise."""
    h = len(hull)
    if h == 1:
        return q == hull[0]
    if h == 2:
        a, b = hull
        if _cross(a, b, q) != 0:
            return False
        return min(a[0], b[0]) <= q[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= q[1] <= max(a[1], b[1])
    o = hull[0]
    if _cross(o, hull[1], q) < 0 or _cross(o, hull[-1], q) > 0:
        return False
    # wedge o, hull[k], hull[k+1] containing q
    lo, hi = 1, h - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _cross(o, hull[mid], q) >= 0:
            lo = mid
        else:
            hi = mid
    return _cross(hull[lo], hull[lo + 1], q) >= 0


def hull_membership(generators: Sequence[Point], queries: Sequence[Point]) -> list:
    """Closed-hull membership of each query point, exactly."""
    if not generators:
        return [False] * len(queries)
    d = len(generators[0])
    if d == 2:
        scale = _common_scale(list(generators) + list(queries))
        hull = _hull_2d(_to_int_coords(generators, scale))
        return [_inside_2d(hull, q) for q in _to_int_coords(queries, scale)]
    lo = [min(g[c] for g in generators) for c in range(d)]
    hi = [max(g[c] for g in generators) for c in range(d)]
    return [all(lo[c] <= q[c] <= hi[c] for c in range(d)) and in_convex_hull(q, generators)
            for q in queries]


def evaluate_hull(P: PointSequence, A, S: Sequence[int]) -> Fraction:
    """One-sided objective of conv(P_S)."""
    A = as_weighted(A, P.dim)
    gens = [P[i] for i in S]
    inP = hull_membership(gens, list(P))
    inA = hull_membership(gens, A.points)
    pc = sum(inP)
    aw = sum(w for w, hit in zip(A.weights, inA) if hit)
    return Fraction(pc, len(P)) - Fraction(aw, A.total_weight)


def sampled_discrepancy(P: PointSequence, A, strategy: str = "random_subsets",
                        samples: int = 200, seed: int = 0) -> DiscrepancyReport:
    """Certified lower bound on the one-sided discrepancy.

    Every reported witness S is evaluated exactly at conv(P_S).
    """
    A = as_weighted(A, P.dim)
    n, d = len(P), P.dim
    rng = random.Random(seed)
    best_val, best_S = Fraction(0), ()

    def consider(S):
        nonlocal best_val, best_S
        S = tuple(sorted(set(S)))
        if not S:
            return Fraction(0)
        v = evaluate_hull(P, A, S)
        if v > best_val or (v == best_val and S < best_S):
            best_val, best_S = v, S
        return v

    if strategy == "random_subsets":
        for _ in range(samples):
            k = rng.randint(1, n)
            consider(rng.sample(range(n), k))
    elif strategy == "halfspaces":
        directions = [tuple(1 if c == j else 0 for c in range(d)) for j in range(d)]
        directions += [tuple(-x for x in v) for v in directions]
        while len(directions) < samples:
            directions.append(tuple(rng.randint(-1000, 1000) for _ in range(d)))
        W = A.total_weight
        for v in directions:
            if not any(v):
                continue
            pv = [sum(a * b for a, b in zip(v, p)) for p in P]
            # sweep closed halfspaces {x : v.x <= level} over the P levels
            events = sorted([(x, 0, 1) for x in pv] + [(sum(a * b for a, b in zip(v, p)), 1, w)
                                                        for p, w in A.entries],
                            key=lambda e: e[0])
            pc = aw = 0
            best_h, best_level = None, None
            k = 0
            while k < len(events):
                level = events[k][0]
                has_p = False
                while k < len(events) and events[k][0] == level:
                    _, kind, w = events[k]
                    if kind == 0:
                        pc += 1
                        has_p = True
                    else:
                        aw += w
                    k += 1
                if has_p:
                    score = pc * W - aw * n
                    if best_h is None or score > best_h:
                        best_h, best_level = score, level
            consider([i for i in range(n) if pv[i] <= best_level])
    elif strategy == "local_search":
        restarts = max(1, samples // (4 * n) or 1)
        budget = samples
        for _ in range(restarts):
            cur = set(rng.sample(range(n), rng.randint(1, n)))
            cur_val = consider(cur)
            improved = True
            while improved and budget > 0:
                improved = False
                for i in rng.sample(range(n), n):
                    if budget <= 0:
                        break
                    cand = cur ^ {i}
                    if not cand:
                        continue
                    budget -= 1
                    v = consider(cand)
                    if v > cur_val:
                        cur, cur_val, improved = cand, v, True
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return DiscrepancyReport(best_val, best_S, "one_sided", False)


# ---------------------------------------------------------------------------
# lower-bound witness for strong approximants in convex position
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PropositionWitness:
    C_generators: tuple
    C2_generators: tuple
    gap: Fraction
    empty_triangles: tuple  # 1-based triangle numbers i with T_i ∩ A = ∅


def proposition_witness(P: PointSequence, A, epsilon=None) -> PropositionWitness:
    """Two nested hulls over a convex polygon with the same A-trace but
    P-fractions differing by the share of A-free boundary triangles.

    ``P`` must be in convex position and listed along its hull (either
    direction).  Triangle i (1-based) is spanned by positions 2i-2, 2i-1, 2i.
    """
    if P.dim != 2:
        raise NotPlanar("the witness construction is planar")
    A = as_weighted(A, 2)
    n = len(P)
    if n >= 3 and not sequence_sign(P):
        raise NotConvexPosition("P is not listed in convex position")
    empty = []
    for i in range(1, (n - 1) // 2 + 1):
        tri = [P[2 * i - 2], P[2 * i - 1], P[2 * i]]
        mask = hull_membership(tri, A.points)
        if not any(mask):
            empty.append(i)
    C = tuple(range(0, n, 2))
    C2 = tuple(sorted(set(C) | {2 * i - 1 for i in empty}))
    gap = Fraction(len(empty), n)
    # structural checks
    if len(empty) < Fraction(n, 2) - 2 * A.total_weight - 1:
        raise InternalInvariantViolation("too few empty triangles")
    inC = hull_membership([P[i] for i in C], A.points)
    inC2 = hull_membership([P[i] for i in C2], A.points)
    if inC != inC2:
        raise InternalInvariantViolation("the two hulls see different points of A")
    pC = sum(hull_membership([P[i] for i in C], list(P)))
    pC2 = sum(hull_membership([P[i] for i in C2], list(P)))
    if Fraction(pC2 - pC, n) != gap:
        raise InternalInvariantViolation("P-fraction gap does not match")
    return PropositionWitness(C, C2, gap, tuple(empty))
