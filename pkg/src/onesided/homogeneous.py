"""Orientation-homogeneous sequences.

Indices into point sequences are 0-based throughout the package.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import (GeneralPositionViolation, IndexCollision,
                         IndexOutOfRange)
from .geometry import PointSequence, homogenize, is_general_position, orient_h

_INT64_SAFE = 2 ** 62


def sequence_sign(P: PointSequence) -> int | None:
    """Common nonzero orientation of all (d+1)-tuples, or None.

    Returns 0 when the sequence is too short to have any tuple.
    """
    d = P.dim
    if len(P) <= d:
        return 0
    hp = [homogenize(p) for p in P]
    sign = None
    for combo in itertools.combinations(hp, d + 1):
        s = orient_h(combo)
        if s == 0 or (sign is not None and s != sign):
            return None
        sign = s
    return sign


def is_orientation_homogeneous(P: PointSequence) -> bool:
    return sequence_sign(P) is not None


def parity_same_side(I, j: int, j2: int, n: int | None = None) -> bool:
    """Combinatorial side test for the hyperplane through ``P_I``.

    True iff ``[j, j2]`` contains an even number of elements of ``I``.
    """
    I = sorted(I)
    if len(set(I)) != len(I):
        raise IndexCollision("repeated index in I")
    if not j < j2:
        raise ValueError("need j < j2")
    if j in I or j2 in I:
        raise IndexCollision("j or j2 belongs to I")
    if n is not None and any(not 0 <= x < n for x in I + [j, j2]):
        raise IndexOutOfRange("index outside the host sequence")
    return sum(1 for i in I if j <= i <= j2) % 2 == 0


def geometric_same_side(P: PointSequence, I, j: int, j2: int) -> bool:
    """Same-side test with the free point appended after ``P_I``."""
    base = [homogenize(P[i]) for i in sorted(I)]
    return orient_h(base + [homogenize(P[j])]) == orient_h(base + [homogenize(P[j2])])


def orientation_table_2d(P: PointSequence) -> np.ndarray:
    """``T[i, j, k]`` = orient(p_i, p_j, p_k) for a planar sequence."""
    hp = np.array([homogenize(p) for p in P], dtype=object)
    bound = max((abs(int(v)) for v in hp.flat), default=0)
    dtype = np.int64 if 6 * bound ** 3 < _INT64_SAFE else object
    h = hp.astype(dtype)
    x, y, w = h[:, 0], h[:, 1], h[:, 2]
    # 2x2 minors of rows j, k
    yw = np.multiply.outer(y, w) - np.multiply.outer(w, y)
    xw = np.multiply.outer(x, w) - np.multiply.outer(w, x)
    xy = np.multiply.outer(x, y) - np.multiply.outer(y, x)
    det = (x[:, None, None] * yw[None, :, :]
           - y[:, None, None] * xw[None, :, :]
           + w[:, None, None] * xy[None, :, :])
    return (det > 0).astype(np.int8) - (det < 0).astype(np.int8)


@dataclass(frozen=True)
class HomogeneousSubsequence:
    indices: tuple
    sign: int
    optimal: bool = True

    def __len__(self):
        return len(self.indices)


def _best_2d(P: PointSequence, candidates) -> HomogeneousSubsequence:
    """Exact longest homogeneous subsequence in the plane.

    A planar sequence with all triples of sign s is a convex polygon traversed
    in the s-direction from its first point a.  Fixing a and the second point
    b, every later point lies on the s-side of the line ab and the angular
    order around a is then linear, so a longest chain with consecutive turns
    of sign s is found by dynamic programming over the last two points.
    """
    n = len(candidates)
    sub = P.subsequence(candidates)
    if n <= 2:
        return HomogeneousSubsequence(tuple(candidates), 0)
    T = orientation_table_2d(sub)
    iu = np.array(list(itertools.combinations(range(n), 3)))
    signs = T[iu[:, 0], iu[:, 1], iu[:, 2]]
    if signs[0] != 0 and np.all(signs == signs[0]):
        return HomogeneousSubsequence(tuple(candidates), int(signs[0]))
    best = (candidates[0], candidates[1])
    best_sign = int(T[0, 1, 2]) or 1
    for sigma in (1, -1):
        ok = T == sigma
        for a in range(n - 2):
            if n - a <= len(best):
                break
            for b in range(a + 1, n - 1):
                H = np.zeros(n, dtype=bool)
                H[b + 1:] = ok[a, b, b + 1:]
                size = int(H.sum())
                if size + 2 <= len(best):
                    continue
                fan = ok[a]  # fan[j, k]: orient(a, j, k) == sigma
                # L[i, j] = length of best chain a, b, ..., i, j ; prev for backtracking
                L = np.zeros((n, n), dtype=np.int32)
                prev = -np.ones((n, n), dtype=np.int32)
                for k in np.nonzero(H)[0]:
                    L[b, k] = 3
                hs = np.nonzero(H)[0]
                for j in hs:
                    col = L[:, j]
                    active = np.nonzero(col)[0]
                    if active.size == 0:
                        continue
                    ks = hs[hs > j]
                    if ks.size == 0:
                        continue
                    valid = ok[active][:, j, ks] & fan[j, ks][None, :]
                    cand = np.where(valid, col[active][:, None] + 1, 0)
                    arg = cand.argmax(axis=0)
                    val = cand[arg, np.arange(ks.size)]
                    upd = val > L[j, ks]
                    L[j, ks[upd]] = val[upd]
                    prev[j, ks[upd]] = active[arg[upd]]
                if L.max() == 0:
                    length, chain = 2, [a, b]
                else:
                    i, j = np.unravel_index(int(L.argmax()), L.shape)
                    length = int(L[i, j])
                    chain = [j, i]
                    while prev[i, j] >= 0:
                        i, j = prev[i, j], i
                        chain.append(i)
                    chain = [a] + chain[::-1]
                if length > len(best):
                    best = tuple(candidates[c] for c in chain)
                    best_sign = sigma
    return HomogeneousSubsequence(tuple(best), best_sign)


def _extends(hp, chosen, k, sign, d) -> bool:
    for combo in itertools.combinations(chosen, d):
        if orient_h([hp[c] for c in combo] + [hp[k]]) != sign:
            return False
    return True


def _branch_and_bound(P: PointSequence, candidates) -> HomogeneousSubsequence:
    d = P.dim
    hp = {i: homogenize(P[i]) for i in candidates}
    best: list = list(candidates[:d])
    best_sign = 0

    def grow(chosen, pos, sign):
        nonlocal best, best_sign
        if len(chosen) > len(best):
            best, best_sign = list(chosen), sign
        for idx in range(pos, len(candidates)):
            if len(chosen) + len(candidates) - idx <= len(best):
                return
            k = candidates[idx]
            if len(chosen) < d:
                grow(chosen + [k], idx + 1, sign)
                continue
            if sign == 0:
                s = orient_h([hp[c] for c in chosen] + [hp[k]])
                if s != 0:
                    grow(chosen + [k], idx + 1, s)
                continue
            if _extends(hp, chosen, k, sign, d):
                grow(chosen + [k], idx + 1, sign)

    grow([], 0, 0)
    return HomogeneousSubsequence(tuple(best), best_sign)


def _greedy(P: PointSequence, candidates, seed: int, tries: int = 32) -> HomogeneousSubsequence:
    d = P.dim
    rng = random.Random(seed)
    hp = {i: homogenize(P[i]) for i in candidates}
    best: list = list(candidates[:d + 1])
    best_sign = 0
    n = len(candidates)
    for attempt in range(tries):
        start = 0 if attempt == 0 else rng.randrange(n)
        order = candidates[start:]
        if attempt > 1:
            order = [c for c in order if rng.random() < 0.9]
        chosen, sign = [], 0
        for k in order:
            if len(chosen) < d:
                chosen.append(k)
            elif sign == 0:
                s = orient_h([hp[c] for c in chosen] + [hp[k]])
                if s:
                    chosen.append(k)
                    sign = s
            elif _extends(hp, chosen, k, sign, d):
                chosen.append(k)
        if len(chosen) > len(best):
            best, best_sign = chosen, sign
    return HomogeneousSubsequence(tuple(best), best_sign, optimal=False)


def longest_homogeneous_subsequence(P: PointSequence, candidates=None, *,
                                    exact_cap: int = 14, seed: int = 0,
                                    check_position: bool = True) -> HomogeneousSubsequence:
    """A maximum-length orientation-homogeneous subsequence of ``P``.

    ``candidates`` restricts the search to the given (increasing) indices.
    Planar inputs are solved exactly; for d >= 3 the search is exact up to
    ``exact_cap`` candidates and greedy (``optimal=False``) beyond.
    """
    if candidates is None:
        candidates = list(range(len(P)))
    candidates = sorted(candidates)
    if check_position and not is_general_position(P.subsequence(candidates)):
        raise GeneralPositionViolation("longest_homogeneous_subsequence needs general position")
    d = P.dim
    if len(candidates) <= d:
        return HomogeneousSubsequence(tuple(candidates), 0)
    whole = sequence_sign(P.subsequence(candidates)) if d != 2 and len(candidates) <= 40 else None
    if whole:
        return HomogeneousSubsequence(tuple(candidates), whole)
    if d == 1:
        # every pair has sign of the difference: monotone runs
        return _longest_monotone(P, candidates)
    if d == 2:
        return _best_2d(P, candidates)
    if len(candidates) <= exact_cap:
        return _branch_and_bound(P, candidates)
    return _greedy(P, candidates, seed)


def _longest_monotone(P, candidates):
    xs = [P[i][0] for i in candidates]
    best, best_sign = [candidates[0]], 0
    for sign in (1, -1):
        # orient((a), (b)) = sign(a - b): sign +1 means strictly decreasing
        n = len(xs)
        L = [1] * n
        prv = [-1] * n
        for k in range(n):
            for i in range(k):
                if (xs[i] - xs[k]) * sign > 0 and L[i] + 1 > L[k]:
                    L[k], prv[k] = L[i] + 1, i
        k = max(range(n), key=lambda z: L[z])
        chain = []
        while k >= 0:
            chain.append(candidates[k])
            k = prv[k]
        if len(chain) > len(best):
            best, best_sign = chain[::-1], sign
    return HomogeneousSubsequence(tuple(best), best_sign)


# ---------------------------------------------------------------------------
# tower-function estimates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tower:
    """Symbolic value tw_height(arg)."""

    height: int
    arg: int

    def log2(self):
        """log2 of the value as an int/Tower, exact."""
        if self.height == 1:
            return math.log2(self.arg)
        return tower(self.height - 1, self.arg)

    def __str__(self):
        return f"tw_{self.height}({self.arg})"


TOWER_CAP = 2 ** 64


def tower(height: int, arg: int):
    """tw_height(arg); an int when at most 2**64, else a :class:`Tower`."""
    value = arg
    for level in range(1, height):
        if value > 64:
            return Tower(height, arg)
        value = 2 ** value
        if value > TOWER_CAP and level < height:
            return Tower(height, arg)
    return value


@dataclass(frozen=True)
class OTConfig:
    """Constants in tw_d(c' n) <= OT_d(n) <= tw_d(c n), per dimension."""

    upper: dict = field(default_factory=dict)
    lower: dict = field(default_factory=dict)
    default_upper: Fraction = Fraction(1)
    default_lower: Fraction = Fraction(1, 2)

    def c_upper(self, d: int) -> Fraction:
        c = Fraction(self.upper.get(d, self.default_upper))
        if c <= 0 or c <= self.c_lower_raw(d):
            raise ValueError("need 0 < c'_d < c_d")
        return c

    def c_lower_raw(self, d: int) -> Fraction:
        return Fraction(self.lower.get(d, self.default_lower))


def ot_estimate(d: int, n: int, cfg: OTConfig | None = None):
    """Upper estimate tw_d(ceil(c_d n)) of the homogeneous Ramsey number."""
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    cfg = cfg or OTConfig()
    arg = math.ceil(cfg.c_upper(d) * n)
    return tower(d, arg)
