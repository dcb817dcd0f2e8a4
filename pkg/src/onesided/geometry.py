"""Exact geometric kernel.

Coordinates are :class:`fractions.Fraction`. Predicates work on homogeneous
integer coordinates ``(X_1, ..., X_d, W)`` with ``W > 0`` so the hot loops
only touch Python ints; the sign of every determinant is unchanged by the
positive column scaling.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DimensionMismatch, GeneralPositionViolation

Point = tuple  # tuple of Fraction


def to_scalar(value) -> Fraction:
    """Parse an int, Fraction, float (exactly) or a ``"p/q"`` string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "item"):  # numpy scalar
        return to_scalar(value.item())
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coordinate {value!r}")
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def make_point(coords: Iterable) -> Point:
    return tuple(to_scalar(c) for c in coords)


def format_scalar(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class PointSequence:
    """Ordered points of a common dimension."""

    dim: int
    points: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch("dimension must be positive")
        for p in self.points:
            if len(p) != self.dim:
                raise DimensionMismatch(
                    f"point {p} has length {len(p)}, expected {self.dim}")

    @classmethod
    def from_coords(cls, coords, dim: int | None = None) -> "PointSequence":
        pts = tuple(make_point(c) for c in coords)
        if dim is None:
            if not pts:
                raise DimensionMismatch("cannot infer the dimension of an empty sequence")
            dim = len(pts[0])
        return cls(dim, pts)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def subsequence(self, indices: Iterable[int]) -> "PointSequence":
        return PointSequence(self.dim, tuple(self.points[i] for i in indices))


def homogenize(p: Sequence[Fraction]) -> tuple:
    """Integer homogeneous coordinates of ``p`` (last entry positive)."""
    w = 1
    for c in p:
        w = w * c.denominator // math.gcd(w, c.denominator)
    return tuple(c.numerator * (w // c.denominator) for c in p) + (w,)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def det_sign(rows: Sequence[Sequence[int]]) -> int:
    """Sign of the determinant of a square integer (or rational) matrix."""
    n = len(rows)
    if n == 2:
        (a, b), (c, d) = rows
        return _sign(a * d - b * c)
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return _sign(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))
    if n == 1:
        return _sign(rows[0][0])
    # Bareiss fraction-free elimination
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * _sign(m[n - 1][n - 1])


def orient_h(hpoints: Sequence[tuple]) -> int:
    """Orientation of d+1 points given in homogeneous integer coordinates.

    Rows of the matrix are the points; the determinant of the transpose has
    the same value, so this equals the column convention with a trailing row
    of ones (up to the positive weights).
    """
    if len(hpoints) == 3:
        (a, b, c), (d, e, f), (g, h, i) = hpoints
        return _sign(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))
    return det_sign(hpoints)


def orient(points: Sequence[Sequence]) -> int:
    """Sign of det [[p_0 ... p_d], [1 ... 1]] for d+1 points in R^d."""
    pts = [make_point(p) for p in points]
    if not pts:
        raise DimensionMismatch("orient needs d+1 points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatch("points of unequal dimension")
    if len(pts) != d + 1:
        raise DimensionMismatch(f"orient in dimension {d} needs {d + 1} points, got {len(pts)}")
    return orient_h([homogenize(p) for p in pts])


def det_value(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def hyperplane_normal(hrows: Sequence[tuple]) -> tuple:
    """Integer c with c . x = det(hrows + [x]) for homogeneous x."""
    k = len(hrows) + 1
    return tuple((-1) ** (k - 1 + j) * det_value([r[:j] + r[j + 1:] for r in hrows])
                 for j in range(k))


def is_general_position(P: PointSequence) -> bool:
    """True iff no d+1 points of ``P`` are affinely dependent."""
    d = P.dim
    n = len(P)
    if n <= d:
        return True
    hp = [homogenize(p) for p in P]
    if len(set(hp)) < n:
        return False
    if n == d + 1:
        return orient_h(hp) != 0
    # each row: hyperplane through d points, evaluated at every point; only
    # the d defining points may vanish
    bound = max(abs(v) for row in hp for v in row)
    # normals have entries below d! * bound^d
    dtype = np.int64 if (d + 1) * math.factorial(d + 1) * bound ** (d + 1) < 2 ** 62 else object
    H = np.array(hp, dtype=dtype)
    combos = np.array(list(itertools.combinations(range(n), d)), dtype=np.intp)
    zeros = 0
    step = max(1, 200_000 // n)
    for start in range(0, len(combos), step):
        rows = H[combos[start:start + step]]  # (m, d, d+1)
        cols = [np.delete(rows, j, axis=2) for j in range(d + 1)]
        N = np.stack([(-1) ** (d + j) * _batched_det(c) for j, c in enumerate(cols)], axis=1)
        zeros += int(np.count_nonzero((N @ H.T) == 0))
    return zeros == d * len(combos)


def _batched_det(M: np.ndarray) -> np.ndarray:
    """Determinants of a stack of small square matrices by cofactor expansion."""
    k = M.shape[-1]
    if k == 1:
        return M[..., 0, 0]
    if k == 2:
        return M[..., 0, 0] * M[..., 1, 1] - M[..., 0, 1] * M[..., 1, 0]
    total = None
    for j in range(k):
        minor = np.delete(M[..., 1:, :], j, axis=-1)
        term = M[..., 0, j] * _batched_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def require_general_position(P: PointSequence):
    if not is_general_position(P):
        raise GeneralPositionViolation("input is not in general position")


# ---------------------------------------------------------------------------
# exact linear feasibility
# ---------------------------------------------------------------------------

def feasible_solution(A: Sequence[Sequence], b: Sequence) -> list | None:
    """A basic feasible solution of ``A x = b, x >= 0`` or ``None``.

    Phase-one simplex over the rationals with Bland's rule (smallest index
    entering and leaving), so the returned vertex is deterministic.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows.append(row + art + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced costs of the phase-one objective (sum of artificials)
    obj = [Fraction(0)] * (width + 1)
    for r in rows:
        for j in range(n):
            obj[j] -= r[j]
        obj[width] -= r[width]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][width] / a
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leave])):
                    best, leave = ratio, i
        if leave is None:  # unbounded is impossible in phase one
            break
        piv_row = rows[leave]
        pv = piv_row[enter]
        if pv != 1:
            rows[leave] = piv_row = [v / pv for v in piv_row]
        for i in range(m):
            if i != leave:
                f = rows[i][enter]
                if f:
                    r = rows[i]
                    rows[i] = [r[j] - f * piv_row[j] for j in range(width + 1)]
        f = obj[enter]
        obj = [obj[j] - f * piv_row[j] for j in range(width + 1)]
        basis[leave] = enter
    if obj[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = rows[i][width]
    return x


def _check_dims(*groups):
    d = None
    for g in groups:
        for p in g:
            if d is None:
                d = len(p)
            elif len(p) != d:
                raise DimensionMismatch("points of unequal dimension")
    return d


def in_convex_hull(q: Sequence, S: Sequence[Sequence]) -> bool:
    """Closed convex hull membership, decided by exact feasibility."""
    if not S:
        raise ValueError("hull of an empty set")
    q = make_point(q)
    S = [make_point(p) for p in S]
    d = _check_dims([q], S)
    A = [[p[k] for p in S] for k in range(d)] + [[1] * len(S)]
    b = list(q) + [1]
    return feasible_solution(A, b) is not None


def common_point(parts: Sequence[Sequence[Sequence]]) -> Point | None:
    """A vertex point of the intersection of the closed hulls, or None."""
    parts = [[make_point(p) for p in part] for part in parts]
    if any(not part for part in parts):
        raise ValueError("hull of an empty set")
    d = _check_dims(*parts)
    sizes = [len(part) for part in parts]
    offs = [0]
    for s in sizes:
        offs.append(offs[-1] + s)
    nv = offs[-1]
    A, b = [], []
    for k, part in enumerate(parts):
        row = [0] * nv
        for j in range(sizes[k]):
            row[offs[k] + j] = 1
        A.append(row)
        b.append(1)
    first = parts[0]
    for k in range(1, len(parts)):
        for c in range(d):
            row = [0] * nv
            for j, p in enumerate(first):
                row[j] = p[c]
            for j, p in enumerate(parts[k]):
                row[offs[k] + j] = -p[c]
            A.append(row)
            b.append(0)
    x = feasible_solution(A, b)
    if x is None:
        return None
    return tuple(sum((x[j] * first[j][c] for j in range(sizes[0])), Fraction(0))
                 for c in range(d))


def hulls_intersect(S1: Sequence[Sequence], S2: Sequence[Sequence]) -> bool:
    if not S1 or not S2:
        raise ValueError("hull of an empty set")
    return common_point([S1, S2]) is not None


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list:
    """Basis of the rational nullspace via reduced row echelon form."""
    m = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * bb for a, bb in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fcol]
        basis.append(v)
    return basis


def affine_dependence(points: Sequence[Point]) -> list:
    """Nullspace basis of the system sum c_i p_i = 0, sum c_i = 0."""
    d = len(points[0])
    rows = [[p[k] for p in points] for k in range(d)] + [[1] * len(points)]
    return nullspace(rows, len(points))


def affinely_independent(points: Sequence[Point]) -> bool:
    return len(points) <= len(points[0]) + 1 and not affine_dependence(points)


def _solve_barycentric(q: Point, verts: Sequence[Point]) -> list | None:
    """Barycentric coordinates of q w.r.t. affinely independent ``verts``
    if q lies in their affine hull, else None."""
    d = len(q)
    k = len(verts)
    rows = [[v[c] for v in verts] + [-q[c]] for c in range(d)] + [[1] * k + [-1]]
    basis = nullspace(rows, k + 1)
    for vec in basis:
        if vec[k] != 0:
            return [v / vec[k] for v in vec[:k]]
    return None


def _in_simplex_h(hq, hverts, orient_full) -> bool:
    # q in closed full-dimensional simplex iff replacing any vertex by q never
    # gives the opposite orientation
    for i in range(len(hverts)):
        s = orient_h(hverts[:i] + [hq] + hverts[i + 1:])
        if s == -orient_full:
            return False
    return True


class HullOracle:
    """Bitmask traces of closed hulls of subsets of a fixed ground set.

    ``simplex_mask(idx)`` returns the bitmask of ground points inside the
    hull of the points ``idx`` (any size <= d+1). Degenerate subsets reduce
    to their faces, since the hull of affinely dependent points is the union
    of the hulls of proper subsets.
    """

    def __init__(self, ground: Sequence[Point]):
        self.ground = [make_point(p) for p in ground]
        self.n = len(self.ground)
        self.dim = len(self.ground[0]) if self.ground else 0
        self.hground = [homogenize(p) for p in self.ground]
        self._memo: dict = {}

    def simplex_mask(self, idx: tuple) -> int:
        idx = tuple(sorted(idx))
        hit = self._memo.get(idx)
        if hit is not None:
            return hit
        mask = self._compute(idx)
        self._memo[idx] = mask
        return mask

    def _compute(self, idx):
        pts = [self.ground[i] for i in idx]
        if len(idx) == 1:
            p = pts[0]
            return sum(1 << j for j, q in enumerate(self.ground) if q == p)
        d = self.dim
        if len(idx) == d + 1:
            hv = [self.hground[i] for i in idx]
            o = orient_h(hv)
            if o != 0:
                lo = [min(p[c] for p in pts) for c in range(d)]
                hi = [max(p[c] for p in pts) for c in range(d)]
                mask = 0
                for j, q in enumerate(self.ground):
                    if all(lo[c] <= q[c] <= hi[c] for c in range(d)) and \
                            _in_simplex_h(self.hground[j], hv, o):
                        mask |= 1 << j
                return mask
        elif affine_dependence(pts) == []:
            lo = [min(p[c] for p in pts) for c in range(d)]
            hi = [max(p[c] for p in pts) for c in range(d)]
            mask = 0
            for j, q in enumerate(self.ground):
                if not all(lo[c] <= q[c] <= hi[c] for c in range(d)):
                    continue
                lam = _solve_barycentric(q, pts)
                if lam is not None and all(x >= 0 for x in lam):
                    mask |= 1 << j
            return mask
        mask = 0
        for sub in itertools.combinations(idx, len(idx) - 1):
            mask |= self.simplex_mask(sub)
        return mask

    def hull_mask(self, idx: Sequence[int]) -> int:
        """Trace of conv of the given ground points (Caratheodory union)."""
        idx = sorted(set(idx))
        d = self.dim
        if not idx:
            return 0
        if len(idx) <= d + 1:
            return self.simplex_mask(tuple(idx))
        mask = 0
        for sub in itertools.combinations(idx, d + 1):
            mask |= self.simplex_mask(sub)
        return mask

    def closure_table(self, members: Sequence[int]) -> list:
        """``table[S]`` = trace of conv of ``members`` selected by bitmask S.

        Built incrementally: conv(S' + x) is conv(S') together with the
        simplices spanned by x and d points of S'.
        """
        k = len(members)
        d = self.dim
        table = [0] * (1 << k)
        for S in range(1, 1 << k):
            bits = [i for i in range(k) if S >> i & 1]
            if len(bits) <= d + 1:
                table[S] = self.simplex_mask(tuple(members[i] for i in bits))
                continue
            top = bits[-1]
            rest = S & ~(1 << top)
            mask = table[rest]
            x = members[top]
            for sub in itertools.combinations(bits[:-1], d):
                mask |= self.simplex_mask((x,) + tuple(members[i] for i in sub))
            table[S] = mask
        return table
