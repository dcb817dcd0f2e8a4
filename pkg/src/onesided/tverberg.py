"""Radon and Tverberg points, and the point-selection check."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exceptions import (GeneralPositionViolation, InternalInvariantViolation,
                         NotHomogeneous, SizeMismatch)
from .geometry import (Point, PointSequence, affine_dependence, common_point,
                       in_convex_hull, is_general_position, make_point)
from .homogeneous import is_orientation_homogeneous


@dataclass(frozen=True)
class TverbergResult:
    point: Point
    partition: tuple  # tuple of sorted index tuples, ordered by first element

    def assignment(self) -> tuple:
        n = sum(len(p) for p in self.partition)
        out = [0] * n
        for k, part in enumerate(self.partition):
            for i in part:
                out[i] = k
        return tuple(out)


def tverberg_params(d: int) -> tuple:
    """(s, D) with s = floor(d/2) + 1 and D = (s - 1)(d + 1) + 1."""
    s = d // 2 + 1
    return s, (s - 1) * (d + 1) + 1


def _verify(Q, result: TverbergResult):
    covered = sorted(i for part in result.partition for i in part)
    if covered != list(range(len(Q))):
        raise InternalInvariantViolation("Tverberg parts do not partition the input")
    for part in result.partition:
        if not in_convex_hull(result.point, [Q[i] for i in part]):
            raise InternalInvariantViolation("Tverberg point outside a part's hull")
    return result


def radon_point(Q: Sequence) -> TverbergResult:
    """Unique Radon partition and point of d+2 points in general position."""
    Q = [make_point(p) for p in Q]
    d = len(Q[0])
    if len(Q) != d + 2:
        raise SizeMismatch(f"Radon needs {d + 2} points in dimension {d}")
    if not is_general_position(PointSequence(d, tuple(Q))):
        raise GeneralPositionViolation("Radon point is unique only in general position")
    basis = affine_dependence(Q)
    if len(basis) != 1:
        raise GeneralPositionViolation("affine dependence is not one-dimensional")
    c = basis[0]
    pos = tuple(i for i in range(len(Q)) if c[i] > 0)
    neg = tuple(i for i in range(len(Q)) if c[i] < 0)
    total = sum(c[i] for i in pos)
    point = tuple(sum((c[i] * Q[i][k] for i in pos), Fraction(0)) / total for k in range(d))
    parts = tuple(sorted([pos, neg]))
    return _verify(Q, TverbergResult(point, parts))


def set_partitions(n: int, s: int):
    """Restricted growth strings of length n with exactly s blocks, in
    lexicographic order."""
    a = [0] * n

    def rec(i, m):
        if n - i < s - m:
            return
        if i == n:
            if m == s:
                yield tuple(a)
            return
        for v in range(min(m + 1, s)):
            a[i] = v
            yield from rec(i + 1, max(m, v + 1))

    if n == 0:
        return
    a[0] = 0
    yield from rec(1, 1)


def tverberg_point(Q: Sequence, s: int) -> TverbergResult:
    """First feasible Tverberg partition in lexicographic order of the part
    assignment, with an exact vertex of the common intersection."""
    Q = [make_point(p) for p in Q]
    if s < 2:
        raise SizeMismatch("a Tverberg partition needs s >= 2")
    d = len(Q[0])
    if len(Q) != (s - 1) * (d + 1) + 1:
        raise SizeMismatch(f"need {(s - 1) * (d + 1) + 1} points for s={s}, d={d}")
    for rgs in set_partitions(len(Q), s):
        parts = [tuple(i for i in range(len(Q)) if rgs[i] == k) for k in range(s)]
        x = common_point([[Q[i] for i in part] for part in parts])
        if x is not None:
            return _verify(Q, TverbergResult(x, tuple(parts)))
    raise InternalInvariantViolation("no Tverberg partition found")


def point_selection_check(S: PointSequence) -> bool:
    """Tverberg point of the even positions lies in the hull of the odd ones."""
    s, D = tverberg_params(S.dim)
    if s < 2:
        raise SizeMismatch("dimension 1 gives s = 1; no Tverberg partition")
    if len(S) != 2 * D + 1:
        raise SizeMismatch(f"need {2 * D + 1} points, got {len(S)}")
    if not is_orientation_homogeneous(S):
        raise NotHomogeneous("point selection needs an orientation-homogeneous sequence")
    Q = [S[i] for i in range(1, 2 * D, 2)]
    R = [S[i] for i in range(0, 2 * D + 1, 2)]
    x = tverberg_point(Q, s).point
    return in_convex_hull(x, R)
