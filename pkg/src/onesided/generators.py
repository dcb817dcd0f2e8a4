"""Point-sequence generators for tests and benchmarks."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import InvalidSpec
from .geometry import PointSequence, det_value, is_general_position

KINDS = ("moment", "circle", "stretched_diagonal", "random", "grid")


@dataclass(frozen=True)
class GeneratorSpec:
    """What to generate.

    ``params`` by kind:
      circle: ``parameters`` (explicit increasing rationals) or
        ``denominator`` (bound for rounding evenly spread ones, default 10**6)
      stretched_diagonal: ``base`` (integer >= 2, default 2)
      random: ``radius`` (coordinates in [-radius, radius], default 10**6),
        ``max_tries`` (default 100)
      grid: ``spacing`` (default 1)
    """

    kind: str
    n: int
    d: int = 2
    seed: int = 0
    params: dict = field(default_factory=dict)

    def validate(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidSpec("n must be a positive integer")
        if not isinstance(self.d, int) or self.d < 1:
            raise InvalidSpec("d must be a positive integer")
        if self.kind == "circle" and self.d != 2:
            raise InvalidSpec("circle points are planar")
        if self.kind == "stretched_diagonal":
            base = self.params.get("base", 2)
            if not isinstance(base, int) or base < 2:
                raise InvalidSpec("base must be an integer >= 2")


def _half_angle(t: Fraction) -> tuple:
    q = 1 + t * t
    return ((1 - t * t) / q, 2 * t / q)


def _circle_parameters(n: int, denominator: int) -> list:
    params = []
    for i in range(n):
        theta = -math.pi + 2 * math.pi * (i + 0.5) / n
        params.append(Fraction(math.tan(theta / 2)).limit_denominator(denominator))
    return params


def generate(spec: GeneratorSpec) -> PointSequence:
    spec.validate()
    n, d = spec.n, spec.d
    if spec.kind == "moment":
        return PointSequence.from_coords([[i ** k for k in range(1, d + 1)] for i in range(1, n + 1)], d)
    if spec.kind == "stretched_diagonal":
        B = spec.params.get("base", 2)
        return PointSequence.from_coords(
            [[B ** (i * d ** j) for j in range(d)] for i in range(1, n + 1)], d)
    if spec.kind == "circle":
        if "parameters" in spec.params:
            params = [Fraction(p) for p in spec.params["parameters"]]
            if len(params) != n:
                raise InvalidSpec("need exactly n circle parameters")
        else:
            params = _circle_parameters(n, int(spec.params.get("denominator", 10 ** 6)))
        if any(a >= b for a, b in zip(params, params[1:])):
            raise InvalidSpec("circle parameters must be strictly increasing")
        return PointSequence.from_coords([_half_angle(t) for t in params], 2)
    if spec.kind == "grid":
        side = 1
        while side ** d < n:
            side += 1
        step = spec.params.get("spacing", 1)
        pts = []
        for k in range(n):
            coords, rem = [], k
            for _ in range(d):
                coords.append(step * (rem % side))
                rem //= side
            pts.append(coords[::-1])
        return PointSequence.from_coords(pts, d)
    # random
    radius = int(spec.params.get("radius", 10 ** 6))
    rng = random.Random(spec.seed)
    for _ in range(int(spec.params.get("max_tries", 100))):
        P = PointSequence.from_coords(
            [[rng.randint(-radius, radius) for _ in range(d)] for _ in range(n)], d)
        if is_general_position(P):
            return P
    raise InvalidSpec("could not sample a general-position set; increase the radius")


def random_homogeneous_sequence(n: int, d: int, seed: int = 0, spread: int = 60) -> PointSequence:
    """Moment-curve points at random increasing integer parameters, pushed
    through a random invertible integer affine map.

    Every (d+1)-tuple keeps one orientation: the parameters give a positive
    Vandermonde determinant and the map scales all of them by the sign of
    its own determinant.
    """
    rng = random.Random(seed)
    params = sorted(rng.sample(range(-spread, spread + 1), n))
    while True:
        L = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)]
        if det_value(L) != 0:
            break
    shift = [rng.randint(-10, 10) for _ in range(d)]
    pts = []
    for x in params:
        v = [x ** k for k in range(1, d + 1)]
        pts.append([sum(L[r][c] * v[c] for c in range(d)) + shift[r] for r in range(d)])
    return PointSequence.from_coords(pts, d)
