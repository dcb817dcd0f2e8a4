"""Interval chains, stabbing tuples and layered approximating families.

Chain and tuple values live in the integer range ``[1, t]`` (1-based, as the
intervals are mathematical objects).  An :class:`IntervalChain` is stored by
its boundaries ``a_1 < ... < a_{k+1}``; interval ``i`` is
``[a_i, a_{i+1} - 1]``.
"""
from __future__ import annotations

import bisect
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .exceptions import (AmbientMismatch, ArityTooSmall, CapExceeded,
                         EpsilonOutOfRange)

EXHAUSTIVE_CAP = 20


@dataclass(frozen=True)
class IntervalChain:
    boundaries: tuple
    t: int

    def __post_init__(self):
        a = self.boundaries
        if len(a) < 2:
            raise ValueError("a chain needs at least one interval")
        if any(x >= y for x, y in zip(a, a[1:])):
            raise ValueError("chain boundaries must be strictly increasing")
        if a[0] < 1 or a[-1] > self.t + 1:
            raise AmbientMismatch(f"chain {a} does not fit in [1, {self.t}]")

    @classmethod
    def from_intervals(cls, intervals: Sequence[tuple], t: int) -> "IntervalChain":
        for (l1, r1), (l2, _) in zip(intervals, intervals[1:]):
            if l2 != r1 + 1:
                raise ValueError("intervals must be consecutive")
        return cls(tuple(l for l, _ in intervals) + (intervals[-1][1] + 1,), t)

    @property
    def size(self) -> int:
        return len(self.boundaries) - 1

    def intervals(self) -> list:
        a = self.boundaries
        return [(a[i], a[i + 1] - 1) for i in range(len(a) - 1)]

    def __str__(self):
        return "".join(f"[{l},{r}]" for l, r in self.intervals())


def tuple_to_dual_chain(x: Sequence[int], t: int) -> IntervalChain:
    """(x_1, ..., x_D) -> [x_1+1, x_2][x_2+1, x_3]...[x_{D-1}+1, x_D]."""
    return IntervalChain(tuple(v + 1 for v in x), t)


def dual_chain_to_tuple(chain: IntervalChain) -> tuple:
    return tuple(a - 1 for a in chain.boundaries)


def stabs(x: Sequence[int], chain: IntervalChain, t: int | None = None) -> bool:
    """Each value lies in a different interval of the chain."""
    if t is not None and t != chain.t:
        raise AmbientMismatch("tuple and chain live in different ranges")
    if any(v < 0 or v > chain.t for v in x):
        raise AmbientMismatch(f"tuple {tuple(x)} outside [0, {chain.t}]")
    a = chain.boundaries
    seen = set()
    for v in x:
        pos = bisect.bisect_right(a, v) - 1
        if pos < 0 or pos >= len(a) - 1 or pos in seen:
            return False
        seen.add(pos)
    return True


@dataclass(frozen=True)
class FamilyMember:
    layer: int
    weight: int
    values: tuple

    def dual_intervals(self) -> list:
        x = self.values
        return [(x[i] + 1, x[i + 1]) for i in range(len(x) - 1)]


@dataclass(frozen=True)
class ChainFamily:
    """Multiset of D-tuples; each member carries its layer and weight."""

    D: int
    t: int
    epsilon: Fraction
    K: int
    m: int
    members: tuple
    kind: str = "layered"
    _arrays: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def total_weight(self) -> int:
        return sum(mb.weight for mb in self.members)

    def __len__(self):
        return self.total_weight

    def layers(self) -> dict:
        out: dict = {}
        for mb in self.members:
            out.setdefault(mb.layer, []).append(mb)
        return out

    def layer_sizes(self) -> list:
        lay = self.layers()
        return [len(lay.get(k, [])) for k in range(self.K)]

    def arrays(self):
        if "X" not in self._arrays:
            self._arrays["X"] = np.array([mb.values for mb in self.members], dtype=np.int64).reshape(-1, self.D)
            self._arrays["w"] = np.array([mb.weight for mb in self.members], dtype=np.int64)
        return self._arrays["X"], self._arrays["w"]


def layer_count(D: int, epsilon) -> int:
    """ceil((D - 1) ln(4 / eps)), with the logarithm bounded from above."""
    eps = Fraction(epsilon)
    with mpmath.workprec(200):
        val = mpmath.iv.mpf(D - 1) * mpmath.iv.log(
            mpmath.iv.mpf(4 * eps.denominator) / mpmath.iv.mpf(eps.numerator))
        return int(mpmath.ceil(val.b))


def _check_eps(epsilon) -> Fraction:
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise EpsilonOutOfRange(f"epsilon must lie in (0, 1), got {eps}")
    return eps


def build_family(D: int, epsilon, m_override: int | None = None,
                 t_override: int | None = None) -> ChainFamily:
    """Layered family: layer k holds the (D-1)-chains of consecutive blocks of
    length (D-1)^k, each emitted as the tuple whose dual chain it is, with
    weight (D-2)^k.

    ``t_override`` builds the same layers on an arbitrary range (floor counts,
    empty layers dropped); used by the empirical pipeline.
    """
    if D < 3:
        raise ArityTooSmall("the layered family needs D >= 3")
    eps = _check_eps(epsilon)
    K = layer_count(D, eps)
    m = m_override if m_override is not None else math.ceil(4 / eps)
    if m < 1:
        raise ValueError("m must be positive")
    t = t_override if t_override is not None else m * (D - 1) ** K
    members = []
    for k in range(K):
        L = (D - 1) ** k
        nchains = t // (D - 1) ** (k + 1)
        w = (D - 2) ** k
        for i in range(nchains):
            base = i * (D - 1)
            members.append(FamilyMember(k, w, tuple((base + r) * L for r in range(D))))
    return ChainFamily(D, t, eps, K, m, tuple(members))


def complete_family(D: int, t: int, epsilon) -> ChainFamily:
    """Every increasing D-tuple of [1, t] once (a desk-scale custom family)."""
    if D < 2:
        raise ArityTooSmall("D >= 2 required")
    members = tuple(FamilyMember(0, 1, c) for c in itertools.combinations(range(1, t + 1), D))
    return ChainFamily(D, t, Fraction(epsilon), 1, 0, members, kind="complete")


def _stab_weight(F: ChainFamily, chain: IntervalChain) -> int:
    X, w = F.arrays()
    if X.size == 0:
        return 0
    a = np.asarray(chain.boundaries, dtype=np.int64)
    pos = np.searchsorted(a, X, side="right") - 1
    ok = (pos >= 0).all(axis=1) & (pos < len(a) - 1).all(axis=1)
    if F.D > 1:
        ok &= (np.diff(pos, axis=1) > 0).all(axis=1)
    return int(w[ok].sum())


def family_stab_fraction(F: ChainFamily, chain: IntervalChain) -> Fraction:
    if chain.t != F.t:
        raise AmbientMismatch("family and chain live in different ranges")
    total = F.total_weight
    if total == 0:
        return Fraction(0)
    return Fraction(_stab_weight(F, chain), total)


def chain_margin(F: ChainFamily, chain: IntervalChain) -> Fraction:
    """stab fraction - (intervals / t - eps); nonnegative when the family
    approximates this chain."""
    return family_stab_fraction(F, chain) - (Fraction(chain.size, F.t) - F.epsilon)


@dataclass(frozen=True)
class FamilyReport:
    worst_margin: Fraction
    witness: IntervalChain
    chains_checked: int
    mode: str

    @property
    def verified(self) -> bool:
        return self.worst_margin >= 0


def _better(m, c, best_m, best_c):
    return best_m is None or m < best_m or (m == best_m and c.boundaries < best_c.boundaries)


def verify_family(F: ChainFamily, mode: str = "sampled", sample_count: int = 10_000,
                  seed: int = 0, restarts: int = 100, steps: int = 200,
                  cap: int = EXHAUSTIVE_CAP) -> FamilyReport:
    """Minimum margin over all chains (exhaustive) or over random plus
    locally-optimized adversarial chains (sampled)."""
    t = F.t
    best_m, best_c = None, None
    checked = 0
    if mode == "exhaustive":
        if t > cap:
            raise CapExceeded(f"exhaustive verification capped at t <= {cap}, got t = {t}")
        for r in range(2, t + 2):
            for a in itertools.combinations(range(1, t + 2), r):
                c = IntervalChain(a, t)
                m = chain_margin(F, c)
                checked += 1
                if _better(m, c, best_m, best_c):
                    best_m, best_c = m, c
        return FamilyReport(best_m, best_c, checked, mode)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)

    def random_chain():
        k = rng.randint(1, t)
        return IntervalChain(tuple(sorted(rng.sample(range(1, t + 2), k + 1))), t)

    fixed = [IntervalChain(tuple(range(1, t + 2)), t), IntervalChain((1, t + 1), t)]
    for c in fixed:
        m = chain_margin(F, c)
        checked += 1
        if _better(m, c, best_m, best_c):
            best_m, best_c = m, c
    for _ in range(sample_count):
        c = random_chain()
        m = chain_margin(F, c)
        checked += 1
        if _better(m, c, best_m, best_c):
            best_m, best_c = m, c
    for _ in range(restarts):
        cur = random_chain()
        cur_m = chain_margin(F, cur)
        for _ in range(steps):
            b = set(cur.boundaries)
            v = rng.randint(1, t + 1)
            if v in b:
                if len(b) <= 2:
                    continue
                b.discard(v)
            else:
                b.add(v)
            cand = IntervalChain(tuple(sorted(b)), t)
            m = chain_margin(F, cand)
            checked += 1
            if m <= cur_m:
                cur, cur_m = cand, m
        if _better(cur_m, cur, best_m, best_c):
            best_m, best_c = cur_m, cur
    return FamilyReport(best_m, best_c, checked, mode)


@dataclass(frozen=True)
class OccupancyReport:
    holds: bool
    alpha: Fraction
    beta: tuple
    gamma: tuple
    full_nonstabbing: tuple


def claim_occupancy_check(J: Iterable[int], F: ChainFamily) -> OccupancyReport:
    """Per-layer occupied (beta) and partially occupied (gamma) fractions of
    the layer chains, and whether beta_k >= alpha + sum_{j<=k} gamma_j/(D-1)
    holds for every layer."""
    J = sorted(set(J))
    if any(not 1 <= j <= F.t for j in J):
        raise AmbientMismatch("J must be a subset of [1, t]")
    alpha = Fraction(len(J), F.t)
    layers = F.layers()
    beta, gamma, nonstab = [], [], []
    holds = True
    acc = Fraction(0)
    for k in range(F.K):
        chains = layers.get(k, [])
        if not chains:
            beta.append(Fraction(0))
            gamma.append(Fraction(0))
            nonstab.append(0)
            continue
        occ = part = full_ns = 0
        for mb in chains:
            hits = [bisect.bisect_left(J, l) < bisect.bisect_right(J, r)
                    for l, r in mb.dual_intervals()]
            if any(hits):
                occ += 1
                if not all(hits):
                    part += 1
                else:
                    before = bool(J) and J[0] <= mb.values[0]
                    after = bool(J) and J[-1] > mb.values[-1]
                    if not (before and after):
                        full_ns += 1
        b = Fraction(occ, len(chains))
        g = Fraction(part, len(chains))
        acc += g
        beta.append(b)
        gamma.append(g)
        nonstab.append(full_ns)
        if b < alpha + acc / (F.D - 1):
            holds = False
    return OccupancyReport(holds, alpha, tuple(beta), tuple(gamma), tuple(nonstab))


# ---------------------------------------------------------------------------
# text format: header "D t epsilon K m", then "k w x_1 ... x_D" per member
# ---------------------------------------------------------------------------

def dumps_family(F: ChainFamily) -> str:
    eps = Fraction(F.epsilon)
    lines = [f"{F.D} {F.t} {eps.numerator}/{eps.denominator} {F.K} {F.m}"]
    for mb in F.members:
        lines.append(" ".join(str(v) for v in (mb.layer, mb.weight) + mb.values))
    return "\n".join(lines) + "\n"


def loads_family(text: str) -> ChainFamily:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or len(rows[0]) != 5:
        raise ValueError("family header must be 'D t epsilon K m'")
    D, t = int(rows[0][0]), int(rows[0][1])
    eps = Fraction(rows[0][2])
    K, m = int(rows[0][3]), int(rows[0][4])
    members = []
    for r in rows[1:]:
        if len(r) != D + 2:
            raise ValueError(f"member line needs {D + 2} fields: {' '.join(r)}")
        vals = tuple(int(v) for v in r[2:])
        if any(x >= y for x, y in zip(vals, vals[1:])) or vals[0] < 0 or vals[-1] > t:
            raise ValueError(f"bad tuple {vals}")
        members.append(FamilyMember(int(r[0]), int(r[1]), vals))
    return ChainFamily(D, t, eps, K, m, tuple(members))
