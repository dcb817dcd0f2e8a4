"""Regular equipartitions with respect to orientation, and randomized
independent sets in uniform hypergraphs."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exceptions import (CapExceeded, GeneralPositionViolation,
                         NoPartitionFound, PreconditionViolated,
                         UnbalancedInput)
from .geometry import PointSequence, homogenize, is_general_position, orient_h

TUPLE_CAP = 10 ** 6


@dataclass(frozen=True)
class Partition:
    parts: tuple  # tuple of sorted index tuples

    def __post_init__(self):
        seen = set()
        for part in self.parts:
            if not part:
                raise ValueError("empty part")
            for i in part:
                if i in seen:
                    raise ValueError(f"index {i} appears in two parts")
                seen.add(i)

    @classmethod
    def of(cls, parts) -> "Partition":
        return cls(tuple(tuple(sorted(p)) for p in parts))

    @property
    def M(self) -> int:
        return len(self.parts)

    def sizes(self) -> list:
        return [len(p) for p in self.parts]

    def covered(self) -> set:
        return {i for p in self.parts for i in p}


@dataclass(frozen=True)
class RegularPartition:
    partition: Partition
    gamma: Fraction
    sign_table: dict  # sorted (d+1)-tuple of part indices -> +1/-1
    exceptional: frozenset  # of sorted (d+1)-tuples of part indices


@dataclass(frozen=True)
class Rejection:
    partition: Partition
    gamma: Fraction
    exceptional_count: int
    allowed: Fraction
    exceptional: frozenset = frozenset()


@dataclass(frozen=True)
class Hypergraph:
    r: int
    n: int
    edges: frozenset  # of sorted r-tuples over range(n)

    def __post_init__(self):
        for e in self.edges:
            if len(e) != self.r or len(set(e)) != self.r or not all(0 <= v < self.n for v in e):
                raise ValueError(f"bad edge {e}")

    @classmethod
    def of(cls, r: int, n: int, edges) -> "Hypergraph":
        return cls(r, n, frozenset(tuple(sorted(e)) for e in edges))

    @property
    def density(self) -> Fraction:
        """beta = |E| / n^r."""
        return Fraction(len(self.edges), self.n ** self.r)

    def induced(self, vertices: Sequence[int]) -> tuple:
        """Sub-hypergraph on ``vertices`` relabelled 0..len-1, and the map back."""
        pos = {v: i for i, v in enumerate(vertices)}
        edges = [tuple(pos[v] for v in e) for e in self.edges if all(v in pos for v in e)]
        return Hypergraph.of(self.r, len(vertices), edges), list(vertices)


def _tuple_sign(hparts, combo):
    """Common orientation of all cross choices, or None if not constant."""
    arrays = [hparts[i] for i in combo]
    sign = None
    for choice in itertools.product(*arrays):
        s = orient_h(list(choice))
        if s == 0:
            return None
        if sign is None:
            sign = s
        elif s != sign:
            return None
    return sign


def _tuple_sign_2d(np_parts, combo):
    a, b, c = (np_parts[i] for i in combo)
    # rows (x, y, w); det over all triples by broadcasting
    A = a[:, None, None, :]
    B = b[None, :, None, :]
    C = c[None, None, :, :]
    det = (A[..., 0] * (B[..., 1] * C[..., 2] - B[..., 2] * C[..., 1])
           - A[..., 1] * (B[..., 0] * C[..., 2] - B[..., 2] * C[..., 0])
           + A[..., 2] * (B[..., 0] * C[..., 1] - B[..., 1] * C[..., 0]))
    if (det > 0).all():
        return 1
    if (det < 0).all():
        return -1
    return None


def check_partition(P: PointSequence, parts: Partition, gamma, *,
                    check_position: bool = True, cap: int = TUPLE_CAP):
    """Exact regularity check of ``parts`` for the orientation predicate.

    Every (d+1)-set of parts whose cross choices (taken in increasing part
    order) do not share one orientation is exceptional.
    """
    gamma = Fraction(gamma)
    d = P.dim
    if check_position and not is_general_position(P):
        raise GeneralPositionViolation("check_partition needs general position")
    M = parts.M
    total = math.comb(M, d + 1)
    if total > cap:
        raise CapExceeded(f"{total} part tuples exceed the cap {cap}")
    hp = [homogenize(p) for p in P]
    hparts = [[hp[i] for i in part] for part in parts.parts]
    np_parts = None
    if d == 2:
        bound = max((abs(v) for row in hp for v in row), default=0)
        if 6 * bound ** 3 < 2 ** 62:
            np_parts = [np.array(hpart, dtype=np.int64) for hpart in hparts]
    table, exceptional = {}, set()
    for combo in itertools.combinations(range(M), d + 1):
        if np_parts is not None:
            s = _tuple_sign_2d(np_parts, combo)
        else:
            s = _tuple_sign(hparts, combo)
        if s is None:
            exceptional.add(combo)
        else:
            table[combo] = s
    allowed = gamma * total
    if len(exceptional) > allowed:
        return Rejection(parts, gamma, len(exceptional), allowed, frozenset(exceptional))
    return RegularPartition(parts, gamma, table, frozenset(exceptional))


def equalize_parts(parts: Partition) -> tuple:
    """Trim every part to the minimum size by dropping its largest indices.

    Returns the new partition and the sorted list of discarded indices.
    """
    sizes = parts.sizes()
    lo, hi = min(sizes), max(sizes)
    if hi - lo > 1:
        raise UnbalancedInput(f"part sizes differ by {hi - lo}")
    out, dropped = [], []
    for part in parts.parts:
        out.append(part[:lo])
        dropped.extend(part[lo:])
    return Partition(tuple(out)), sorted(dropped)


def _balanced_chunks(order: Sequence[int], M: int) -> list:
    n = len(order)
    q, r = divmod(n, M)
    out, pos = [], 0
    for i in range(M):
        size = q + (1 if i < r else 0)
        out.append(order[pos:pos + size])
        pos += size
    return out


def _kd_split(P, idx, M, axis):
    if M == 1:
        return [idx]
    left_m = M // 2
    ordered = sorted(idx, key=lambda i: (P[i][axis], i))
    cut = round(len(idx) * left_m / M)
    nxt = (axis + 1) % P.dim
    return _kd_split(P, ordered[:cut], left_m, nxt) + _kd_split(P, ordered[cut:], M - left_m, nxt)


def candidate_partitions(P: PointSequence, M: int, rng: random.Random, random_tries: int = 3):
    n = len(P)
    for axis in range(P.dim):
        order = sorted(range(n), key=lambda i: (P[i][axis], i))
        yield "slab", Partition.of(_balanced_chunks(order, M))
    kd = _kd_split(P, list(range(n)), M, 0)
    sizes = [len(c) for c in kd]
    if max(sizes) - min(sizes) <= 1:
        yield "kd", Partition.of(kd)
    for _ in range(random_tries):
        order = list(range(n))
        rng.shuffle(order)
        yield "random", Partition.of(_balanced_chunks(order, M))


def heuristic_partition(P: PointSequence, gamma, seed: int = 0, *, c=None,
                        allow_singletons: bool = True, check_position: bool = True,
                        max_candidates: int = 200):
    """First accepted candidate equipartition over a descending schedule of
    part counts, with the singleton partition as the small-input fallback.

    Returns the accepted :class:`RegularPartition`.
    """
    gamma = Fraction(gamma)
    if not 0 < gamma < 1:
        raise ValueError("gamma must lie in (0, 1)")
    if check_position and not is_general_position(P):
        raise GeneralPositionViolation("heuristic_partition needs general position")
    d = P.dim
    c = Fraction(d + 1) if c is None else Fraction(c)
    n = len(P)
    upper = 2 * math.ceil(float(1 / gamma) ** float(c))
    lower = math.ceil(1 / gamma)
    if allow_singletons and n <= upper:
        singles = Partition(tuple((i,) for i in range(n)))
        return check_partition(P, singles, gamma, check_position=False)
    rng = random.Random(seed)
    tried = 0
    top = min(upper, n // 2)
    schedule = sorted({M for M in (top, *(top >> k for k in range(1, 12))) if M >= lower}, reverse=True)
    if not schedule and lower <= n:
        schedule = [lower]
    for M in schedule:
        if math.comb(M, d + 1) > TUPLE_CAP:
            continue
        for _, cand in candidate_partitions(P, M, rng):
            tried += 1
            res = check_partition(P, cand, gamma, check_position=False)
            if isinstance(res, RegularPartition):
                return res
            if tried >= max_candidates:
                break
    raise NoPartitionFound(f"no candidate among {tried} passed with gamma = {gamma}")


def independence_target(H: Hypergraph) -> int:
    """ceil(beta^(-1/(r-1)) / 4) in exact integer arithmetic (0 if no edges)."""
    E, n, r = len(H.edges), H.n, H.r
    if E == 0:
        return n
    # smallest k with (4k)^(r-1) * E >= n^r
    k = max(1, int((n ** r / E) ** (1 / (r - 1)) / 4) - 2)
    while (4 * k) ** (r - 1) * E < n ** r:
        k += 1
    while k > 1 and (4 * (k - 1)) ** (r - 1) * E >= n ** r:
        k -= 1
    return k


def meets_precondition(H: Hypergraph) -> bool:
    """n >= beta^(-1/(r-1)) / 2, i.e. (2n)^(r-1) |E| >= n^r."""
    E = len(H.edges)
    return E == 0 or (2 * H.n) ** (H.r - 1) * E >= H.n ** H.r


def spans_edge(H: Hypergraph, S) -> bool:
    S = set(S)
    return any(all(v in S for v in e) for e in H.edges)


def independent_set(H: Hypergraph, seed: int = 0, max_rounds: int = 100_000) -> tuple:
    """Random sample with p = beta^(-1/(r-1)) / (2n), then delete the smallest
    vertex of every spanned edge; resampled until the size bound is met."""
    if H.r < 2:
        raise PreconditionViolated("uniformity r >= 2 required")
    if not H.edges:
        return tuple(range(H.n))
    if not meets_precondition(H):
        raise PreconditionViolated("need n >= (1/2) beta^(-1/(r-1))")
    beta = len(H.edges) / H.n ** H.r
    p = min(1.0, beta ** (-1 / (H.r - 1)) / (2 * H.n))
    target = independence_target(H)
    edges = sorted(H.edges)
    rng = random.Random(seed)
    for _ in range(max_rounds):
        S = {v for v in range(H.n) if rng.random() < p}
        for e in edges:
            if all(v in S for v in e):
                S.discard(e[0])
        if len(S) >= target:
            out = tuple(sorted(S))
            assert not spans_edge(H, out)
            return out
    raise NoPartitionFound("independent-set sampling did not reach the bound")


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------

def dumps_partition(parts: Partition) -> str:
    return "".join(f"{k}: {' '.join(map(str, part))}\n" for k, part in enumerate(parts.parts))


def loads_partition(text: str) -> Partition:
    parts = []
    for ln in text.splitlines():
        if not ln.strip():
            continue
        head, _, body = ln.partition(":")
        int(head)
        parts.append(tuple(int(v) for v in body.split()))
    return Partition.of(parts)


def dumps_hypergraph(H: Hypergraph) -> str:
    return f"{H.r} {H.n}\n" + "".join(" ".join(map(str, e)) + "\n" for e in sorted(H.edges))


def loads_hypergraph(text: str) -> Hypergraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    r, n = int(rows[0][0]), int(rows[0][1])
    return Hypergraph.of(r, n, [tuple(int(v) for v in row) for row in rows[1:]])
