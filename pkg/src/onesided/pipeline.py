"""End-to-end construction of one-sided weak approximants for convex sets.

Two regimes share one code path:

* ``guarantee`` parameters follow the worst-case formulas.  They are tower
  sized, so only the small-input fallback (A = P) is ever executable and
  everything else is reported symbolically.
* ``empirical`` parameters are user supplied (t, u, family, gamma, part
  count, fallback threshold) and results are checked a posteriori.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath

from .chains import ChainFamily, build_family, layer_count
from .discrepancy import WeightedPointSet, one_sided_discrepancy_exact
from .exceptions import (DimensionMismatch, EpsilonOutOfRange,
                         GeneralPositionViolation, InfeasibleParams,
                         InternalInvariantViolation, NoPartitionFound,
                         NoStabilization, NotHomogeneous, SizeMismatch)
from .geometry import (PointSequence, common_point, format_scalar,
                       is_general_position, make_point)
from .homogeneous import (OTConfig, Tower, longest_homogeneous_subsequence,
                          ot_estimate, sequence_sign)
from .regularity import (Hypergraph, Partition, RegularPartition,
                         equalize_parts, heuristic_partition, independent_set,
                         meets_precondition)
from .tverberg import tverberg_params, tverberg_point

_PREC = 128


@dataclass(frozen=True)
class Magnitude:
    """A positive quantity known exactly when small, else by its log2."""

    log2: Any  # mpmath mpf, possibly +inf
    expr: str
    exact: Fraction | None = None

    @classmethod
    def of(cls, value: Fraction) -> "Magnitude":
        value = Fraction(value)
        with mpmath.workprec(_PREC):
            lg = mpmath.log(mpmath.mpf(value.numerator), 2) - mpmath.log(mpmath.mpf(value.denominator), 2)
        return cls(lg, format_scalar(value), value)

    def __str__(self):
        if self.exact is not None:
            return format_scalar(self.exact)
        return self.expr

    def exceeded_by(self, n: int) -> bool:
        """n > self."""
        if self.exact is not None:
            return n > self.exact
        if mpmath.isinf(self.log2):
            return self.log2 < 0
        with mpmath.workprec(_PREC):
            return mpmath.log(n, 2) > self.log2


def _log2_of(N) -> Any:
    if isinstance(N, Tower):
        if N.height == 2:
            return mpmath.mpf(N.arg)
        return mpmath.inf
    with mpmath.workprec(_PREC):
        return mpmath.log(N, 2)


@dataclass(frozen=True)
class PipelineParams:
    d: int
    epsilon: Fraction
    mode: str
    s: int
    D: int
    t: int
    u: int
    n0: int
    N: Any  # int or Tower
    beta: Magnitude
    gamma: Magnitude
    c: Fraction
    threshold: Magnitude
    K: int | None = None
    m_family: int | None = None
    target: int | None = None
    partition_gamma: Fraction | None = None
    parts: int | None = None

    def symbols(self) -> dict:
        return {"d": self.d, "epsilon": format_scalar(self.epsilon), "mode": self.mode,
                "s": self.s, "D": self.D, "t": self.t, "u": self.u, "n0": self.n0,
                "N": str(self.N), "beta": str(self.beta), "gamma": str(self.gamma),
                "log2_beta": mpmath.nstr(self.beta.log2, 12), "log2_gamma": mpmath.nstr(self.gamma.log2, 12),
                "c": format_scalar(self.c), "fallback_threshold": str(self.threshold),
                "log2_fallback_threshold": mpmath.nstr(self.threshold.log2, 12),
                "K": self.K, "family_m": self.m_family, "target": self.target,
                "partition_gamma": None if self.partition_gamma is None else format_scalar(self.partition_gamma),
                "parts": self.parts}


def _check_eps(epsilon) -> Fraction:
    eps = Fraction(epsilon)
    if not 0 < eps <= 1:
        raise EpsilonOutOfRange(f"epsilon must lie in (0, 1], got {eps}")
    return eps


def _threshold(eps: Fraction, gamma: Magnitude, c: Fraction) -> Magnitude:
    """40 / (eps gamma^c)."""
    if gamma.exact is not None and c.denominator == 1:
        return Magnitude.of(40 / (eps * gamma.exact ** int(c)))
    with mpmath.workprec(_PREC):
        lg = mpmath.log(40, 2) - mpmath.log(mpmath.mpf(eps.numerator) / eps.denominator, 2) - c * gamma.log2
    return Magnitude(lg, f"40/(eps*gamma^{format_scalar(c)})")


def compute_params(d: int, epsilon, mode: str = "guarantee", *, t: int | None = None,
                   u: int | None = None, target: int | None = None, c=None,
                   gamma=None, threshold=None, parts: int | None = None,
                   ot: OTConfig | None = None) -> PipelineParams:
    """Construction parameters.

    guarantee: t is the smallest admissible family range for eps/2, then
    u = ceil(4/eps), n0 = t u, N = OT_d(n0) (estimate), beta = (4N)^-d,
    gamma = beta (eps/5)^(d+1).

    empirical: ``t`` and ``u`` are required; ``target`` is the fished-out
    sequence length (default t u), ``gamma`` the regularity tolerance used
    for partitioning (default 1/2), ``threshold`` the fallback size
    (default 40/(eps gamma^c)) and ``parts`` an optional fixed part count.
    """
    if d < 2:
        raise DimensionMismatch("the construction needs d >= 2")
    eps = _check_eps(epsilon)
    s, D = tverberg_params(d)
    c = Fraction(d + 1) if c is None else Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    if mode == "guarantee":
        half = eps / 2
        K = layer_count(D, half)
        m = math.ceil(4 / half)
        t_val = m * (D - 1) ** K
        u_val = math.ceil(4 / eps)
        n0 = t_val * u_val
        N = ot_estimate(d, n0, ot)
        log2N = _log2_of(N)
        with mpmath.workprec(_PREC):
            lb = -d * (2 + log2N)
            lg = lb + (d + 1) * (mpmath.log(mpmath.mpf(eps.numerator) / eps.denominator, 2) - mpmath.log(5, 2))
        if isinstance(N, int):
            beta = Magnitude.of(Fraction(1, (4 * N) ** d))
            gam = Magnitude.of(beta.exact * (eps / 5) ** (d + 1))
        else:
            beta = Magnitude(lb, f"(4*{N})^-{d}")
            gam = Magnitude(lg, f"(4*{N})^-{d}*({format_scalar(eps)}/5)^{d + 1}")
        thr = _threshold(eps, gam, c)
        return PipelineParams(d, eps, mode, s, D, t_val, u_val, n0, N, beta, gam, c, thr,
                              K=K, m_family=m)
    if mode != "empirical":
        raise ValueError("mode must be 'guarantee' or 'empirical'")
    if t is None or u is None:
        raise ValueError("empirical mode needs t and u")
    if t < D or u < 1:
        raise ValueError(f"need t >= D = {D} and u >= 1")
    n0 = t * u
    target = n0 if target is None else int(target)
    if target < n0:
        raise ValueError("the sequence length must be at least t*u")
    pg = Fraction(1, 2) if gamma is None else Fraction(gamma)
    if not 0 < pg < 1:
        raise ValueError("gamma must lie in (0, 1)")
    gam = Magnitude.of(pg)
    beta = Magnitude.of(pg / (eps / 5) ** (d + 1))
    thr = _threshold(eps, gam, c) if threshold is None else Magnitude.of(Fraction(threshold))
    return PipelineParams(d, eps, mode, s, D, t, u, n0, target, beta, gam, c, thr,
                          target=target, partition_gamma=pg, parts=parts)


# ---------------------------------------------------------------------------
# trace
# ---------------------------------------------------------------------------

@dataclass
class TupleRecord:
    values: tuple          # family member
    weight: int
    separators: tuple      # separator numbers j in [1, t] actually used
    points: tuple          # indices into P of those separators
    tverberg_parts: tuple  # partition of positions 0..D-1 of ``points``
    point: tuple           # the Tverberg point


@dataclass
class SequenceRecord:
    positions: tuple       # positions in the representative sequence
    parts: tuple           # part indices, same order
    representatives: tuple  # indices into P
    sign: int
    separators: tuple      # indices into P, v_1..v_t
    blocks: tuple          # per block, the part indices of its points
    tuples: list = field(default_factory=list)

    def members(self, partition: Partition) -> list:
        """Indices into P of all parts of this sequence."""
        return sorted(i for k in self.parts for i in partition.parts[k])

    def block_points(self, partition: Partition) -> list:
        return [sorted(i for k in blk for i in partition.parts[k]) for blk in self.blocks]

    def approximant(self) -> list:
        return [(rec.point, rec.weight) for rec in self.tuples]


@dataclass
class PipelineTrace:
    branch: str = "fallback"
    reason: str = ""
    symbols: dict = field(default_factory=dict)
    partition: Partition | None = None
    exceptional: tuple = ()
    discarded: tuple = ()
    representatives: tuple = ()
    sequences: list = field(default_factory=list)
    leftover: tuple = ()
    family_size: int = 0
    delta: Fraction | None = None
    halvings: int = 0
    certified: Fraction | None = None
    notes: list = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.sequences)

    def combinatorial_key(self) -> tuple:
        """Every discrete selection made; equal keys mean equal constructions
        up to the coordinates of the Tverberg points."""
        return (self.branch,
                None if self.partition is None else self.partition.parts,
                tuple((sq.positions, sq.separators,
                       tuple((r.values, r.points, r.tverberg_parts) for r in sq.tuples))
                      for sq in self.sequences))

    def to_dict(self) -> dict:
        def pt(p):
            return [format_scalar(x) for x in p]

        return {
            "branch": self.branch,
            "reason": self.reason,
            "symbols": self.symbols,
            "partition": None if self.partition is None else [list(p) for p in self.partition.parts],
            "exceptional": [list(e) for e in self.exceptional],
            "discarded": list(self.discarded),
            "representatives": list(self.representatives),
            "sequences": [{
                "positions": list(sq.positions), "parts": list(sq.parts),
                "representatives": list(sq.representatives), "sign": sq.sign,
                "separators": list(sq.separators), "blocks": [list(b) for b in sq.blocks],
                "tuples": [{"values": list(r.values), "weight": r.weight,
                            "separators": list(r.separators), "points": list(r.points),
                            "tverberg_parts": [list(p) for p in r.tverberg_parts],
                            "point": pt(r.point)} for r in sq.tuples],
            } for sq in self.sequences],
            "leftover": list(self.leftover),
            "family_size": self.family_size,
            "delta": None if self.delta is None else format_scalar(self.delta),
            "halvings": self.halvings,
            "certified": None if self.certified is None else format_scalar(self.certified),
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# assembly shared by the full construction and the homogeneous fast path
# ---------------------------------------------------------------------------

def _rng(seed: int, label: str) -> random.Random:
    return random.Random(f"{seed}:{label}")


def separator_numbers(values: tuple, t: int) -> tuple:
    """Separator numbers for a family member; a leading 0 (a member that
    never stabs) is replaced by the smallest unused number."""
    vals = list(values)
    if vals and vals[0] == 0:
        rest = set(vals[1:])
        spare = next(j for j in range(1, t + 1) if j not in rest)
        vals = sorted([spare] + vals[1:])
    return tuple(vals)


def _assemble(P: PointSequence, separators: tuple, family: ChainFamily, s: int,
              cache: dict) -> list:
    """One Tverberg point per family member over the chosen separators."""
    out = []
    for mb in family.members:
        js = separator_numbers(mb.values, family.t)
        idx = tuple(separators[j - 1] for j in js)
        hit = cache.get(idx)
        if hit is None:
            res = tverberg_point([P[i] for i in idx], s)
            hit = (res.partition, res.point)
            cache[idx] = hit
        out.append(TupleRecord(mb.values, mb.weight, js, idx, hit[0], hit[1]))
    return out


def default_family(params: PipelineParams) -> ChainFamily:
    """Layered family for eps/2 on the range [1, t]."""
    half = params.epsilon / 2
    if params.mode == "guarantee":
        return build_family(params.D, half)
    return build_family(params.D, half, t_override=params.t)


def _multiset(points_weights) -> WeightedPointSet:
    return WeightedPointSet.from_points([p for p, _ in points_weights],
                                        [w for _, w in points_weights])


def _fallback(P: PointSequence, trace: PipelineTrace, reason: str):
    trace.branch = "fallback"
    trace.reason = reason
    return WeightedPointSet.from_points(list(P), dim=P.dim), trace


# ---------------------------------------------------------------------------
# main construction
# ---------------------------------------------------------------------------

def construct_approximant(P: PointSequence, epsilon, params: PipelineParams, seed: int = 0, *,
                          family: ChainFamily | None = None, certify: bool = False,
                          route_degenerate: bool = True):
    """Return ``(A, trace)`` with A a one-sided weak approximant candidate.

    Inputs at or below the fallback threshold get A = P.  Degenerate inputs
    are handed to :func:`perturb_and_construct` unless ``route_degenerate``
    is false.  With ``certify`` the exact oracle checks the result (when
    |P| is small enough) and a failing construction falls back to A = P.
    """
    eps = _check_eps(epsilon)
    if eps != params.epsilon:
        raise ValueError("epsilon differs from the one the parameters were computed for")
    if P.dim != params.d:
        raise DimensionMismatch(f"parameters are for d={params.d}, input has d={P.dim}")
    n = len(P)
    trace = PipelineTrace(symbols=params.symbols())
    trace.symbols["n"] = n
    if not params.threshold.exceeded_by(n):
        return _fallback(P, trace, f"|P| = {n} is at most the fallback threshold")
    if params.mode == "guarantee":
        raise InfeasibleParams(
            "guarantee-mode parameters are tower sized; the construction cannot run",
            report={"n": n, **params.symbols()})
    if not is_general_position(P):
        if not route_degenerate:
            raise GeneralPositionViolation("input is not in general position")
        return perturb_and_construct(P, eps, params, seed, family=family, certify=certify)

    F = family if family is not None else default_family(params)
    if F.t != params.t or F.D != params.D:
        raise ValueError("family does not match (t, D)")
    trace.family_size = F.total_weight
    trace.symbols["|F|"] = F.total_weight

    try:
        rp = _partition(P, params, seed)
    except NoPartitionFound as exc:
        return _fallback(P, trace, f"no regular partition: {exc}")
    parts, dropped = equalize_parts(rp.partition)
    M = parts.M
    trace.partition = parts
    trace.exceptional = tuple(sorted(rp.exceptional))
    trace.discarded = tuple(dropped)
    if len(dropped) >= max(M, 1):
        raise InternalInvariantViolation("equalization discarded too many points")
    trace.symbols.update({"M": M, "part_size": len(parts.parts[0]), "discarded": len(dropped),
                          "discard_fraction": format_scalar(Fraction(len(dropped), n))})

    reps = tuple(p[0] for p in parts.parts)
    trace.representatives = reps
    hatP = P.subsequence(reps)
    H = Hypergraph.of(P.dim + 1, M, rp.exceptional)

    remaining = list(range(M))
    rng = _rng(seed, "fish")
    while len(remaining) >= eps * M / 5:
        sub, back = H.induced(remaining)
        indep = _independent(sub, rng.randrange(2 ** 32), trace)
        cands = [back[v] for v in indep]
        best = longest_homogeneous_subsequence(hatP, cands, seed=rng.randrange(2 ** 32),
                                               check_position=False)
        if len(best.indices) < params.target or best.sign == 0:
            trace.notes.append(f"stopped with {len(remaining)} parts left: longest homogeneous "
                               f"sequence has {len(best.indices)} < {params.target} points")
            break
        chosen = best.indices[:params.n0]
        # the fished-out sequence removes the full target length
        removed = set(best.indices[:params.target])
        trace.sequences.append(_sequence_record(P, parts, reps, chosen, best.sign, params))
        remaining = [k for k in remaining if k not in removed]
    trace.leftover = tuple(remaining)
    part_size = len(parts.parts[0])
    excluded = len(dropped) + len(remaining) * part_size
    trace.symbols.update({"m": trace.m, "leftover_parts": len(remaining),
                          "excluded_points": excluded,
                          "excluded_within_eps_n_over_4": excluded <= eps * n / 4,
                          "|A|": trace.m * F.total_weight, "M*|F|": M * F.total_weight})
    if not trace.sequences:
        return _fallback(P, trace, "no homogeneous sequence of the target length was found")

    cache: dict = {}
    pts = []
    for sq in trace.sequences:
        sq.tuples = _assemble(P, sq.separators, F, params.s, cache)
        pts.extend(sq.approximant())
    A = _multiset(pts)
    if A.total_weight != trace.m * F.total_weight:
        raise InternalInvariantViolation("output size does not equal m * |F|")
    trace.branch = "construction"
    trace.reason = f"{trace.m} sequences of length {params.n0}"
    if certify:
        return _certify(P, A, eps, trace)
    return A, trace


def _partition(P, params, seed) -> RegularPartition:
    if params.parts is None:
        return heuristic_partition(P, params.partition_gamma, seed, c=params.c, check_position=False)
    from .regularity import candidate_partitions, check_partition
    rng = _rng(seed, "partition")
    tried = 0
    for _, cand in candidate_partitions(P, params.parts, rng):
        tried += 1
        res = check_partition(P, cand, params.partition_gamma, check_position=False)
        if isinstance(res, RegularPartition):
            return res
    raise NoPartitionFound(f"no candidate with {params.parts} parts passed ({tried} tried)")


def _independent(H: Hypergraph, seed: int, trace: PipelineTrace) -> tuple:
    if not H.edges:
        return tuple(range(H.n))
    if meets_precondition(H):
        return independent_set(H, seed)
    # too dense for the sampling bound: delete a vertex of each remaining edge
    trace.notes.append("independent set by deterministic deletion (sampling precondition fails)")
    alive = set(range(H.n))
    for e in sorted(H.edges):
        if all(v in alive for v in e):
            alive.discard(e[-1])
    return tuple(sorted(alive))


def _sequence_record(P, parts, reps, chosen, sign, params) -> SequenceRecord:
    t, u = params.t, params.u
    part_ids = tuple(chosen)
    rep_idx = tuple(reps[k] for k in part_ids)
    separators = tuple(rep_idx[(j - 1) * u] for j in range(1, t + 1))
    blocks = tuple(tuple(part_ids[(j - 1) * u + 1: j * u]) for j in range(1, t + 1))
    if len(part_ids) != t * u:
        raise InternalInvariantViolation("sequence length is not t*u")
    return SequenceRecord(tuple(chosen), part_ids, rep_idx, sign, separators, blocks)


def _certify(P, A, eps, trace):
    if len(P) > 14:
        trace.notes.append("certification skipped: too many points for the exact oracle")
        return A, trace
    rep = one_sided_discrepancy_exact(P, A)
    trace.certified = rep.value
    if rep.value > eps:
        trace.notes.append(f"construction had one-sided discrepancy {format_scalar(rep.value)} > eps")
        trace.sequences = []
        A, trace = _fallback(P, trace, "certification failed")
        trace.certified = Fraction(0)
    return A, trace


# ---------------------------------------------------------------------------
# homogeneous fast path
# ---------------------------------------------------------------------------

def construct_homogeneous_fast(P: PointSequence, epsilon, t_override: int | None = None, *,
                               family: ChainFamily | None = None, return_trace: bool = False):
    """Approximant for an orientation-homogeneous sequence.

    Every point is its own part, so no partition or fish-out is needed; the
    t separators are spread evenly over the whole sequence (every u-th point
    for u = |P|/t when t divides |P|).
    """
    eps = _check_eps(epsilon)
    d = P.dim
    if d < 2:
        raise DimensionMismatch("the construction needs d >= 2")
    sign = sequence_sign(P) if len(P) > d else 0
    if not sign:
        raise NotHomogeneous("input is not orientation-homogeneous")
    s, D = tverberg_params(d)
    if family is not None:
        F = family
        t = F.t
        if t_override is not None and t_override != t:
            raise ValueError("t_override disagrees with the family")
    elif t_override is not None:
        t = t_override
        F = build_family(D, eps / 2, t_override=t)
    else:
        F = build_family(D, eps / 2)
        t = F.t
    if F.D != D:
        raise ValueError(f"family arity {F.D} differs from D = {D}")
    n = len(P)
    if n < t:
        raise SizeMismatch(f"need at least t = {t} points, got {n}")
    # u = n / t need not be an integer: separator j sits at floor((j-1) n / t)
    # and block j runs up to the next separator (the last one to the end)
    separators = tuple(((j - 1) * n) // t for j in range(1, t + 1))
    bounds = separators + (n,)
    blocks = tuple(tuple(range(bounds[j] + 1, bounds[j + 1])) for j in range(t))
    u = Fraction(n, t)
    records = _assemble(P, separators, F, s, {})
    A = _multiset([(r.point, r.weight) for r in records])
    if not return_trace:
        return A
    sq = SequenceRecord(tuple(range(n)), tuple(range(n)), tuple(range(n)), sign,
                        separators, blocks, records)
    trace = PipelineTrace(branch="homogeneous", reason=f"u = {format_scalar(u)}",
                          symbols={"d": d, "epsilon": format_scalar(eps), "s": s, "D": D, "t": t,
                                   "u": format_scalar(u), "n": n, "|F|": F.total_weight},
                          partition=Partition(tuple((i,) for i in range(n))),
                          representatives=tuple(range(n)), sequences=[sq],
                          family_size=F.total_weight)
    return A, trace


# ---------------------------------------------------------------------------
# degenerate inputs
# ---------------------------------------------------------------------------

def _directions(P: PointSequence, seed: int) -> list:
    rng = _rng(seed, "perturb")
    return [tuple(Fraction(rng.randint(-1000, 1000), 1000) for _ in range(P.dim)) for _ in range(len(P))]


def default_delta0(P: PointSequence) -> Fraction:
    """1/1000 of the largest coordinate spread (1/1000 if all points agree)."""
    spread = max((max(p[k] for p in P) - min(p[k] for p in P) for k in range(P.dim)), default=0)
    return Fraction(spread or 1, 1000)


def perturb_and_construct(P: PointSequence, epsilon, params: PipelineParams, seed: int = 0, *,
                          family: ChainFamily | None = None, certify: bool = False,
                          delta0=None, max_halvings: int = 32):
    """Run the construction on shrinking random perturbations of ``P`` until
    two consecutive perturbation sizes make identical combinatorial choices.

    The stabilized choices are then evaluated on the unperturbed points: each
    Tverberg partition found under perturbation still has a common point at
    zero perturbation (hull intersections are closed), and that point is
    computed exactly.  An agreement whose partitions lose their common point
    at zero came too early and does not count.
    """
    eps = _check_eps(epsilon)
    if not params.threshold.exceeded_by(len(P)) or is_general_position(P):
        return construct_approximant(P, eps, params, seed, family=family, certify=certify)
    dirs = _directions(P, seed)
    delta = Fraction(delta0) if delta0 is not None else default_delta0(P)
    older_key, prev_key = None, None
    premature = 0
    for i in range(max_halvings + 1):
        Q = PointSequence(P.dim, tuple(
            make_point(tuple(x + delta * e for x, e in zip(p, dv))) for p, dv in zip(P, dirs)))
        if is_general_position(Q):
            _, tr = construct_approximant(Q, eps, params, seed, family=family, route_degenerate=False)
            key = tr.combinatorial_key()
            if key == prev_key:
                try:
                    A, out = _evaluate_at_zero(P, tr)
                except InternalInvariantViolation:
                    # agreement came before the choices settled; along the ray
                    # every predicate is eventually constant, so keep halving
                    premature += 1
                    older_key, prev_key = prev_key, key
                    delta /= 2
                    continue
                out.delta, out.halvings = delta, i
                out.notes.append("stabilized under perturbation; evaluated at zero perturbation")
                if premature:
                    out.notes.append(f"{premature} agreement(s) lost a common point at zero; kept halving")
                if certify and out.branch == "construction":
                    return _certify(P, A, eps, out)
                return A, out
            older_key, prev_key = prev_key, key
        delta /= 2
    raise NoStabilization(
        f"no two consecutive perturbations agreed within {max_halvings} halvings",
        previous=older_key, last=prev_key)


def _evaluate_at_zero(P: PointSequence, trace: PipelineTrace):
    if trace.branch == "fallback":
        return WeightedPointSet.from_points(list(P), dim=P.dim), trace
    pts = []
    for sq in trace.sequences:
        for rec in sq.tuples:
            parts = [[P[rec.points[k]] for k in part] for part in rec.tverberg_parts]
            x = common_point(parts)
            if x is None:
                raise InternalInvariantViolation("stabilized Tverberg partition lost its common point")
            rec.point = x
            pts.append((x, rec.weight))
    return _multiset(pts), trace


__all__ = ["Magnitude", "PipelineParams", "PipelineTrace", "SequenceRecord", "TupleRecord",
           "compute_params", "construct_approximant", "construct_homogeneous_fast",
           "perturb_and_construct", "default_family", "separator_numbers", "default_delta0"]
