"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 cap exceeded, 3 guarantee-mode
parameters infeasible, 4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import chains, discrepancy, generators, pipeline, regularity
from .exceptions import ApproxError, InfeasibleParams, InvalidSpec
from .geometry import PointSequence, format_scalar
from .tverberg import point_selection_check
from .io import (pointset_to_dict, read_pointset, write_json, write_pointset,
                 write_text_atomic)


def _rational(text: str) -> Fraction:
    """Exact "p/q" or integer; decimals are refused to avoid rounding."""
    if any(ch in text for ch in ".eE"):
        raise argparse.ArgumentTypeError(f"use an exact fraction such as 1/4, not {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _emit(obj, out=None):
    text = json.dumps(obj, sort_keys=True)
    if out:
        write_text_atomic(out, text + "\n")
    else:
        print(text)


def _as_sequence(obj) -> PointSequence:
    if isinstance(obj, discrepancy.WeightedPointSet):
        return PointSequence(obj.dim, tuple(p for p, w in obj.entries for _ in range(w)))
    return obj


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_generate(args):
    params = {}
    if args.base is not None:
        params["base"] = args.base
    if args.denominator is not None:
        params["denominator"] = args.denominator
    if args.radius is not None:
        params["radius"] = args.radius
    P = generators.generate(generators.GeneratorSpec(args.kind, args.n, args.d, args.seed, params))
    if args.output:
        write_pointset(args.output, P)
    else:
        print(json.dumps(pointset_to_dict(P)))
    return 0


def _load_family(args, params):
    if args.family:
        return chains.loads_family(Path(args.family).read_text())
    if args.family_kind == "complete":
        return chains.complete_family(params.D, params.t, params.epsilon / 2)
    return None


def cmd_approximate(args):
    P = _as_sequence(read_pointset(args.input))
    if args.mode == "guarantee":
        params = pipeline.compute_params(P.dim, args.epsilon, "guarantee", c=args.c)
    else:
        if args.t is None or args.u is None:
            raise InvalidSpec("empirical mode needs --t and --u")
        params = pipeline.compute_params(P.dim, args.epsilon, "empirical", t=args.t, u=args.u,
                                         target=args.target, c=args.c, gamma=args.gamma,
                                         threshold=args.threshold, parts=args.parts)
    family = _load_family(args, params) if args.mode == "empirical" else None
    A, trace = pipeline.construct_approximant(P, args.epsilon, params, args.seed,
                                              family=family, certify=args.certify)
    if args.output:
        write_pointset(args.output, A)
    else:
        print(json.dumps(pointset_to_dict(A)))
    if args.trace:
        write_json(args.trace, trace.to_dict())
    return 0


def cmd_discrepancy(args):
    P = _as_sequence(read_pointset(args.p))
    A = discrepancy.as_weighted(read_pointset(args.a), P.dim)
    if args.mode == "net":
        if args.epsilon is None:
            raise InvalidSpec("--mode net needs --epsilon")
        res = discrepancy.eps_net_check(P, A, args.epsilon)
        witness = [] if res is True else list(res)
        value = Fraction(0)
        if witness:
            inside = discrepancy.hull_membership([P[i] for i in witness], list(P))
            value = Fraction(sum(inside), len(P))
        _emit({"mode": "eps_net", "value": format_scalar(value), "exact": True,
               "witness": witness, "pass": res is True, "epsilon": format_scalar(args.epsilon)})
        return 0
    if args.samples is not None:
        if args.mode != "one":
            raise InvalidSpec("sampled estimation is one-sided only")
        rep = discrepancy.sampled_discrepancy(P, A, args.strategy, args.samples, args.seed)
    elif args.mode == "one":
        rep = discrepancy.one_sided_discrepancy_exact(P, A)
    else:
        rep = discrepancy.two_sided_discrepancy_exact(P, A)
    print(rep.to_json())
    return 0


def _family_report_dict(rep):
    return {"mode": rep.mode, "worst_margin": format_scalar(rep.worst_margin),
            "witness": None if rep.witness is None else str(rep.witness),
            "chains_checked": rep.chains_checked, "verified": rep.verified}


def cmd_chains(args):
    if args.chains_cmd == "build":
        F = chains.build_family(args.D, args.epsilon, m_override=args.m, t_override=args.t)
        text = chains.dumps_family(F)
        if args.output:
            write_text_atomic(args.output, text)
        else:
            sys.stdout.write(text)
        return 0
    F = chains.loads_family(Path(args.family).read_text())
    rep = chains.verify_family(F, args.mode, sample_count=args.samples, seed=args.seed)
    _emit(_family_report_dict(rep))
    return 0 if rep.verified else 1


def cmd_partition(args):
    P = _as_sequence(read_pointset(args.input))
    parts = regularity.loads_partition(Path(args.parts).read_text())
    res = regularity.check_partition(P, parts, args.gamma)
    accepted = isinstance(res, regularity.RegularPartition)
    out = {"accepted": accepted, "M": parts.M, "gamma": format_scalar(args.gamma),
           "exceptional": [list(e) for e in sorted(res.exceptional)]}
    if accepted:
        out["signs"] = {" ".join(map(str, k)): v for k, v in sorted(res.sign_table.items())}
    else:
        out["exceptional_count"] = res.exceptional_count
        out["allowed"] = format_scalar(res.allowed)
    _emit(out)
    return 0


def cmd_prop12(args):
    P = _as_sequence(read_pointset(args.input))
    A = discrepancy.as_weighted(read_pointset(args.a), P.dim)
    w = discrepancy.proposition_witness(P, A, args.epsilon)
    _emit({"C": list(w.C_generators), "C2": list(w.C2_generators), "gap": format_scalar(w.gap),
           "empty_triangles": list(w.empty_triangles),
           "exceeds_epsilon": w.gap > args.epsilon, "epsilon": format_scalar(args.epsilon)})
    return 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def _bench_rows(suite: str, seed: int, count: int):
    if suite == "lemma32":
        for k in range(count):
            d, n = (2, 9) if k % 2 == 0 else (3, 11)
            S = generators.random_homogeneous_sequence(n, d, seed * 100_003 + k)
            t0 = time.perf_counter()
            ok = point_selection_check(S)
            yield (f"rh{k}", n, d, "", int(ok), ok, time.perf_counter() - t0)
    elif suite == "lemma51":
        cases = [(3, Fraction(1, 2)), (4, Fraction(1, 2)), (3, Fraction(1, 3)), (5, Fraction(1, 2))]
        for D, eps in cases[:max(1, count)]:
            t0 = time.perf_counter()
            F = chains.build_family(D, eps)
            rep = chains.verify_family(F, "sampled", sample_count=2000, seed=seed, restarts=20)
            yield (f"D{D}", F.t, D, eps, rep.worst_margin, rep.verified, time.perf_counter() - t0)
    elif suite == "pipeline":
        kinds = ["moment", "circle", "random"]
        for k in range(count):
            kind = kinds[k % 3]
            eps = Fraction(1, 2) if k % 2 == 0 else Fraction(1, 4)
            P = generators.generate(generators.GeneratorSpec(kind, 8 + k % 5, 2, seed + k,
                                                             {"radius": 100}))
            t0 = time.perf_counter()
            params = pipeline.compute_params(2, eps, "empirical", t=4, u=1)
            A, _ = pipeline.construct_approximant(P, eps, params, seed)
            val = discrepancy.one_sided_discrepancy_exact(P, A).value
            yield (f"{kind}{k}", len(P), 2, eps, val, val <= eps, time.perf_counter() - t0)
    else:
        raise InvalidSpec(f"unknown suite {suite!r}")


def cmd_bench(args):
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "instance", "n", "d", "epsilon", "value", "verified", "millis"])
    for inst, n, d, eps, value, ok, secs in _bench_rows(args.suite, args.seed, args.count):
        w.writerow([args.suite, inst, n, d, format_scalar(eps) if eps != "" else "",
                    format_scalar(Fraction(value)), str(bool(ok)).lower(),
                    "" if args.no_timing else f"{secs * 1000:.1f}"])
    if args.output:
        write_text_atomic(args.output, buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors are invalid input (exit 1); 2 is reserved for caps."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="onesided", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a generated point sequence")
    g.add_argument("--kind", required=True, choices=generators.KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--base", type=int)
    g.add_argument("--denominator", type=int)
    g.add_argument("--radius", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("approximate", help="build a one-sided approximant")
    a.add_argument("--input", required=True)
    a.add_argument("--epsilon", type=_rational, required=True)
    a.add_argument("--mode", choices=["empirical", "guarantee"], default="empirical")
    a.add_argument("--t", type=int)
    a.add_argument("--u", type=int)
    a.add_argument("--target", type=int)
    a.add_argument("--gamma", type=_rational)
    a.add_argument("--c", type=_rational)
    a.add_argument("--threshold", type=_rational)
    a.add_argument("--parts", type=int)
    a.add_argument("--family", help="family text file")
    a.add_argument("--family-kind", choices=["layered", "complete"], default="layered")
    a.add_argument("--certify", action="store_true")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("-o", "--output")
    a.add_argument("--trace")
    a.set_defaults(func=cmd_approximate)

    d = sub.add_parser("discrepancy", help="exact or sampled discrepancy of A against P")
    d.add_argument("--p", required=True)
    d.add_argument("--a", required=True)
    d.add_argument("--mode", choices=["one", "two", "net"], default="one")
    d.add_argument("--epsilon", type=_rational)
    grp = d.add_mutually_exclusive_group()
    grp.add_argument("--exact", action="store_true")
    grp.add_argument("--samples", type=int)
    d.add_argument("--strategy", choices=["random_subsets", "halfspaces", "local_search"],
                   default="halfspaces")
    d.add_argument("--seed", type=int, default=0)
    d.set_defaults(func=cmd_discrepancy)

    c = sub.add_parser("chains", help="build or verify stabbing families")
    csub = c.add_subparsers(dest="chains_cmd", required=True)
    cb = csub.add_parser("build")
    cb.add_argument("--D", type=int, required=True)
    cb.add_argument("--epsilon", type=_rational, required=True)
    cb.add_argument("--m", type=int)
    cb.add_argument("--t", type=int)
    cb.add_argument("-o", "--output")
    cv = csub.add_parser("verify")
    cv.add_argument("--family", required=True)
    cv.add_argument("--mode", choices=["sampled", "exhaustive"], default="sampled")
    cv.add_argument("--samples", type=int, default=10_000)
    cv.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_chains)

    p = sub.add_parser("partition", help="check a partition for regularity")
    psub = p.add_subparsers(dest="partition_cmd", required=True)
    pc = psub.add_parser("check")
    pc.add_argument("--input", required=True)
    pc.add_argument("--parts", required=True)
    pc.add_argument("--gamma", type=_rational, required=True)
    p.set_defaults(func=cmd_partition)

    w = sub.add_parser("prop12", help="lower-bound witness for points in convex position")
    w.add_argument("--input", required=True)
    w.add_argument("--a", required=True)
    w.add_argument("--epsilon", type=_rational, required=True)
    w.set_defaults(func=cmd_prop12)

    b = sub.add_parser("bench", help="timing and verification table as CSV")
    b.add_argument("--suite", choices=["lemma32", "lemma51", "pipeline"], required=True)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--count", type=int, default=10)
    b.add_argument("--no-timing", action="store_true", help="leave the millis column empty")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except InfeasibleParams as exc:
        _emit({"error": "InfeasibleParams", "message": str(exc), "report": exc.report})
        return exc.exit_code
    except ApproxError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
