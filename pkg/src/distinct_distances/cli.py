"""Command-line entry point: ``distinct-distances <command> [flags]``.

Exit status is 0 on success, 2 on usage errors and 1 on runtime errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import sidon as sidon_mod
from .curves import ParamSet, classify_curve
from .distances import distance_report
from .errors import DistinctDistancesError
from .experiment import ARITHMETIC, UNIFORM, USER_FILE, ExperimentConfig, rows_to_csv, run_experiment, sample_params
from .fileio import read_points, read_scalars, scalar_text
from .numeric import DEFAULT_DIGITS
from .specparse import parse_curve_spec
from .subsets import (DEFAULT_C, DEFAULT_TRIALS, BoundParams, bound_exponent, exhaustive_subset_oracle,
                      randomized_subset, recursion_H, sidon_route_subset)


def _n_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _emit(obj, fmt="json", out=None):
    if fmt == "csv":
        keys = list(obj)
        text = ",".join(keys) + "\n" + ",".join("" if obj[k] is None else str(obj[k]) for k in keys) + "\n"
    else:
        text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _param_set(args) -> ParamSet:
    if not args.spec:
        raise DistinctDistancesError("give --spec (and --input or --n-list) or a points --input")
    curve = parse_curve_spec(args.spec)
    if args.input:
        params = read_scalars(args.input)
    else:
        if not args.n_list:
            raise DistinctDistancesError("give --input or --n-list to choose parameters")
        params = sample_params(curve, args.n_list[0], args.sampling, args.seed)
    return ParamSet(curve, tuple(params), args.backend)


def cmd_classify(args):
    curve = parse_curve_spec(args.spec)
    rep = classify_curve(curve, samples=args.samples, seed=args.seed, backend=args.backend)
    _emit({
        "spec": args.spec,
        "family": curve.family,
        "verdict": rep.verdict,
        "samples": rep.samples,
        "backend": rep.backend,
        "witnesses": [{"params": [scalar_text(v) for v in quad], "det": scalar_text(det)}
                      for quad, det in rep.witnesses],
    }, "json", args.out)


def cmd_distances(args):
    if args.input:
        points = read_points(args.input)
        if args.backend == "float":
            points = [tuple(float(c) for c in p) for p in points]
    else:
        points = _param_set(args).points()
    _emit(distance_report(points, args.backend, args.digits), args.format, args.out)


def cmd_sidon(args):
    if args.mode == "singer":
        if args.p is None:
            raise DistinctDistancesError("--mode singer needs --p")
        values = []
        cert = sidon_mod.singer_sidon(args.p)
    else:
        if not args.input:
            raise DistinctDistancesError(f"--mode {args.mode} needs --input")
        values = read_scalars(args.input)
        if args.mode == "pipeline":
            cert = sidon_mod.real_sidon_subset(values, seed=args.seed)
        elif args.mode == "greedy":
            cert = sidon_mod.greedy_sidon(values)
        elif args.mode == "exact":
            cert = sidon_mod.integer_sidon_subset(values, seed=args.seed)
        else:
            cert = sidon_mod.max_sidon_oracle(values)
    _emit({
        "input_size": len(values),
        "subset_size": len(cert.subset),
        "subset": [scalar_text(v) for v in cert.subset],
        "engine": cert.engine,
        "certified": cert.checked,
    }, "json", args.out)


def cmd_subset(args):
    A = _param_set(args)
    if args.route == "randomized":
        res = randomized_subset(A, C=args.pi_const, trials=args.trials, seed=args.seed, digits=args.digits)
    elif args.route == "sidon":
        res = sidon_route_subset(A, seed=args.seed, digits=args.digits)
    else:
        res = exhaustive_subset_oracle(A, digits=args.digits)
    _emit({
        "route": res.route,
        "n": len(A),
        "subset_size": res.size,
        "subset_params": [scalar_text(v) for v in res.subset.params],
        "trials": res.trials,
        "pi": res.pi_used,
        "deletions_Q": res.deletions_Q,
        "deletions_S": res.deletions_S,
        "certified": res.certified,
    }, "json", args.out)


def cmd_bounds(args):
    e = bound_exponent(BoundParams(args.d))
    print(f"{e.numerator}/{e.denominator}")
    if args.t is not None:
        print(f"H({args.t}, d={args.d}) <= {recursion_H(args.t, args.d)}  (shape only; constants not faithful)")


def cmd_experiment(args):
    cfg = ExperimentConfig(
        spec=args.spec, n_list=args.n_list, sampling=args.sampling, seed=args.seed,
        backend=args.backend, out=args.out, input=args.input, digits=args.digits,
        pi_const=args.pi_const, trials=args.trials, samples=args.samples,
        workers=args.workers, timing=args.timing,
    )
    rows, summary = run_experiment(cfg)
    if args.format == "csv":
        sys.stdout.write(rows_to_csv(rows))
    else:
        sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distinct-distances",
                                     description="Distinct distances on curves, Sidon sets and distinct-distance subsets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=False, seed=True, backend=True):
        if spec:
            p.add_argument("--spec", required=True, help="curve spec, e.g. 'poly:(t, t^2)'")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        if backend:
            p.add_argument("--backend", choices=["exact", "float"], default="exact",
                           help="exact rationals or floats with quantized equality")
            p.add_argument("--digits", type=int, default=DEFAULT_DIGITS,
                           help="decimal digits kept when quantizing floats (default 9)")
        p.add_argument("--out", help="also write the output to this path (directory for 'experiment')")

    def sampling(p):
        p.add_argument("--n-list", type=_n_list, help="comma-separated sizes, e.g. 50,100")
        p.add_argument("--sampling", choices=[UNIFORM, ARITHMETIC, USER_FILE], default=UNIFORM,
                       help="how parameters are drawn when no --input is given")

    p = sub.add_parser("classify", help="sample det J_T and report the degeneracy verdict")
    common(p, spec=True)
    p.add_argument("--samples", type=int, default=200, help="number of random quadruples (default 200)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("distances", help="distance statistics of a point set or sampled curve points")
    p.add_argument("--spec", help="curve spec (used when --input is absent)")
    p.add_argument("--input", help="points CSV with a 'dim=D' header")
    common(p)
    sampling(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_distances)

    p = sub.add_parser("sidon", help="Sidon subsets of reals or integers")
    p.add_argument("--input", help="file with one rational/decimal literal per line")
    p.add_argument("--mode", choices=["pipeline", "greedy", "exact", "oracle", "singer"], default="pipeline")
    p.add_argument("--p", type=int, help="prime for --mode singer")
    common(p, backend=False)
    p.set_defaults(func=cmd_sidon)

    p = sub.add_parser("subset", help="extract a subset with all pairwise distances distinct")
    common(p, spec=True)
    p.add_argument("--input", help="file of curve parameters, one per line")
    sampling(p)
    p.add_argument("--route", choices=["randomized", "sidon", "oracle"], default="randomized")
    p.add_argument("--pi-const", type=float, default=DEFAULT_C,
                   help=f"C in pi = min(1, C n^(-5/9)) (default {DEFAULT_C})")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="independent sampling trials")
    p.set_defaults(func=cmd_subset)

    p = sub.add_parser("bounds", help="exponent 4/(9+12(d-1)) and the iterated inverse bound")
    p.add_argument("--d", type=int, required=True, help="dimension d >= 1")
    p.add_argument("--t", type=int, help="also print the iterated bound on H at this t >= 2")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("experiment", help="seeded sweep over n writing CSV rows and a JSON summary")
    common(p, spec=True)
    p.add_argument("--n-list", type=_n_list, required=True, help="strictly increasing sizes, e.g. 50,100,200")
    p.add_argument("--sampling", choices=[UNIFORM, ARITHMETIC, USER_FILE], default=UNIFORM)
    p.add_argument("--input", help="parameter file for --sampling user-file")
    p.add_argument("--pi-const", type=float, default=DEFAULT_C)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--samples", type=int, default=200, help="classification samples for the header")
    p.add_argument("--workers", type=int, default=1, help="worker processes for rows")
    p.add_argument("--timing", action="store_true",
                   help="fill wall_time_ms (makes output non-reproducible)")
    p.add_argument("--format", choices=["json", "csv"], default="json", help="what to print on stdout")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (DistinctDistancesError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


command_surface = main


if __name__ == "__main__":
    sys.exit(main())
