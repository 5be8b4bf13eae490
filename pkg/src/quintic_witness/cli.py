"""Command line: certify, analyze, smooth, implicitize.

Exit codes: 0 success, 1 checks failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .certificate import build_certificate, canonical_dumps, validate_certificate
from .construct import ConfigError, ConstructionConfig, build_example
from .curves import (
    CurveError,
    ImplicitizationError,
    NotPlaneCubicError,
    RationalCurveMap,
    check_immersion,
    classify_node,
    identification_pairs,
    implicitize_plane_cubic,
)
from .deformation import IncidencePair, analyze
from .groebner import certify_smooth_over_Q
from .poly import NonHomogeneousError, PolySyntaxError, is_prime, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_CURVE_DEGREE = 6


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_curve(path: str) -> RationalCurveMap:
    try:
        return RationalCurveMap.from_file_text(_read(path))
    except (PolySyntaxError, NonHomogeneousError, CurveError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_quintic(path: str):
    text = " ".join(line.split("#", 1)[0] for line in _read(path).splitlines()).strip()
    try:
        f = parse_poly(text, "z")
    except (PolySyntaxError, NonHomogeneousError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    if f.is_zero():
        raise InputError(f"{path}: zero polynomial")
    return f


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed_default() -> int:
    env = os.environ.get("QW_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise InputError(f"QW_SEED={env!r} is not an integer") from None


def cmd_certify(args) -> int:
    if args.validate:
        try:
            cert = json.loads(_read(args.validate))
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.validate}: invalid JSON ({exc})") from exc
        if not isinstance(cert, dict):
            raise InputError(f"{args.validate}: not a certificate object")
        problems = validate_certificate(cert)
        for p in problems:
            print(f"inconsistent: {p}", file=sys.stderr)
        if problems:
            return EXIT_FAIL
        print(f"certificate consistent; overall_pass = {str(cert['overall_pass']).lower()}")
        return EXIT_OK if cert["overall_pass"] else EXIT_FAIL
    if not is_prime(args.prime):
        raise InputError(f"{args.prime} is not a prime")
    seed = args.seed if args.seed is not None else _seed_default()
    try:
        cfg = ConstructionConfig(seed=seed, height=args.height, max_attempts=args.attempts, prime=args.prime)
    except ConfigError as exc:
        raise InputError(str(exc)) from exc
    result = build_example(cfg)
    for line in result.log:
        print(line, file=sys.stderr)
    cert = build_certificate(result)
    _emit(canonical_dumps(cert), args.out)
    if not cert["overall_pass"]:
        print("certificate checks failed", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def analysis_summary(curve: RationalCurveMap, quintic) -> dict:
    """Everything ``analyze`` reports for a curve/quintic pair."""
    pair = IncidencePair(curve, quintic)
    rep = analyze(pair)
    out = rep.to_json()
    out["incidence"] = True
    out["immersion"] = bool(check_immersion(curve))
    try:
        pairs = identification_pairs(curve)
        out["identification_pair_count"] = len(pairs.pairs)
        out["identification_unresolved_degree"] = pairs.unresolved_degree
        try:
            g2 = implicitize_plane_cubic(curve)
        except ImplicitizationError:
            out["node_classification"] = None
        else:
            classes = [classify_node(g2, pt[2:]) for pt in pairs.image_points]
            out["node_classification"] = (
                "none" if not classes else "node" if all(c == "node" for c in classes) else "worse"
            )
    except CurveError as exc:
        out["identification_pair_count"] = None
        out["identification_unresolved_degree"] = None
        out["node_classification"] = None
        out["notes"].append(str(exc))
    return out


def cmd_analyze(args) -> int:
    curve = load_curve(args.curve)
    quintic = load_quintic(args.quintic)
    if quintic.degree != 5:
        raise InputError(f"{args.quintic}: expected a quintic, got degree {quintic.degree}")
    if curve.degree > MAX_CURVE_DEGREE:
        raise InputError(f"curve degree {curve.degree} exceeds {MAX_CURVE_DEGREE}")
    pair = IncidencePair(curve, quintic)
    rem = pair.remainder()
    if not rem.is_zero():
        print(f"incidence violated: pullback remainder {rem.to_str()}", file=sys.stderr)
        _emit(canonical_dumps({"incidence": False, "remainder": rem.to_str()}), args.report)
        return EXIT_FAIL
    _emit(canonical_dumps(analysis_summary(curve, quintic)), args.report)
    return EXIT_OK


def cmd_smooth(args) -> int:
    f = load_quintic(args.quintic)
    for p in args.prime:
        if not is_prime(p):
            raise InputError(f"{p} is not a prime")
    verdict = certify_smooth_over_Q(f, args.prime)
    _emit(canonical_dumps(verdict.to_json()), args.out)
    return EXIT_OK if verdict.smooth_over_Q else EXIT_FAIL


def cmd_implicitize(args) -> int:
    curve = load_curve(args.curve)
    try:
        g2 = implicitize_plane_cubic(curve)
    except NotPlaneCubicError as exc:
        raise InputError(f"not a plane cubic: {exc}") from exc
    except ImplicitizationError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    print(g2.to_str())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quintic-witness",
        description="Exact certificates for a nodal plane cubic on a smooth quintic threefold.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="build the example and write its certificate")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $QW_SEED or 42)")
    p.add_argument("--prime", type=int, default=32003, help="prime for the smoothness fibre")
    p.add_argument("--height", type=int, default=10, help="coefficient height bound")
    p.add_argument("--attempts", type=int, default=32, help="maximum sampling attempts")
    p.add_argument("--out", help="certificate path (default: stdout)")
    p.add_argument("--validate", metavar="PATH", help="re-check an existing certificate instead")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("analyze", help="deformation ranks for a curve on a quintic")
    p.add_argument("--curve", required=True, help="five-line curve file")
    p.add_argument("--quintic", required=True, help="file with one quintic form")
    p.add_argument("--report", help="output path (default: stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("smooth", help="Jacobian smoothness test over Q via prime fibres")
    p.add_argument("--quintic", required=True)
    p.add_argument("--prime", type=int, nargs="+", default=[32003])
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("implicitize", help="equation of a plane cubic image")
    p.add_argument("--curve", required=True)
    p.set_defaults(func=cmd_implicitize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
