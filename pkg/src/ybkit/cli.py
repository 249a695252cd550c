"""Command-line driver: ``ybkit {build,ybe-check,gauge-check,star-triangle,suite,scan-parity}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import chiral_potts as cp
from .six_vertex import (
    RootOfUnitySpec,
    SixVertexParams,
    build_six_vertex,
    resolve_q1,
    staggered_connect,
    uniform_connect,
)
from .slmn import (
    RootReducedSpec,
    SlmnParams,
    build_slmn_additive,
    build_slmn_multiplicative,
    build_slmn_root_of_unity,
)
from .suite import SuiteConfig, run_suite
from .tensor import apply_gauge, dumps_rmatrix, projective_distance, ybe_residual

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def parse_root(text: str) -> tuple[int, int]:
    try:
        N, j = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,j got {text!r}")
    return N, j


def _q(args) -> complex:
    if args.q_root is not None:
        N, j = args.q_root
        return RootOfUnitySpec(N, j).q
    if args.q is not None:
        return args.q
    raise UsageError("give --q-root N,j or --q")


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _curve_points(args, count: int):
    mod = cp.Modulus.from_k_prime(args.k_prime)
    rng = np.random.default_rng(args.seed)
    return mod, cp.conditioned_points(rng, mod, args.n, count)


def cmd_build(args) -> int:
    if args.model == "six-vertex":
        R = build_six_vertex(SixVertexParams(args.gauge, _q(args), args.x, args.y))
        _emit(dumps_rmatrix(R), args.out)
    elif args.model == "slmn":
        if args.form == "root":
            if args.q_root is None:
                raise UsageError("root-of-unity form needs --q-root N,j")
            N, j = args.q_root
            R = build_slmn_root_of_unity(RootReducedSpec(args.m, args.n_minus, N, j, args.x, args.y))
        elif args.form == "additive":
            R = build_slmn_additive(SlmnParams(args.m, args.n_minus, args.eta), args.p0, args.q0)
        else:
            R = build_slmn_multiplicative(SlmnParams(args.m, args.n_minus, args.eta), args.x, args.y)
        _emit(dumps_rmatrix(R), args.out)
    elif args.model == "cp-weights":
        mod = cp.Modulus.from_k_prime(args.k_prime)
        p = cp.sample_curve_point(mod, args.n, args.pa, args.pb)
        q = cp.sample_curve_point(mod, args.n, args.qa, args.qb)
        _emit(cp.dumps_weights(p, q, cp.cp_weight_tables(p, q)), args.out)
    elif args.model == "r4cp":
        _, pts = _curve_points(args, 4)
        R = cp.composed_rmatrix((pts[0], pts[1]), (pts[2], pts[3]), args.composition)
        _emit(dumps_rmatrix(R.with_meta(seed=args.seed, N=args.n)), args.out)
    return EXIT_OK


def _verdict(name: str, residual: float, tol: float, params: dict, out) -> int:
    ok = residual <= tol
    doc = {"name": name, "params": params, "residual": residual, "tolerance": tol, "pass": ok}
    _emit(json.dumps(doc, indent=1) + "\n", out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ybe_check(args) -> int:
    if args.model == "six-vertex":
        q = _q(args)

        def R(a, b):
            return build_six_vertex(SixVertexParams(args.gauge, q, a, b))

        res = ybe_residual(R(args.x, args.y), R(args.x, args.z), R(args.y, args.z))
        params = {"gauge": args.gauge, "q": [q.real, q.imag]}
    else:
        _, pts = _curve_points(args, 6)
        pairs = ((pts[0], pts[1]), (pts[2], pts[3]), (pts[4], pts[5]))
        res = cp.uniform_ybe_4cp(pairs, args.composition)
        params = {"N": args.n, "seed": args.seed, "composition": args.composition}
    return _verdict(f"ybe.{args.model}", res, args.tolerance, params, args.out)


def cmd_gauge_check(args) -> int:
    q = _q(args)
    R = {g: build_six_vertex(SixVertexParams(g, q, args.x, args.y)) for g in ("sym", "bs", "bbp")}
    if args.bridge == "staggered":
        res = projective_distance(apply_gauge(R["bs"], staggered_connect("bs->bbp", q)), R["bbp"])
    else:
        res = projective_distance(apply_gauge(R["sym"], uniform_connect("sym->bs", args.x, args.y)), R["bs"])
    return _verdict(f"gauge.{args.bridge}", res, args.tolerance, {"q": [q.real, q.imag]}, args.out)


def cmd_star_triangle(args) -> int:
    _, pts = _curve_points(args, 3)
    res = cp.star_triangle_residual(*pts)
    return _verdict("star-triangle", res, args.tolerance, {"N": args.n, "seed": args.seed}, args.out)


def cmd_suite(args) -> int:
    try:
        cfg = SuiteConfig.from_file(args.config) if args.config else SuiteConfig()
    except (OSError, ValueError, TypeError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.n:
        overrides["N_list"] = tuple(args.n)
    if args.tolerance:
        tol = dict(cfg.tolerances)
        for item in args.tolerance:
            key, _, value = item.partition("=")
            tol[key] = float(value)
        overrides["tolerances"] = tol
    if overrides:
        cfg = SuiteConfig(**{**cfg.echo(), **overrides})
    report = run_suite(cfg)
    _emit(report.dumps(), args.out)
    for c in report.checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name} residual={c.residual:.3e} tol={c.tolerance:.0e}",
              file=sys.stderr)
    print(f"{report.passed} passed, {report.failed} failed", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def scan_parity(Ns) -> list[dict]:
    rows = []
    for N in Ns:
        res = resolve_q1(RootOfUnitySpec(N, 1))
        rows.append({
            "N": N,
            "parity": res.spec.parity,
            "q1": [[z.real, z.imag] for z in res.q1_values],
            "q1_pow_N": [[z.real, z.imag] for z in res.q1_pow_N],
            "verdict": res.parity_verdict,
            "residual": res.power_residual,
        })
    return rows


def cmd_scan_parity(args) -> int:
    Ns = args.n or list(range(args.min, args.max + 1))
    if min(Ns) < 2 or (not args.n and args.min > args.max):
        raise UsageError("need 2 <= N_min <= N_max")
    _emit(json.dumps({"kind": "parity-scan", "rows": scan_parity(Ns)}, indent=1) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ybkit", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def q_opts(p):
        p.add_argument("--q-root", type=parse_root, metavar="N,j", help="q = exp(2 pi i j / N)")
        p.add_argument("--q", type=parse_complex, help="generic q, e.g. 0.3+1.1j")

    def cp_opts(p, n_default=3):
        p.add_argument("--n", type=int, default=n_default, help="number of spin states N")
        p.add_argument("--k-prime", type=float, default=0.8)
        p.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("build", help="build a weight table and write its dump")
    b.add_argument("model", choices=["six-vertex", "slmn", "cp-weights", "r4cp"])
    b.add_argument("--gauge", choices=["sym", "bs", "bbp"], default="bbp")
    q_opts(b)
    b.add_argument("--x", type=parse_complex, default=2.0)
    b.add_argument("--y", type=parse_complex, default=3.0)
    b.add_argument("--m", type=int, default=2)
    b.add_argument("--n-minus", type=int, default=0, help="number of odd (grading -1) states")
    b.add_argument("--form", choices=["additive", "multiplicative", "root"], default="root")
    b.add_argument("--eta", type=parse_complex, default=0.3)
    b.add_argument("--p0", type=parse_complex, default=0.1)
    b.add_argument("--q0", type=parse_complex, default=0.0)
    cp_opts(b)
    b.add_argument("--pa", type=parse_complex, default=1.0)
    b.add_argument("--pb", type=parse_complex, default=1.0)
    b.add_argument("--qa", type=parse_complex, default=0.7 + 0.2j)
    b.add_argument("--qb", type=parse_complex, default=1.3 - 0.5j)
    b.add_argument("--composition", choices=["star", "diamond"], default="star")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    y = sub.add_parser("ybe-check", help="Yang-Baxter residual for one parameter point")
    y.add_argument("model", choices=["six-vertex", "r4cp"])
    y.add_argument("--gauge", choices=["sym", "bs", "bbp"], default="bbp")
    q_opts(y)
    y.add_argument("--x", type=parse_complex, default=2.0)
    y.add_argument("--y", type=parse_complex, default=3.0)
    y.add_argument("--z", type=parse_complex, default=5.0)
    cp_opts(y, 2)
    y.add_argument("--composition", choices=["star", "diamond", "diamond-wkw"], default="star")
    y.add_argument("--tolerance", type=float, default=1e-10)
    y.add_argument("--out")
    y.set_defaults(func=cmd_ybe_check)

    g = sub.add_parser("gauge-check", help="verify a gauge bridge at one point")
    g.add_argument("bridge", choices=["staggered", "uniform"])
    q_opts(g)
    g.add_argument("--x", type=parse_complex, default=2.0)
    g.add_argument("--y", type=parse_complex, default=3.0)
    g.add_argument("--tolerance", type=float, default=1e-12)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gauge_check)

    s = sub.add_parser("star-triangle", help="star-triangle ratio constancy for random curve points")
    cp_opts(s)
    s.add_argument("--tolerance", type=float, default=1e-9)
    s.add_argument("--out")
    s.set_defaults(func=cmd_star_triangle)

    u = sub.add_parser("suite", help="run every acceptance check")
    u.add_argument("--config")
    u.add_argument("--seed", type=int)
    u.add_argument("--n", type=int, action="append", help="override N_list (repeatable)")
    u.add_argument("--tolerance", action="append", metavar="NAME=VALUE",
                   help="tolerance override for checks whose name starts with NAME")
    u.add_argument("--out")
    u.set_defaults(func=cmd_suite)

    p = sub.add_parser("scan-parity", help="q1^N = +-1 table over N")
    p.add_argument("--min", type=int, default=2)
    p.add_argument("--max", type=int, default=12)
    p.add_argument("--n", type=int, action="append", help="explicit N (repeatable)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan_parity)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
