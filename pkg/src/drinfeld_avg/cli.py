"""Command-line interface.

Polynomials use the text format of the library: sparse terms like
"T^2+2*T+1" (generator powers g^j as coefficients over extension fields) or
the compact little-endian list "[1,2,1]".  All outputs are exact; decimal
fields are renderings of the exact values next to them.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .constants import (TruncationParams, constant_doublesum, constant_euler,
                        routes_tolerance)
from .drinfeld import FiniteDrinfeldModule, frobenius_charpoly
from .experiment import ExperimentConfig, report_to_csv, report_to_json, run_experiment
from .gf import GF
from .halfpow import HalfPower, fraction_to_decimal
from .poly import format_poly, parse_poly
from .quadratic import ClassNumberCache, class_number, hurwitz_mass
from .residue import residue_field


def _fraction_entry(f) -> dict:
    return {"num": str(f.numerator), "den": str(f.denominator), "half_power": 0,
            "decimal": fraction_to_decimal(f)}


def _cmd_charpoly(args) -> int:
    ctx = GF(args.q)
    p = parse_poly(ctx, args.p)
    F = residue_field(p)
    M = FiniteDrinfeldModule(F, F.from_poly(parse_poly(ctx, args.gamma)),
                             F.from_poly(parse_poly(ctx, args.delta))).validate()
    cp = frobenius_charpoly(M)
    print(json.dumps({"a": format_poly(cp.a), "u": ctx.format_scalar(cp.u)}, sort_keys=True))
    return 0


def _load_cache(args, ctx) -> ClassNumberCache:
    cache = ClassNumberCache()
    if args.cache:
        try:
            cache.load(args.cache, ctx)
        except FileNotFoundError:
            pass
    return cache


def _save_cache(args, cache) -> None:
    if args.cache:
        cache.save(args.cache)


def _cmd_classnumber(args) -> int:
    ctx = GF(args.q)
    cache = _load_cache(args, ctx)
    h = class_number(parse_poly(ctx, args.d), cache)
    _save_cache(args, cache)
    print(h)
    return 0


def _cmd_mass(args) -> int:
    ctx = GF(args.q)
    cache = _load_cache(args, ctx)
    H = hurwitz_mass(parse_poly(ctx, args.a), ctx.parse_scalar(args.u),
                     parse_poly(ctx, args.p), cache)
    _save_cache(args, cache)
    print(H)
    return 0


def _cmd_constant(args) -> int:
    ctx = GF(args.q)
    a = parse_poly(ctx, args.a)
    params = TruncationParams(U=args.U, V=args.V, max_prime_deg=args.max_prime_deg)
    out: dict = {"q": args.q, "a": format_poly(a),
                 "params": {"U": params.U, "V": params.V, "max_prime_deg": params.max_prime_deg}}
    if args.route in ("euler", "both"):
        out["euler"] = _fraction_entry(constant_euler(ctx, a, params))
    if args.route in ("doublesum", "both"):
        out["doublesum"] = _fraction_entry(constant_doublesum(ctx, a, params))
    if args.route == "both":
        out["tolerance"] = _fraction_entry(routes_tolerance(ctx, a, params))
    print(json.dumps(out, sort_keys=True, indent=2))
    return 0


def _parse_x_values(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _cmd_average(args) -> int:
    ctx = GF(args.q)
    config = ExperimentConfig(
        q=args.q,
        x_values=_parse_x_values(args.x),
        a_text=args.a,
        u=ctx.parse_scalar(args.u),
        deg_g=args.deg_g,
        deg_delta=args.deg_delta,
        routes=tuple(args.routes.split(",")),
        threads=args.threads,
        include_per_prime=args.per_prime,
    )
    report = run_experiment(config)
    text = report_to_json(report)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", encoding="ascii") as fh:
            fh.write(report_to_csv(report))
    return 0


def _cmd_verify(args) -> int:
    from .acceptance import run_all

    numbers = [int(t) for t in args.criteria.split(",")] if args.criteria else None
    results = run_all(numbers)
    return 0 if all(r["passed"] for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drinfeld-avg",
                                 description="Exact Frobenius-trace statistics for rank-2 "
                                             "Drinfeld modules over F_q[T]")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("charpoly", help="Frobenius charpoly of one finite module")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--p", required=True, help="monic irreducible modulus")
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--delta", required=True)
    sp.set_defaults(func=_cmd_charpoly)

    sp = sub.add_parser("classnumber", help="ideal class number h(d)")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--d", required=True, help="imaginary discriminant")
    sp.add_argument("--cache", help="class-number cache file (tab-separated)")
    sp.set_defaults(func=_cmd_classnumber)

    sp = sub.add_parser("mass", help="number of classes with charpoly X^2-aX+up")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--cache", help="class-number cache file (tab-separated)")
    sp.set_defaults(func=_cmd_mass)

    sp = sub.add_parser("constant", help="the constant C(a), either route")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--U", type=int, default=TruncationParams().U)
    sp.add_argument("--V", type=int, default=TruncationParams().V)
    sp.add_argument("--max-prime-deg", type=int, default=TruncationParams().max_prime_deg)
    sp.add_argument("--route", choices=("euler", "doublesum", "both"), default="euler")
    sp.set_defaults(func=_cmd_constant)

    sp = sub.add_parser("average", help="averaging experiment report")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--x", required=True, help="e.g. 3 or 1..8 or 1,2,4")
    sp.add_argument("--a", required=True)
    sp.add_argument("--u", required=True)
    sp.add_argument("--deg-g", type=int, default=None, help="box bound on deg g (default x)")
    sp.add_argument("--deg-delta", type=int, default=None, help="box bound on deg Delta (default x)")
    sp.add_argument("--routes", default="empirical,classnumber,main")
    sp.add_argument("--out", help="write the JSON report here instead of stdout")
    sp.add_argument("--csv", help="also write a CSV table here")
    sp.add_argument("--threads", type=int, default=1)
    sp.add_argument("--per-prime", action="store_true", help="include the per-prime mass table")
    sp.set_defaults(func=_cmd_average)

    sp = sub.add_parser("verify", help="run the acceptance suite (nonzero exit on failure)")
    sp.add_argument("--criteria", help="comma-separated criterion numbers (default: all)")
    sp.set_defaults(func=_cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
