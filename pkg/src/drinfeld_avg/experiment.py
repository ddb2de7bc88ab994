"""Averaging experiments over boxes of rank-2 Drinfeld modules.

The empirical route reduces every (g, Delta) in Box(A, B) = {deg g < A,
deg Delta < B, Delta != 0} modulo each prime p of degree x, collapses the
box onto residue pairs with multiplicities, and counts matches of the
requested Frobenius charpoly.  The class-number route evaluates the same
average as (1/((q-1) q^x)) sum over p of H_p.  When A = B = x the two are
tied together per prime by an exact identity: the number of box pairs with
a given charpoly equals the size-weighted number of isomorphism classes.

Reports are exact and byte-reproducible: no floats decide anything, no
timestamps are embedded, and route values carry num/den/half_power fields.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .constants import TruncationParams, main_term
from .drinfeld import charpoly_batch, class_count_by_charpoly
from .factorization import square_divisors
from .gf import FqContext, GF
from .halfpow import HalfPower, fraction_to_decimal
from .poly import Poly, format_poly, parse_poly
from .primes import enumerate_primes, prime_codes
from .quadratic import (ClassNumberCache, admissible_pair, discriminant_of_pair,
                        hurwitz_mass_batch, l_value_at_one)
from .residue import residue_field

EMPIRICAL_GUARD = 1 << 23
REPORT_SCHEMA = 1


def experiment_truncation(q: int, a: Poly) -> TruncationParams:
    """Main-term truncation for experiment reports: the largest prime degree
    with q^M <= 2*10^5, so the exact product stays well under a megabit while
    the relative tail sits below roughly q^-6.  The report records the
    parameters actually used."""
    M = 2
    while q ** (M + 1) <= 200_000:
        M += 1
    if not a.is_zero:
        M = max(M, int(a.deg))
    return TruncationParams(U=6, V=8, max_prime_deg=M)


@dataclass(frozen=True)
class BoxSpec:
    """Box(A, B): deg g < A, deg Delta < B, Delta != 0."""

    deg_g: int
    deg_delta: int

    def __post_init__(self):
        if self.deg_g < 1 or self.deg_delta < 1:
            raise ValueError("box degree bounds must be >= 1")

    def size(self, q: int) -> int:
        return q**self.deg_g * (q**self.deg_delta - 1)


def _residue_weights(F, bound: int, unit_only: bool) -> np.ndarray:
    """How many polynomials of degree < bound hit each residue mod p
    (excluding the zero polynomial when unit_only)."""
    q, x = F.ctx.q, F.x
    w = np.zeros(F.size, np.int64)
    if bound >= x:
        w[:] = q ** (bound - x)
        if unit_only:
            w[0] -= 1  # the zero polynomial is not in the box
    else:
        w[: q**bound] = 1
        if unit_only:
            w[0] = 0
    return w


def _empirical_work(ctx: FqContext, x: int, box: BoxSpec) -> int:
    return len(prime_codes(ctx, x)) * ctx.q ** (2 * x)


@lru_cache(maxsize=128)
def empirical_counts_by_charpoly(F, box: BoxSpec):
    """{(a code, u code): weighted count of box pairs} for one prime.

    Cached per (field, box); treat the returned dict as read-only."""
    q, x = F.ctx.q, F.x
    wg = _residue_weights(F, box.deg_g, unit_only=False)
    wd = _residue_weights(F, box.deg_delta, unit_only=True)
    # bad reduction p | Delta is skipped: residue 0 contributes nothing
    deltas_nz = np.flatnonzero(wd[1:]) + 1 if box.deg_delta < x else np.arange(1, F.size)
    gammas_nz = np.flatnonzero(wg) if box.deg_g < x else np.arange(F.size)
    G = np.repeat(gammas_nz, len(deltas_nz))
    D = np.tile(deltas_nz, len(gammas_nz))
    acodes, ucodes = charpoly_batch(F, G, D)
    weights = wg[G] * wd[D]
    out: dict[tuple[int, int], int] = {}
    for i in range(len(G)):
        k = (int(acodes[i]), int(ucodes[i]))
        out[k] = out.get(k, 0) + int(weights[i])
    return out


def empirical_S(ctx: FqContext, x: int, box: BoxSpec, a: Poly, u: int,
                guard: int = EMPIRICAL_GUARD) -> Fraction:
    """(1/#Box) sum over (g, Delta) of #{p of degree x: p does not divide
    Delta and the reduction has charpoly X^2 - aX + up}."""
    if u == 0:
        raise ValueError("u must be a unit")
    if 2 * a.deg >= x:
        raise ValueError(f"deg a = {a.deg} is not < x/2 = {x / 2}")
    work = _empirical_work(ctx, x, box)
    if work > guard:
        raise ValueError(f"empirical enumeration needs {work} charpolys, over the guard {guard}")
    key = (a.code, u)
    total = 0
    for p in enumerate_primes(ctx, x):
        total += empirical_counts_by_charpoly(residue_field(p), box).get(key, 0)
    return Fraction(total, box.size(ctx.q))


def exact_identity_check(ctx: FqContext, x: int, a: Poly, u: int,
                         box: BoxSpec | None = None) -> bool:
    """For every prime p of degree x, the number of full-box pairs with
    charpoly (a, u) must equal the sum of the sizes of the isomorphism
    classes carrying that charpoly.  Requires the full box A = B = x."""
    if box is None:
        box = BoxSpec(x, x)
    if box.deg_g != x or box.deg_delta != x:
        raise ValueError("the exact identity needs deg-g and deg-Delta bounds equal to x")
    key = (a.code, u)
    for p in enumerate_primes(ctx, x):
        F = residue_field(p)
        lhs = empirical_counts_by_charpoly(F, box).get(key, 0)
        rhs = class_count_by_charpoly(F).get(key, (0, 0))[1]
        if lhs != rhs:
            return False
    return True


def classnumber_S(ctx: FqContext, x: int, a: Poly, u: int, threads: int = 1,
                  cache: ClassNumberCache | None = None) -> Fraction:
    """(1/((q-1) q^x)) sum over p in P of H_p(a, u), exactly."""
    ok, why = admissible_pair(ctx, x, a, u)
    if not ok:
        raise ValueError(why)
    H = hurwitz_mass_batch(ctx, x, a, u, prime_codes(ctx, x), threads=threads, cache=cache)
    return Fraction(int(H.sum()), (ctx.q - 1) * ctx.q**x)


def classnumber_S_lform(ctx: FqContext, x: int, a: Poly, u: int) -> Fraction:
    """The L-value form of the class-number average for odd x:

        C_inf q^(-x/2) sum over p sum over r^2 | a^2-4up of L(1, chi_R)/|r|

    which collapses to a rational since C_inf carries 1/sqrt(q).  Exactly
    equal to classnumber_S; used as an object-route self-check."""
    if x % 2 == 0:
        raise ValueError("the L-form self-check is implemented for odd x")
    ok, why = admissible_pair(ctx, x, a, u)
    if not ok:
        raise ValueError(why)
    total = Fraction(0)
    for p in enumerate_primes(ctx, x):
        d = discriminant_of_pair(a, u, p)
        for f in square_divisors(d):
            total += l_value_at_one(d // (f * f)) / f.norm
    return total / ((ctx.q - 1) * ctx.q ** ((x + 1) // 2))


def per_u_slices(ctx: FqContext, x: int, a: Poly) -> dict[int, Fraction]:
    """classnumber_S for every admissible unit u."""
    out = {}
    for u in ctx.units():
        if admissible_pair(ctx, x, a, u)[0]:
            out[u] = classnumber_S(ctx, x, a, u)
    return out


# ---------------------------------------------------------------------------
# the experiment driver


@dataclass(frozen=True)
class ExperimentConfig:
    q: int
    x_values: tuple[int, ...]
    a_text: str = "0"
    u: int = 1
    deg_g: int | None = None  # defaults to x
    deg_delta: int | None = None
    routes: tuple[str, ...] = ("empirical", "classnumber", "main")
    guard: int = EMPIRICAL_GUARD
    threads: int = 1
    include_per_prime: bool = False
    trunc: TruncationParams | None = None  # None: experiment_truncation(q, a)

    def __post_init__(self):
        for r in self.routes:
            if r not in ("empirical", "classnumber", "main"):
                raise ValueError(f"unknown route {r!r}")
        if not self.x_values:
            raise ValueError("no x values requested")


def _box_bound_flags(q: int, x: int, A: int, B: int) -> dict:
    """The small-box hypotheses (informational): A, B > (log4/logq) x + log x
    and A + B > (1/2 + log16/logq) x + log x, natural logs."""
    lx = math.log(x)
    t1 = math.log(4) / math.log(q) * x + lx
    t2 = (0.5 + math.log(16) / math.log(q)) * x + lx
    return {
        "q_at_least_17": q >= 17,
        "box_bounds_hold": bool(A > t1 and B > t1 and A + B > t2),
    }


def _value_entry(v) -> dict:
    if isinstance(v, HalfPower):
        return dict(v.to_json(), decimal=v.to_decimal())
    f = Fraction(v)
    return {"num": str(f.numerator), "den": str(f.denominator),
            "half_power": 0, "decimal": fraction_to_decimal(f)}


def run_experiment(config: ExperimentConfig) -> dict:
    """Execute the configured routes for every x; returns the report dict
    (schema 1), deterministic and json-serialisable."""
    ctx = GF(config.q)
    a = parse_poly(ctx, config.a_text)
    trunc = config.trunc if config.trunc is not None else experiment_truncation(config.q, a)
    cache = ClassNumberCache()
    rows = []
    for x in config.x_values:
        A = config.deg_g if config.deg_g is not None else x
        B = config.deg_delta if config.deg_delta is not None else x
        box = BoxSpec(A, B)
        row: dict = {"x": x, "deg_g": A, "deg_delta": B,
                     "flags": _box_bound_flags(config.q, x, A, B)}
        ok, why = admissible_pair(ctx, x, a, config.u)
        row["admissible"] = ok
        if not ok:
            row["inadmissible_reason"] = why
        emp = cls = None
        if "empirical" in config.routes and ok:
            if 2 * a.deg < x and _empirical_work(ctx, x, box) <= config.guard:
                emp = empirical_S(ctx, x, box, a, config.u, guard=config.guard)
                row["empirical_S"] = _value_entry(emp)
            else:
                row["empirical_skipped"] = "enumeration guard exceeded"
        if "classnumber" in config.routes and ok:
            cls = classnumber_S(ctx, x, a, config.u, threads=config.threads, cache=cache)
            row["classnumber_S"] = _value_entry(cls)
            if config.include_per_prime:
                H = hurwitz_mass_batch(ctx, x, a, config.u, prime_codes(ctx, x),
                                       threads=config.threads, cache=cache)
                row["per_prime"] = [
                    {"p": format_poly(p), "mass": int(h)}
                    for p, h in zip(enumerate_primes(ctx, x), H)
                ]
        if "main" in config.routes:
            mt = main_term(ctx, x, a, trunc)
            row["main_term"] = _value_entry(mt)
            if cls is not None:
                ratio = HalfPower(config.q, cls, 0) / mt
                row["ratio_classnumber_over_main"] = _value_entry(ratio)
        if emp is not None and cls is not None:
            row["ratio_empirical_over_classnumber"] = _value_entry(emp / cls)
            row["empirical_equals_classnumber"] = emp == cls
        rows.append(row)
    return {
        "schema": REPORT_SCHEMA,
        "parameters": {
            "q": config.q,
            "a": format_poly(a),
            "u": ctx.format_scalar(config.u),
            "x_values": list(config.x_values),
            "deg_g": config.deg_g,
            "deg_delta": config.deg_delta,
            "routes": list(config.routes),
            "threads": config.threads,
            "truncation": {"U": trunc.U, "V": trunc.V,
                           "max_prime_deg": trunc.max_prime_deg},
        },
        "rows": rows,
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


_CSV_ROUTES = (
    ("empirical_S", "empirical"),
    ("classnumber_S", "classnumber"),
    ("main_term", "main"),
    ("ratio_classnumber_over_main", "ratio_classnumber_over_main"),
    ("ratio_empirical_over_classnumber", "ratio_empirical_over_classnumber"),
)


def report_to_csv(report: dict) -> str:
    lines = ["x,route,num,den,half_power,decimal"]
    for row in report["rows"]:
        for key, name in _CSV_ROUTES:
            if key in row:
                v = row[key]
                lines.append(f"{row['x']},{name},{v['num']},{v['den']},{v['half_power']},{v['decimal']}")
    return "\n".join(lines) + "\n"
