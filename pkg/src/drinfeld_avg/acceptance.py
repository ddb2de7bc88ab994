"""The acceptance suite: nine exact criteria, one line of output each.

Every check is an exact identity, an oracle equivalence, or an explicit
bound; nothing is asserted against floating point.  The `verify` CLI
subcommand runs these and exits nonzero on any failure; the pytest suite
wraps the same functions.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .characters import DirichletCharModP, char_sum_bound_holds, orthogonality_check
from .constants import (TruncationParams, abs_diff_at_most, c_avr, constant_doublesum,
                        constant_euler, kappa, routes_tolerance)
from .drinfeld import (FiniteDrinfeldModule, charpoly_by_search, class_count_by_charpoly,
                       frobenius_charpoly, verify_frobenius_identity)
from .experiment import ExperimentConfig, exact_identity_check, run_experiment
from .factorization import euler_phi
from .gf import GF
from .halfpow import HalfPower
from .poly import Poly, monic_polys_upto, parse_poly, polys_below_degree
from .primes import count_primes_in_ap, enumerate_primes
from .quadratic import (ClassNumberCache, admissible_pair, class_number, hurwitz_mass,
                        is_imaginary_discriminant, l_value_at_one, ratio_class_number,
                        sqfree_split)
from .residue import residue_field


def _admissible_traces(ctx, x):
    """All a with deg a < x/2 (all constants while x <= 3)."""
    return list(polys_below_degree(ctx, (x + 1) // 2))


def criterion_1_mass_equality():
    """Brute-force isomorphism-class counts equal the class-number mass."""
    checked = 0
    for q in (3, 5):
        ctx = GF(q)
        cache = ClassNumberCache()
        for x in (1, 2):
            for p in enumerate_primes(ctx, x):
                counts = class_count_by_charpoly(residue_field(p))
                for a in _admissible_traces(ctx, x):
                    for u in ctx.units():
                        if not admissible_pair(ctx, x, a, u)[0]:
                            continue
                        got = counts.get((a.code, u), (0, 0))[0]
                        want = hurwitz_mass(a, u, p, cache)
                        if got != want:
                            return False, (f"q={q} p={p} a={a} u={u}: "
                                           f"classes={got} mass={want}")
                        checked += 1
    # the constant-fundamental-discriminant case the design hinges on
    ctx = GF(3)
    p = parse_poly(ctx, "T^2+1")
    if hurwitz_mass(parse_poly(ctx, "1"), 1, p) != 2:
        return False, "H_{T^2+1}(1,1) != 2 at q=3"
    return True, f"{checked} (p, a, u) triples, exact equality"


def criterion_2_frobenius_identity():
    """Random modules satisfy the Frobenius identity; solver == search oracle."""
    ctx = GF(3)
    rng = random.Random(271828)
    primes_by_x = {x: enumerate_primes(ctx, x) for x in (1, 2, 3)}
    for i in range(1000):
        x = rng.choice((1, 2, 3))
        p = rng.choice(primes_by_x[x])
        F = residue_field(p)
        gamma = rng.randrange(F.size)
        delta = rng.randrange(1, F.size)
        M = FiniteDrinfeldModule(F, gamma, delta)
        cp = frobenius_charpoly(M)
        if not verify_frobenius_identity(M, cp.a, cp.u):
            return False, f"identity fails for p={p} gamma={gamma} delta={delta}"
        if 2 * cp.a.deg > x:
            return False, f"deg a bound violated for p={p}: a={cp.a}"
    for x in (1, 2):
        for p in primes_by_x[x]:
            F = residue_field(p)
            for gamma in range(F.size):
                for delta in range(1, F.size):
                    M = FiniteDrinfeldModule(F, gamma, delta)
                    if charpoly_by_search(M) != frobenius_charpoly(M):
                        return False, f"oracle mismatch at p={p} ({gamma},{delta})"
    return True, "1000 random modules + exhaustive oracle at x <= 2"


def criterion_3_class_numbers():
    """Integrality across all imaginary discriminants of degree <= 6, and
    agreement of the direct formula with the ratio route."""
    ctx = GF(3)
    cache = ClassNumberCache()
    n_total = 0
    for code in range(1, 3**7):
        d = Poly.from_code(ctx, code)
        if not is_imaginary_discriminant(d):
            continue
        h = class_number(d, cache)  # raises on non-integrality
        if h <= 0:
            return False, f"h({d}) = {h}"
        n_total += 1
    n_ratio = 0
    for D in polys_below_degree(ctx, 4):
        if D.is_zero or D.is_constant or not is_imaginary_discriminant(D):
            continue
        f0, D0 = sqfree_split(D)
        if f0.deg != 0:
            continue  # not fundamental
        hD = class_number(D, cache)
        for f in monic_polys_upto(ctx, 1):
            expected = ratio_class_number(D, f, hD)
            got = class_number(D * f * f, cache)
            if expected != got:
                return False, f"ratio route disagrees at D={D}, f={f}: {expected} vs {got}"
            n_ratio += 1
    return True, f"{n_total} integral class numbers; {n_ratio} ratio checks"


def criterion_4_local_sums():
    """Closed forms of c(a; v, r) equal brute force; |c| <= |v|/kappa(v)."""
    ctx = GF(3)
    traces = [parse_poly(ctx, s) for s in ("1", "T", "T+1")]
    n = 0
    for v in monic_polys_upto(ctx, 3):
        kv = kappa(v)
        for r in monic_polys_upto(ctx, 2):
            for a in traces:
                if r.gcd(a).deg != 0:
                    continue
                closed = c_avr(a, v, r, "closed")
                brute = c_avr(a, v, r, "brute")
                if closed != brute:
                    return False, f"c({a};{v},{r}): closed {closed} != brute {brute}"
                if abs(closed) * kv > v.norm:
                    return False, f"|c({a};{v},{r})| = {abs(closed)} > |v|/kappa"
                n += 1
    return True, f"{n} (a, v, r) triples"


def criterion_5_constant_routes():
    """C(0) converges to q/(q-1); the two routes agree within the bound."""
    ctx = GF(3)
    params = TruncationParams()  # U=6, V=8, max_prime_deg=12
    c0 = constant_euler(ctx, Poly.zero(ctx), params)
    if not abs_diff_at_most(c0, Fraction(3, 2), Fraction(1, 3**10)):
        return False, f"|C(0) - 3/2| >= 3^-10"
    for s in ("0", "1", "T"):
        a = parse_poly(ctx, s)
        tol = routes_tolerance(ctx, a, params)
        if not abs_diff_at_most(constant_euler(ctx, a, params),
                                constant_doublesum(ctx, a, params), tol):
            return False, f"routes disagree beyond the tail bound at a={s}"
    return True, "C(0) within 3^-10; euler/doublesum within exact tails for a in {0,1,T}"


def criterion_6_full_box_identity():
    """Per-prime full-box counts equal size-weighted class counts."""
    ctx = GF(3)
    n = 0
    for x in (1, 2):
        for a in _admissible_traces(ctx, x):
            for u in ctx.units():
                if not admissible_pair(ctx, x, a, u)[0]:
                    continue
                if not exact_identity_check(ctx, x, a, u):
                    return False, f"identity fails at x={x} a={a} u={u}"
                n += 1
    return True, f"{n} admissible (x, a, u) combinations"


def criterion_7_character_sums():
    """Square character-sum bound and exact orthogonality."""
    ctx = GF(3)
    n_bound = 0
    for x in (1, 2):
        for p in enumerate_primes(ctx, x):
            F = residue_field(p)
            for k in range(1, F.size - 1):
                chi = DirichletCharModP(F, k)
                for z_hi in range(0, min(2, x) + 1):
                    for z_lo in range(0, z_hi + 1):
                        if not char_sum_bound_holds(chi, z_lo, z_hi):
                            return False, f"bound fails: p={p} k={k} z=[{z_lo},{z_hi}]"
                        n_bound += 1
    rng = random.Random(314159)
    fields = [residue_field(p) for x in (1, 2) for p in enumerate_primes(ctx, x)]
    support = list(monic_polys_upto(ctx, 2))
    for i in range(100):
        F = fields[i % len(fields)]
        coeffs = {}
        for n in rng.sample(support, rng.randint(1, 6)):
            coeffs[n] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if not orthogonality_check(F, coeffs):
            return False, f"orthogonality fails over {F.p} on {len(coeffs)} terms"
    return True, f"{n_bound} bound checks; 100 random orthogonality identities"


def criterion_8_pnt_progressions():
    """Exact prime counts in progressions against the effective main term."""
    ctx = GF(3)
    n = 0
    for dm in (1, 2):
        for m in (Poly.from_code(ctx, c) for c in range(3**dm, 2 * 3**dm)):
            phi_m = euler_phi(m)
            for acode in range(3**dm):
                a = Poly.from_code(ctx, acode)
                if m.gcd(a).deg != 0:
                    continue
                for x in range(1, 7):
                    count = count_primes_in_ap(ctx, x, m, a)
                    diff = abs(Fraction(count) - Fraction(3**x, x * phi_m))
                    bound = HalfPower(3, Fraction(4 * dm * dm, x), x)
                    if HalfPower(3, diff, 0) > bound:
                        return False, f"PNT bound fails at m={m} a={a} x={x}"
                    n += 1
    return True, f"{n} (m, a, x) progressions within 4 (deg m)^2 q^(x/2)/x"


def criterion_9_trend_table():
    """Report-only trend of classnumber_S / main_term at q=5, a=0, u=1."""
    config = ExperimentConfig(q=5, x_values=tuple(range(1, 9)), a_text="0", u=1,
                              routes=("classnumber", "main"))
    report = run_experiment(config)
    lines = []
    checked = 0
    for row in report["rows"]:
        x = row["x"]
        if not row["admissible"]:
            lines.append(f"x={x}: inadmissible ({row['inadmissible_reason']})")
            continue
        ratio = row["ratio_classnumber_over_main"]
        lines.append(f"x={x}: S_class={row['classnumber_S']['decimal']} "
                     f"main={row['main_term']['decimal']} ratio={ratio['decimal']}")
        if x >= 4:
            rv = HalfPower(5, Fraction(int(ratio["num"]), int(ratio["den"])), ratio["half_power"])
            if not (HalfPower(5, Fraction(1, 5), 0) <= rv <= HalfPower(5, Fraction(5), 0)):
                return False, f"ratio at x={x} outside [0.2, 5]: {ratio['decimal']}"
            checked += 1
    detail = "; ".join(lines)
    return True, f"sanity on {checked} rows >= 4 | {detail}"


CRITERIA = (
    (1, "deuring-gekeler mass equality", criterion_1_mass_equality),
    (2, "frobenius identity and charpoly oracle", criterion_2_frobenius_identity),
    (3, "class-number integrality and ratio consistency", criterion_3_class_numbers),
    (4, "local sums c(a;v,r) closed vs brute with bound", criterion_4_local_sums),
    (5, "constant C(a): convergence and route agreement", criterion_5_constant_routes),
    (6, "full-box exact identity", criterion_6_full_box_identity),
    (7, "character-sum bound and orthogonality", criterion_7_character_sums),
    (8, "prime counts in arithmetic progressions", criterion_8_pnt_progressions),
    (9, "trend table classnumber_S / main_term", criterion_9_trend_table),
)


def run_criterion(number: int):
    for num, name, func in CRITERIA:
        if num == number:
            t0 = time.perf_counter()
            passed, detail = func()
            return {"number": num, "name": name, "passed": passed,
                    "detail": detail, "seconds": time.perf_counter() - t0}
    raise ValueError(f"no criterion {number}")


def run_all(numbers=None, out=print):
    results = []
    for num, name, _ in CRITERIA:
        if numbers and num not in numbers:
            continue
        res = run_criterion(num)
        results.append(res)
        status = "PASS" if res["passed"] else "FAIL"
        out(f"[{num}] {status} {name} ({res['seconds']:.1f}s) -- {res['detail']}")
    return results
