"""Monic irreducibles of A = F_q[T]: tests, enumeration, counts in progressions."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .backend import kernels
from .gf import FqContext
from .poly import Poly


def _int_prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _powmod_poly(base: Poly, e: int, mod: Poly) -> Poly:
    acc = Poly.one(base.ctx)
    base = base % mod
    while e:
        if e & 1:
            acc = (acc * base) % mod
        base = (base * base) % mod
        e >>= 1
    return acc


def is_irreducible(f: Poly) -> bool:
    """Frobenius criterion: T^(q^x) = T mod f and gcd(T^(q^(x/l)) - T, f) = 1
    for every prime l dividing x = deg f."""
    if f.is_zero or f.is_constant:
        return False
    f = f.monic()
    x = f.deg
    q = f.ctx.q
    T = Poly.T(f.ctx)
    checkpoints = {x // ell for ell in _int_prime_divisors(x)}
    r = T % f
    for k in range(1, x + 1):
        r = _powmod_poly(r, q, f)
        if k in checkpoints and (r - T).gcd(f).deg != 0:
            return False
    return r == T % f


@lru_cache(maxsize=None)
def _prime_codes_cached(ctx: FqContext, x: int):
    checkpoints = np.array(sorted({x // ell for ell in _int_prime_divisors(x)}), np.int64)
    add_t, mul_t, neg_t, inv_t = ctx.kernel_tables()
    codes = kernels().primes_of_degree(add_t, mul_t, neg_t, inv_t, ctx.q, x, checkpoints)
    codes.setflags(write=False)
    return codes


def prime_codes(ctx: FqContext, x: int) -> np.ndarray:
    """Codes of all monic irreducibles of degree x in canonical order."""
    if x < 1:
        raise ValueError(f"prime degree must be >= 1, got {x}")
    return _prime_codes_cached(ctx, x)


@lru_cache(maxsize=None)
def enumerate_primes(ctx: FqContext, x: int) -> tuple[Poly, ...]:
    return tuple(Poly.from_code(ctx, int(c)) for c in prime_codes(ctx, x))


def primes_upto(ctx: FqContext, max_deg: int) -> list[Poly]:
    out: list[Poly] = []
    for d in range(1, max_deg + 1):
        out.extend(enumerate_primes(ctx, d))
    return out


def count_primes_in_ap(ctx: FqContext, x: int, m: Poly, a: Poly) -> int:
    """Exact number of monic irreducibles of degree x congruent to a mod m."""
    if m.is_zero:
        raise ValueError("modulus must be nonzero")
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if m.gcd(a).deg != 0:
        raise ValueError(f"gcd({m}, {a}) != 1")
    target = a % m
    return sum(1 for p in enumerate_primes(ctx, x) if p % m == target)
