"""Factorisation over F_q[T]: trial division, Euler phi, squarefree parts.

Everything here is desk scale: factorisations of polynomials up to degree a
dozen or so, backed by the cached prime lists.  The smallest-prime-factor
sieve (spf_tables) serves the multiplicative sweeps in the class-number and
L-value kernels.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .backend import kernels
from .gf import FqContext
from .poly import Poly
from .primes import enumerate_primes

Factorization = tuple[int, tuple[tuple[Poly, int], ...]]


@lru_cache(maxsize=1 << 16)
def factor(a: Poly) -> Factorization:
    """(unit code, ((monic prime, exponent), ...)) with primes in canonical order."""
    if a.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    unit = a.sgn
    rest = a.monic()
    out: list[tuple[Poly, int]] = []
    d = 1
    while rest.deg >= 1:
        if rest.deg < 2 * d:
            # no factor of degree < d remains, so rest is prime
            out.append((rest, 1))
            break
        for p in enumerate_primes(a.ctx, d):
            e = 0
            while True:
                quot, rem = divmod(rest, p)
                if not rem.is_zero:
                    break
                rest = quot
                e += 1
            if e:
                out.append((p, e))
            if rest.is_constant:
                break
        d += 1
    return unit, tuple(out)


def euler_phi(a: Poly) -> int:
    """#(A/aA)^* = |a| * prod over p | a of (1 - 1/|p|)."""
    if a.is_zero:
        raise ValueError("euler_phi of the zero polynomial")
    result = 1
    for p, e in factor(a)[1]:
        np_ = p.norm
        result *= np_ ** (e - 1) * (np_ - 1)
    return result


def squarefree_decompose(a: Poly) -> tuple[int, Poly, Poly]:
    """a = unit * f^2 * D0 with f, D0 monic and D0 squarefree."""
    unit, facs = factor(a)
    f = Poly.one(a.ctx)
    D0 = Poly.one(a.ctx)
    for p, e in facs:
        f = f * p ** (e // 2)
        if e % 2:
            D0 = D0 * p
    return unit, f, D0


def square_divisors(a: Poly) -> list[Poly]:
    """All monic f with f^2 | a, in canonical order."""
    _, facs = factor(a)
    out = [Poly.one(a.ctx)]
    for p, e in facs:
        half = e // 2
        if half:
            out = [g * p**k for g in out for k in range(half + 1)]
    return sorted(out, key=Poly.sort_key)


@lru_cache(maxsize=None)
def spf_tables(ctx: FqContext, max_deg: int):
    """(spf index, cofactor code, prime codes, prime degrees) for all monic
    polynomials of degree 1..max_deg; spf[n] indexes into the prime arrays."""
    codes = []
    degs = []
    for d in range(1, max_deg + 1):
        for p in enumerate_primes(ctx, d):
            codes.append(p.code)
            degs.append(d)
    prime_codes = np.array(codes, np.int64)
    prime_degs = np.array(degs, np.int32)
    add_t, mul_t, _, _ = ctx.kernel_tables()
    spf, cof = kernels().spf_sieve(add_t, mul_t, ctx.q, prime_codes, prime_degs, max_deg)
    for arr in (spf, cof, prime_codes, prime_degs):
        arr.setflags(write=False)
    return spf, cof, prime_codes, prime_degs
