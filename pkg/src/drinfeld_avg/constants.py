"""The constant in front of the main term: local sums and both product routes.

c(a; v, r) sums the quadratic symbol chi_sigma(v) over units sigma mod v
with sigma r^2 - a^2 coprime to v.  It is multiplicative in v with closed
prime-power values, bounded by |v|/kappa(v), and assembles into

    C(a) = prod over l | a of (1 - |l|^-2)^-1
         * prod over l not dividing a of |l|(|l|^2-|l|-1) / ((|l|^2-1)(|l|-1)),

which the truncated double sum over (r, v) must reproduce within an exact,
explicitly computed geometric tail bound.  All arithmetic is rational; the
only irrationality anywhere, sqrt(q) for odd x, stays symbolic in HalfPower.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .factorization import euler_phi, factor, squarefree_decompose
from .gf import FqContext
from .halfpow import HalfPower
from .poly import Poly, monic_polys_upto
from .quadratic import _qr_table


@dataclass(frozen=True)
class TruncationParams:
    """Truncation knobs: degree caps for the r-sum, the v-sum, and the Euler
    product.  Defaults push both geometric tails below q^-6 for q >= 3."""

    U: int = 6
    V: int = 8
    max_prime_deg: int = 12

    def __post_init__(self):
        if min(self.U, self.V, self.max_prime_deg) < 1:
            raise ValueError("truncation parameters must all be >= 1")


def abs_diff_at_most(a: Fraction, b: Fraction, tol: Fraction) -> bool:
    """|a - b| <= tol by integer cross-multiplication.

    Equivalent to abs(a - b) <= tol but never builds a new Fraction: the
    truncated Euler products at degree 12 have megabit numerators, and one
    stdlib gcd on those costs seconds."""
    lhs = abs(a.numerator * b.denominator - b.numerator * a.denominator) * tol.denominator
    rhs = tol.numerator * a.denominator * b.denominator
    return lhs <= rhs


def count_monic_irreducibles(q: int, e: int) -> int:
    """Gauss necklace count (1/e) sum over d | e of mu(d) q^(e/d)."""

    def mu(n: int) -> int:
        out, d = 1, 2
        while d * d <= n:
            if n % d == 0:
                n //= d
                if n % d == 0:
                    return 0
                out = -out
            d += 1
        return -out if n > 1 else out

    total = sum(mu(d) * q ** (e // d) for d in range(1, e + 1) if e % d == 0)
    return total // e


def kappa(v: Poly) -> int:
    """Multiplicative with kappa(l^k) = 1 for even k, |l| for odd k; equals
    the norm of the squarefree part."""
    if v.is_zero or not v.is_monic:
        raise ValueError("kappa wants a monic nonzero polynomial")
    _, _, sqfree = squarefree_decompose(v)
    return sqfree.norm


def _divides(p: Poly, a: Poly) -> bool:
    return a.is_zero or (a % p).is_zero


def _c_prime_power(Q: int, k: int, div_a: bool, div_r: bool) -> int:
    if k % 2 == 0:
        return Q ** (k - 1) * (Q - 1) if (div_a or div_r) else Q ** (k - 1) * (Q - 2)
    return 0 if (div_a or div_r) else -(Q ** (k - 1))


def c_avr(a: Poly, v: Poly, r: Poly, mode: str = "closed") -> int:
    """The local sum c(a; v, r), by closed form or by brute enumeration."""
    ctx = a.ctx
    if v.is_zero or not v.is_monic:
        raise ValueError("v must be monic nonzero")
    if r.gcd(a).deg != 0:
        raise ValueError(f"gcd(r, a) = {r.gcd(a)} is not 1")
    facs = factor(v)[1]
    if mode == "closed":
        out = 1
        for ell, k in facs:
            out *= _c_prime_power(ell.norm, k, _divides(ell, a), _divides(ell, r))
            if out == 0:
                return 0
        return out
    if mode != "brute":
        raise ValueError(f"unknown mode {mode!r}")
    a2 = a * a
    r2 = r * r
    total = 0
    for code in range(v.norm):
        sigma = Poly.from_code(ctx, code)
        if sigma.gcd(v).deg != 0:
            continue
        if (sigma * r2 - a2).gcd(v).deg != 0:
            continue
        val = 1
        for ell, k in facs:
            if k % 2 == 0:
                continue
            val *= int(_qr_table(ctx, ell)[(sigma % ell).code])
        total += val
    return total


def c_infinity(ctx: FqContext, x: int) -> HalfPower:
    """The local factor at the infinite place; depends only on the parity of x."""
    q = ctx.q
    if x % 2 == 1:
        return HalfPower(q, Fraction(1, q - 1), -1)
    return HalfPower(q, Fraction(1, (q + 1) * (q - 1)), 0)


# ---------------------------------------------------------------------------
# Euler-product route


@lru_cache(maxsize=256)
def constant_euler(ctx: FqContext, a: Poly, params: TruncationParams = TruncationParams()) -> Fraction:
    q = ctx.q
    M = params.max_prime_deg
    div_degs: dict[int, int] = {}
    special: list[int] = []  # norms of primes dividing a
    if not a.is_zero:
        for ell, _ in factor(a)[1]:
            e = int(ell.deg)
            if e <= M:
                div_degs[e] = div_degs.get(e, 0) + 1
                special.append(ell.norm)
    num, den = 1, 1
    for e in range(1, M + 1):
        Q = q**e
        n_e = count_monic_irreducibles(q, e)
        generic = 0 if a.is_zero else n_e - div_degs.get(e, 0)
        dividing = n_e - generic
        if generic:
            num *= (Q * (Q * Q - Q - 1)) ** generic
            den *= ((Q * Q - 1) * (Q - 1)) ** generic
        if dividing:
            num *= (Q * Q) ** dividing
            den *= (Q * Q - 1) ** dividing
    return Fraction(num, den)


def euler_tail_bound(ctx: FqContext, a: Poly, params: TruncationParams = TruncationParams()) -> Fraction:
    """Exact bound on |C(a) - truncated product|.

    For a != 0 (and max_prime_deg >= deg a) the omitted factors are all
    1 - 1/((Q^2-1)(Q-1)) with (Q^2-1)(Q-1) >= Q^3/4, so the relative error
    is below 4 sum q^-2e over e > M.  For a = 0 every omitted factor is
    (1 - Q^-2)^-1 = 1 + 1/(Q^2-1) instead, giving s/(1-s) with
    s = sum n_e/(Q^2-1) <= 2/(q^M (q-1)).  Either truncation is at most
    zeta_A(2) = q/(q-1)."""
    q = ctx.q
    M = params.max_prime_deg
    if a.is_zero:
        s = Fraction(2, q**M * (q - 1))
        if s >= 1:
            raise ValueError("max_prime_deg too small for a convergent tail bound")
        eps = s / (1 - s)
    else:
        if a.deg > M:
            raise ValueError("max_prime_deg must be at least deg a for the tail bound")
        eps = Fraction(4, q ** (2 * (M + 1))) / (1 - Fraction(1, q * q))
    return Fraction(q, q - 1) * eps


# ---------------------------------------------------------------------------
# double-sum route: sum over r, v of c(a; v, r) / (|rv| phi(v r^2)),
# assembled per r as a degree-truncated Euler product with series arithmetic


def _series_mul(A: list[Fraction], B: list[Fraction], V: int) -> list[Fraction]:
    out = [Fraction(0)] * (V + 1)
    for i, ai in enumerate(A):
        if ai:
            for j in range(min(V - i, len(B) - 1) + 1):
                if B[j]:
                    out[i + j] += ai * B[j]
    return out


def _series_inv(A: list[Fraction], V: int) -> list[Fraction]:
    if A[0] != 1:
        raise ValueError("series inversion needs constant term 1")
    out = [Fraction(0)] * (V + 1)
    out[0] = Fraction(1)
    for k in range(1, V + 1):
        acc = Fraction(0)
        for j in range(1, min(k, len(A) - 1) + 1):
            acc += A[j] * out[k - j]
        out[k] = -acc
    return out


def _series_pow(A: list[Fraction], n: int, V: int) -> list[Fraction]:
    out = [Fraction(0)] * (V + 1)
    out[0] = Fraction(1)
    base = A
    while n:
        if n & 1:
            out = _series_mul(out, base, V)
        base = _series_mul(base, base, V)
        n >>= 1
    return out


def _local_series(kind: str, Q: int, e: int, V: int) -> list[Fraction]:
    """Sum over alpha of c(a; l^alpha, r)/(|l|^alpha * w(alpha)) X^(alpha e),
    where w is phi(l^alpha) for l not dividing r and |l|^alpha for l | r."""
    out = [Fraction(0)] * (V + 1)
    out[0] = Fraction(1)
    for alpha in range(1, V // e + 1):
        if kind == "generic":
            c = Fraction(-1, Q**alpha * (Q - 1)) if alpha % 2 else Fraction(Q - 2, Q**alpha * (Q - 1))
        elif kind == "div_a":
            c = Fraction(0) if alpha % 2 else Fraction(1, Q**alpha)
        elif kind == "div_r":
            c = Fraction(0) if alpha % 2 else Fraction(Q - 1, Q ** (alpha + 1))
        else:
            raise ValueError(kind)
        out[alpha * e] = c
    return out


def constant_doublesum(ctx: FqContext, a: Poly, params: TruncationParams = TruncationParams()) -> Fraction:
    q = ctx.q
    U, V = params.U, params.V
    # base product over every prime of degree <= V, with l | a factors swapped in
    base = [Fraction(0)] * (V + 1)
    base[0] = Fraction(1)
    gen_series = {e: _local_series("generic", q**e, e, V) for e in range(1, V + 1)}
    gen_inv = {e: _series_inv(gen_series[e], V) for e in gen_series}
    divr_series = {e: _local_series("div_r", q**e, e, V) for e in range(1, V + 1)}
    div_degs: dict[int, int] = {}
    if not a.is_zero:
        for ell, _ in factor(a)[1]:
            e = int(ell.deg)
            if e <= V:
                div_degs[e] = div_degs.get(e, 0) + 1
    for e in range(1, V + 1):
        n_e = count_monic_irreducibles(q, e)
        n_div = n_e if a.is_zero else div_degs.get(e, 0)
        if n_e - n_div:
            base = _series_mul(base, _series_pow(gen_series[e], n_e - n_div, V), V)
        if n_div:
            base = _series_mul(base, _series_pow(_local_series("div_a", q**e, e, V), n_div, V), V)
    # group the r-sum by the multiset of degrees of the primes of r
    groups: dict[tuple[int, ...], Fraction] = {}
    if a.is_zero:
        groups[()] = Fraction(1)  # gcd(r, 0) = 1 forces r = 1
    else:
        for r in monic_polys_upto(ctx, U):
            if r.gcd(a).deg != 0:
                continue
            key = tuple(sorted(int(ell.deg) for ell, _ in factor(r)[1]))
            weight = Fraction(1, r.norm * r.norm * euler_phi(r))  # 1/(|r| phi(r^2))
            groups[key] = groups.get(key, Fraction(0)) + weight
    total = Fraction(0)
    for key, weight in groups.items():
        adj = base
        for e in key:
            adj = _series_mul(_series_mul(adj, divr_series[e], V), gen_inv[e], V)
        total += weight * sum(adj, Fraction(0))
    return total


def doublesum_tail_bound(ctx: FqContext, params: TruncationParams = TruncationParams()) -> Fraction:
    """Exact bound on |full double sum - truncation|, from |c| <= |v|/kappa(v)
    and phi(m) >= (q-1)^deg m; both tails are geometric with rational ratios."""
    q = ctx.q
    ratio = Fraction(1, q * (q - 1))
    r_all = 1 / (1 - ratio)
    r_beyond_U = ratio ** (params.U + 1) / (1 - ratio)

    def v_tail(Y: int) -> Fraction:
        # sum over y >= Y of q^(floor(y/2)+1) / (q-1)^(y+1), split by parity
        r2 = Fraction(q, (q - 1) ** 2)
        if r2 >= 1:
            raise ValueError("tail bound needs q >= 3")
        even = Fraction(q, q - 1) * r2 ** ((Y + 1) // 2) / (1 - r2)
        odd = Fraction(q, (q - 1) ** 2) * r2 ** (Y // 2) / (1 - r2)
        return even + odd

    return r_all * v_tail(params.V + 1) + r_beyond_U * v_tail(0)


def routes_tolerance(ctx: FqContext, a: Poly, params: TruncationParams = TruncationParams()) -> Fraction:
    """Valid bound on |euler-truncated - doublesum-truncated|."""
    return euler_tail_bound(ctx, a, params) + doublesum_tail_bound(ctx, params)


def constant_C(ctx: FqContext, a: Poly, params: TruncationParams = TruncationParams(),
               route: str = "euler") -> Fraction:
    if route == "euler":
        return constant_euler(ctx, a, params)
    if route == "doublesum":
        return constant_doublesum(ctx, a, params)
    raise ValueError(f"unknown route {route!r}")


def main_term(ctx: FqContext, x: int, a: Poly, params: TruncationParams = TruncationParams()) -> HalfPower:
    """C_infinity * C(a) * q^(x/2) / x, exact up to the symbolic sqrt(q)."""
    if x < 1:
        raise ValueError("x must be >= 1")
    growth = HalfPower(ctx.q, Fraction(1, x), x)
    return c_infinity(ctx, x) * constant_euler(ctx, a, params) * growth
