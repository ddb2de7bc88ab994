"""Dirichlet characters mod a prime p of A with exact cyclotomic values.

A character mod p is determined by its value zeta^k at a fixed generator of
(A/pA)^*, zeta a primitive N-th root of unity, N = |p| - 1.  Values and
character sums live in Z[zeta] represented as integer (or Fraction) vectors
on the basis zeta^0..zeta^(N-1) with arithmetic mod X^N - 1; equality is
decided by reduction mod the N-th cyclotomic polynomial, and sign questions
about real quantities by certified interval evaluation, so no float ever
decides a comparison that reduction can settle.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from .poly import Poly
from .residue import ResidueField


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (little-endian) of the n-th cyclotomic polynomial."""
    # Phi_n = (X^n - 1) / prod_{d | n, d < n} Phi_d, by exact integer division
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            phi_d = cyclotomic_poly(d)
            num = _intpoly_div(num, list(phi_d))
    return tuple(num)


def _intpoly_div(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials (b monic up to sign)."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - 1, len(b) - 2, -1):
        c = a[k]
        if c % lead != 0:
            raise ArithmeticError("non-exact cyclotomic division")
        f = c // lead
        out[k - len(b) + 1] = f
        for j in range(len(b)):
            a[k - len(b) + 1 + j] -= f * b[j]
    if any(a[: len(b) - 1]):
        raise ArithmeticError("non-exact cyclotomic division")
    return out


class CycVec:
    """Element of Q[zeta_N] as a coefficient vector modulo X^N - 1."""

    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs=None):
        self.N = N
        if coeffs is None:
            self.coeffs = tuple([0] * N)
        else:
            cs = list(coeffs)
            if len(cs) != N:
                raise ValueError("coefficient vector length mismatch")
            self.coeffs = tuple(cs)

    @classmethod
    def root_power(cls, N: int, j: int, scale=1) -> "CycVec":
        cs = [0] * N
        cs[j % N] = scale
        return cls(N, cs)

    @classmethod
    def const(cls, N: int, value) -> "CycVec":
        cs = [0] * N
        cs[0] = value
        return cls(N, cs)

    def __add__(self, other: "CycVec") -> "CycVec":
        return CycVec(self.N, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycVec") -> "CycVec":
        return CycVec(self.N, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycVec":
        return CycVec(self.N, (-a for a in self.coeffs))

    def __mul__(self, other: "CycVec") -> "CycVec":
        N = self.N
        out = [0] * N
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = i + j
                        out[k - N if k >= N else k] += a * b
        return CycVec(N, out)

    def scale(self, c) -> "CycVec":
        return CycVec(self.N, (c * a for a in self.coeffs))

    def conj(self) -> "CycVec":
        """Complex conjugation zeta -> zeta^(-1)."""
        cs = [0] * self.N
        for j, a in enumerate(self.coeffs):
            cs[(-j) % self.N] = a
        return CycVec(self.N, cs)

    def norm_squared(self) -> "CycVec":
        return self * self.conj()

    def reduced(self) -> tuple:
        """Canonical form: remainder mod the N-th cyclotomic polynomial."""
        phi = cyclotomic_poly(self.N)
        deg = len(phi) - 1
        rem = list(self.coeffs)
        for k in range(len(rem) - 1, deg - 1, -1):
            c = rem[k]
            if c:
                for j in range(deg + 1):
                    rem[k - deg + j] -= c * phi[j]
        return tuple(rem[:deg])

    @property
    def is_zero(self) -> bool:
        return not any(self.reduced())

    def equals(self, other: "CycVec") -> bool:
        return self.N == other.N and (self - other).is_zero

    def __eq__(self, other):
        return isinstance(other, CycVec) and self.equals(other)

    def __hash__(self):
        return hash((self.N, self.reduced()))

    def is_real(self) -> bool:
        return (self - self.conj()).is_zero

    def real_sign(self) -> int:
        """Sign of a real cyclotomic number, decided exactly.

        Zero is settled algebraically; otherwise certified interval
        arithmetic at increasing precision must exclude zero eventually."""
        if not self.is_real():
            raise ValueError("real_sign of a non-real cyclotomic value")
        if self.is_zero:
            return 0
        prec, old = 80, mpmath.iv.prec
        try:
            while True:
                mpmath.iv.prec = prec
                iv = mpmath.iv.mpf(0)
                two_pi = 2 * mpmath.iv.pi
                for j, a in enumerate(self.coeffs):
                    if a:
                        f = Fraction(a)
                        aiv = mpmath.iv.mpf(f.numerator) / f.denominator
                        iv += aiv * mpmath.iv.cos(two_pi * j / self.N)
                if iv.a > 0:
                    return 1
                if iv.b < 0:
                    return -1
                prec *= 2
                if prec > 1 << 16:
                    raise RuntimeError("interval refinement failed to separate from zero")
        finally:
            mpmath.iv.prec = old

    def __repr__(self):
        return f"CycVec(N={self.N}, {self.reduced()})"


# ---------------------------------------------------------------------------


class DirichletCharModP:
    """chi_k: the character sending the canonical generator h of (A/pA)^* to
    zeta^k; chi_k(n) = zeta^(k * dlog(n mod p)) and 0 on multiples of p."""

    def __init__(self, field: ResidueField, k: int):
        self.field = field
        self.N = field.size - 1
        self.k = k % self.N

    @property
    def is_principal(self) -> bool:
        return self.k == 0

    def value_code(self, n: Poly | int) -> int:
        """Exponent j with chi(n) = zeta^j, or -1 when chi(n) = 0."""
        e = self.field.from_poly(n) if isinstance(n, Poly) else n
        if e == 0:
            return -1
        d = int(self.field.dlog_table()[e])
        return (self.k * d) % self.N

    def __call__(self, n: Poly | int) -> CycVec:
        j = self.value_code(n)
        if j < 0:
            return CycVec(self.N)
        return CycVec.root_power(self.N, j)


def all_characters(field: ResidueField) -> list[DirichletCharModP]:
    return [DirichletCharModP(field, k) for k in range(field.size - 1)]


def char_sum(chi: DirichletCharModP, z_lo: int, z_hi: int) -> CycVec:
    """Sum of chi(f) over monic f with z_lo <= deg f <= z_hi, exactly."""
    if chi.is_principal:
        raise ValueError("character sum requires a nonprincipal character")
    if z_lo < 0 or z_hi > chi.field.x:
        raise ValueError("degree range must satisfy 0 <= z_lo, z_hi <= deg p")
    N = chi.N
    counts = [0] * N
    q = chi.field.ctx.q
    for d in range(z_lo, z_hi + 1):
        for code in range(q**d, 2 * q**d):
            j = chi.value_code(Poly.from_code(chi.field.ctx, code))
            if j >= 0:
                counts[j] += 1
    return CycVec(N, counts)


def char_sum_bound_holds(chi: DirichletCharModP, z_lo: int, z_hi: int) -> bool:
    """|sum|^2 <= q^z_hi * 4^x, compared in exact cyclotomic arithmetic."""
    s = char_sum(chi, z_lo, z_hi)
    bound = chi.field.ctx.q**z_hi * 4**chi.field.x
    diff = CycVec.const(chi.N, bound) - s.norm_squared()
    return diff.real_sign() >= 0


def orthogonality_check(field: ResidueField, coefficients: dict[Poly, Fraction], z: int | None = None) -> bool:
    """Verify sum over all chi mod p of |sum_n a_n chi(n)|^2
    = phi(p) * sum over residues f of |sum_{n = f mod p} a_n|^2, exactly.

    coefficients maps monic n to exact rationals; both sides are expanded in
    Z[zeta] and compared after cyclotomic reduction.  The residue sum runs
    over units f (characters vanish on multiples of p, so n = 0 mod p never
    contributes to the left side)."""
    N = field.size - 1
    if z is not None:
        for n in coefficients:
            if n.deg > z:
                raise ValueError(f"coefficient support exceeds degree bound {z}")
    lhs = CycVec(N)
    for k in range(N):
        chi = DirichletCharModP(field, k)
        inner = CycVec(N)
        for n, a in coefficients.items():
            j = chi.value_code(n)
            if j >= 0:
                inner = inner + CycVec.root_power(N, j, Fraction(a))
        lhs = lhs + inner.norm_squared()
    by_residue: dict[int, Fraction] = {}
    for n, a in coefficients.items():
        e = field.from_poly(n)
        by_residue[e] = by_residue.get(e, Fraction(0)) + Fraction(a)
    rhs_val = sum((v * v for e, v in by_residue.items() if e != 0), Fraction(0)) * N
    return lhs.equals(CycVec.const(N, rhs_val))
