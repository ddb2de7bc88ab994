"""The polynomial ring A = F_q[T]: exact ring operations, text format, enumeration.

A polynomial is an immutable coefficient tuple (little-endian, no trailing
zeros) bound to an FqContext.  deg 0 = -inf, |0| = 0, sgn 0 = 0; otherwise
|a| = q^deg(a) and sgn is the leading coefficient.  The canonical ordering
used everywhere (prime lists, iteration, cache keys) is by degree, then by
the base-q integer code, i.e. lexicographic from the top coefficient down.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from .gf import FqContext, GF

NEG_INF = float("-inf")


class Poly:
    """Element of F_q[T] as an immutable normalized coefficient tuple."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: FqContext, coeffs: Iterable[int]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)
        self._hash = None

    # -- constructors

    @classmethod
    def zero(cls, ctx) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx) -> "Poly":
        return cls(ctx, (1,))

    @classmethod
    def T(cls, ctx) -> "Poly":
        return cls(ctx, (0, 1))

    @classmethod
    def constant(cls, ctx, c: int) -> "Poly":
        return cls(ctx, (c,))

    @classmethod
    def from_code(cls, ctx, code: int) -> "Poly":
        """Inverse of .code: base-q digits of `code` are the coefficients."""
        cs = []
        while code:
            code, c = divmod(code, ctx.q)
            cs.append(c)
        return cls(ctx, cs)

    # -- basic structure

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def sgn(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def norm(self) -> int:
        """|a| = q^deg a, with |0| = 0."""
        return self.ctx.q ** (len(self.coeffs) - 1) if self.coeffs else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def code(self) -> int:
        """Base-q integer packing; orders polynomials of equal degree lexicographically."""
        c = 0
        for a in reversed(self.coeffs):
            c = c * self.ctx.q + a
        return c

    def sort_key(self):
        return (len(self.coeffs), self.code)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.ctx), self.coeffs))
        return self._hash

    # -- ring operations

    def __add__(self, other: "Poly") -> "Poly":
        K = self.ctx
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = K.add(out[i], c)
        return Poly(K, out)

    def __neg__(self) -> "Poly":
        K = self.ctx
        return Poly(K, (K.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        K = self.ctx
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(K)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = K.add(out[i + j], K.mul(ai, bj))
        return Poly(K, out)

    def scale(self, c: int) -> "Poly":
        K = self.ctx
        if c == 0:
            return Poly.zero(K)
        return Poly(K, (K.mul(c, a) for a in self.coeffs))

    def __divmod__(self, other: "Poly"):
        K = self.ctx
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero or len(self.coeffs) < len(other.coeffs):
            return Poly.zero(K), self
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead_inv = K.inv(other.coeffs[-1])
        quot = [0] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                f = K.mul(c, lead_inv)
                quot[k - db] = f
                for j in range(db + 1):
                    rem[k - db + j] = K.sub(rem[k - db + j], K.mul(f, other.coeffs[j]))
        return Poly(K, quot), Poly(K, rem[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        acc = Poly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.ctx.inv(self.coeffs[-1]))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd; gcd(0, 0) = 0."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        K = self.ctx
        out = []
        for i in range(1, len(self.coeffs)):
            # i mod char as a scalar multiplier
            m = i % K.p0
            out.append(K.mul(m % K.q, self.coeffs[i]) if m else 0)
        return Poly(K, out)

    def evaluate(self, c: int) -> int:
        K = self.ctx
        acc = 0
        for a in reversed(self.coeffs):
            acc = K.add(K.mul(acc, c), a)
        return acc

    def shift(self, k: int) -> "Poly":
        """Multiply by T^k."""
        if self.is_zero:
            return self
        return Poly(self.ctx, (0,) * k + self.coeffs)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly(q={self.ctx.q}, {format_poly(self)!r})"


# -- enumeration in canonical order

def monic_polys(ctx: FqContext, deg: int) -> Iterator[Poly]:
    """All monic polynomials of exact degree deg, ascending canonical order."""
    q = ctx.q
    for code in range(q**deg, 2 * q**deg):
        yield Poly.from_code(ctx, code)


def monic_polys_upto(ctx: FqContext, max_deg: int) -> Iterator[Poly]:
    for d in range(max_deg + 1):
        yield from monic_polys(ctx, d)


def polys_below_degree(ctx: FqContext, bound: int) -> Iterator[Poly]:
    """All polynomials (zero included) of degree < bound, ascending code order."""
    for code in range(ctx.q**bound):
        yield Poly.from_code(ctx, code)


# -- text format (the CLI wire format)
#
# sparse form: terms joined by '+', highest degree first, e.g. "T^3+2*T+1";
# extension-field coefficients in generator-power form, e.g. "g^5*T+g";
# compact form "[c0,c1,...]" little-endian is also accepted on input.

_TERM_RE = re.compile(
    r"^(?:(?P<coef>[^*T]+)\*?)?(?:T(?:\^(?P<pow>\d+))?)$|^(?P<const>[^*T]+)$"
)


def format_poly(p: Poly) -> str:
    if p.is_zero:
        return "0"
    K = p.ctx
    terms = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        cs = K.format_scalar(c)
        if k == 0:
            terms.append(cs)
        else:
            t = "T" if k == 1 else f"T^{k}"
            terms.append(t if cs == "1" else f"{cs}*{t}")
    return "+".join(terms)


def parse_poly(ctx: FqContext, text: str) -> Poly:
    t = text.strip().replace(" ", "")
    if not t:
        raise ValueError("empty polynomial text")
    if t.startswith("["):
        if not t.endswith("]"):
            raise ValueError(f"unterminated compact polynomial {text!r}")
        body = t[1:-1]
        if not body:
            return Poly.zero(ctx)
        return Poly(ctx, (ctx.parse_scalar(tok) for tok in body.split(",")))
    # split into signed terms
    coeffs: dict[int, int] = {}
    t = t.replace("-", "+-")
    if t.startswith("+"):
        t = t[1:]
    for term in t.split("+"):
        if not term:
            raise ValueError(f"bad polynomial text {text!r}")
        negate = term.startswith("-")
        if negate:
            term = term[1:]
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"bad term {term!r} in {text!r}")
        if m.group("const") is not None:
            c = ctx.parse_scalar(m.group("const"))
            k = 0
        else:
            coef = m.group("coef")
            c = ctx.parse_scalar(coef) if coef is not None else 1
            k = int(m.group("pow")) if m.group("pow") is not None else 1
        if negate:
            c = ctx.neg(c)
        coeffs[k] = ctx.add(coeffs.get(k, 0), c)
    size = max(coeffs) + 1 if coeffs else 0
    out = [0] * size
    for k, c in coeffs.items():
        out[k] = c
    return Poly(ctx, out)
