"""Residue fields F_p = A/pA for p monic irreducible.

Elements are int codes < |p| = q^x packing the base-q digits of the
representative of degree < x.  Construction verifies irreducibility.
Multiplication tables, Frobenius-power tables and discrete logs are built
lazily; the table sizes are guarded since they back the array kernels.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .gf import FqContext
from .poly import Poly
from .primes import is_irreducible

MUL_TABLE_MAX_SIZE = 2048


class ResidueField:
    def __init__(self, p: Poly):
        if not p.is_monic or not is_irreducible(p):
            raise ValueError(f"modulus {p} is not monic irreducible")
        self.p = p
        self.ctx: FqContext = p.ctx
        self.x = p.deg
        self.size = self.ctx.q**self.x
        # T mod p: the generator image; reduces to -p0 when x = 1
        self.tcode = self.ctx.neg(p.coeffs[0]) if self.x == 1 else self.ctx.q
        self._mul_table = None
        self._frob_pows: dict[int, np.ndarray] = {}
        self._dlog = None
        self._gen = None

    # -- conversions

    def from_poly(self, n: Poly) -> int:
        if n.ctx is not self.ctx:
            raise ValueError("polynomial from a different F_q")
        return (n % self.p).code

    def to_poly(self, e: int) -> Poly:
        return Poly.from_code(self.ctx, e)

    def embed_scalar(self, c: int) -> int:
        return c

    def in_subfield(self, e: int) -> int | None:
        """The F_q code of e when e lies in the constant subfield, else None."""
        return e if e < self.ctx.q else None

    # -- field operations on codes

    def add(self, a: int, b: int) -> int:
        K, q = self.ctx, self.ctx.q
        out, mult = 0, 1
        for _ in range(self.x):
            out += K.add(a % q, b % q) * mult
            a //= q
            b //= q
            mult *= q
        return out

    def neg(self, a: int) -> int:
        K, q = self.ctx, self.ctx.q
        out, mult = 0, 1
        for _ in range(self.x):
            out += K.neg(a % q) * mult
            a //= q
            mult *= q
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return int(self._mul_table[a, b])
        pa = Poly.from_code(self.ctx, a)
        pb = Poly.from_code(self.ctx, b)
        return ((pa * pb) % self.p).code

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise ZeroDivisionError("0 to a negative power in F_p")
            return 0
        n %= self.size - 1
        acc, base = 1, a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return self.pow(a, self.size - 2)

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(q^i)."""
        for _ in range(i % self.x if a else 0):
            a = self.pow(a, self.ctx.q)
        return a

    # -- lazy tables

    def ensure_mul_table(self) -> np.ndarray:
        if self._mul_table is None:
            if self.size > MUL_TABLE_MAX_SIZE:
                raise ValueError(
                    f"|p| = {self.size} exceeds the {MUL_TABLE_MAX_SIZE} mul-table guard")
            from .kernels_numpy import _digit_matrix, _encode_matrix, _mul_rows, _reduce_rows

            q, x = self.ctx.q, self.x
            add_t, mul_t, neg_t, _ = self.ctx.kernel_tables()
            pd = np.array(self.p.coeffs, np.int16)
            digs = _digit_matrix(np.arange(self.size, dtype=np.int64), q, x)
            t = np.zeros((self.size, self.size), np.int32)
            for a in range(self.size):
                rows = _mul_rows(np.broadcast_to(digs[a][None, :], digs.shape), digs, add_t, mul_t)
                _reduce_rows(rows, pd, x, add_t, mul_t, neg_t)
                t[a] = _encode_matrix(rows[:, :x], q)
            self._mul_table = t
        return self._mul_table

    def frob_pow_table(self, max_i: int) -> np.ndarray:
        """(max_i+1, |p|) table of c -> c^(q^i)."""
        key = max_i
        if key not in self._frob_pows:
            t = np.zeros((max_i + 1, self.size), np.int32)
            t[0] = np.arange(self.size)
            for i in range(1, max_i + 1):
                prev = t[i - 1]
                t[i] = [self.pow(int(c), self.ctx.q) for c in prev]
            self._frob_pows[key] = t
        return self._frob_pows[key]

    @property
    def generator(self) -> int:
        """Smallest-code generator of the cyclic group F_p^*."""
        if self._gen is None:
            n = self.size - 1
            primes = []
            m, d = n, 2
            while d * d <= m:
                if m % d == 0:
                    primes.append(d)
                    while m % d == 0:
                        m //= d
                d += 1
            if m > 1:
                primes.append(m)
            for cand in range(2, self.size):
                if all(self.pow(cand, n // r) != 1 for r in primes):
                    self._gen = cand
                    break
        return self._gen

    def dlog_table(self) -> np.ndarray:
        """dlog[e] = log of e base the canonical generator; -1 at 0."""
        if self._dlog is None:
            t = np.full(self.size, -1, np.int64)
            g = self.generator
            acc = 1
            for i in range(self.size - 1):
                t[acc] = i
                acc = self.mul(acc, g)
            self._dlog = t
        return self._dlog

    def power_residue_symbol(self, e: int) -> int:
        """The (q-1)-th power residue symbol e^((|p|-1)/(q-1)), as an F_q code.

        Takes the value 1 exactly on the (q-1)-th powers in F_p^*."""
        if e == 0:
            raise ValueError("power residue symbol of 0")
        y = self.pow(e, (self.size - 1) // (self.ctx.q - 1))
        if y >= self.ctx.q:
            raise RuntimeError("power residue symbol landed outside F_q")  # impossible
        return y

    def elements(self):
        return range(self.size)

    def units(self):
        return range(1, self.size)

    def __repr__(self):
        return f"ResidueField(q={self.ctx.q}, p={self.p})"


@lru_cache(maxsize=None)
def residue_field(p: Poly) -> ResidueField:
    return ResidueField(p)
