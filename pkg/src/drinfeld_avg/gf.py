"""Small finite fields F_q (q an odd prime power) with precomputed tables.

Elements are plain integer codes 0..q-1.  For prime q the code is the value
itself; for q = p0^e the base-p0 digits of the code are the coordinates of
the element in F_p0[y]/(m(y)) for a fixed modulus m.  Multiplication runs on
log/antilog tables; q-by-q operation tables are materialised on demand for
the array kernels (guarded to q <= 1024, well past desk scale).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

KERNEL_TABLE_MAX_Q = 1024


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"q must be a prime power >= 3, got {q}")
    p = None
    n, d = q, 2
    while d * d <= n:
        if n % d == 0:
            p = d
            while n % d == 0:
                n //= d
            break
        d += 1
    if p is None:
        p = q
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return p, e


def _int_factor(n: int) -> list[int]:
    """Distinct prime divisors of a small positive integer."""
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


# -- tiny helpers on int-coded polynomials over the prime subfield F_p0,
#    used only while bootstrapping the extension-field tables.

def _pp_digits(code, p, e):
    return [(code // p**i) % p for i in range(e)]


def _pp_mul_mod(a, b, mod, p):
    """Multiply two digit lists mod the monic digit list `mod`, coefficients mod p."""
    e = len(mod) - 1
    acc = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                acc[i + j] = (acc[i + j] + ai * bj) % p
    for k in range(len(acc) - 1, e - 1, -1):
        c = acc[k]
        if c:
            acc[k] = 0
            for j in range(e):
                acc[k - e + j] = (acc[k - e + j] - c * mod[j]) % p
    return acc[:e] + [0] * (e - len(acc))


def _pp_is_irreducible(digits, p):
    """Trial-division irreducibility for a monic digit list over F_p."""
    d = len(digits) - 1
    if d <= 1:
        return d == 1
    for code in range(p, p ** ((d // 2) + 1)):
        div = _pp_digits(code, p, (d // 2) + 1)
        while div and div[-1] == 0:
            div.pop()
        if len(div) < 2 or div[-1] != 1:
            continue
        rem = list(digits)
        while len(rem) >= len(div):
            c = rem[-1]
            if c:
                for j in range(len(div)):
                    rem[len(rem) - len(div) + j] = (rem[len(rem) - len(div) + j] - c * div[j]) % p
            rem.pop()
        if not any(rem):
            return False
    return True


class FqContext:
    """Arithmetic context for F_q, q an odd prime power."""

    def __init__(self, q: int):
        p0, e = _factor_prime_power(q)
        if p0 == 2:
            raise ValueError("characteristic 2 is unsupported; q must be odd")
        self.q = q
        self.p0 = p0
        self.e = e
        if e > 1:
            self.modulus_digits = self._find_modulus()
        else:
            self.modulus_digits = None
        self._build_log_tables()
        self._add_t = None
        self._mul_t = None
        self._neg_t = None
        self._inv_t = None

    def _find_modulus(self):
        """Smallest-code monic irreducible of degree e over F_p0."""
        p, e = self.p0, self.e
        for code in range(p**e, 2 * p**e):
            digits = _pp_digits(code, p, e + 1)
            if digits[-1] == 1 and _pp_is_irreducible(digits, p):
                return digits
        raise RuntimeError("no irreducible modulus found")  # unreachable

    def _raw_mul(self, a: int, b: int) -> int:
        p, e = self.p0, self.e
        if e == 1:
            return (a * b) % p
        da = _pp_digits(a, p, e)
        db = _pp_digits(b, p, e)
        dc = _pp_mul_mod(da, db, self.modulus_digits, p)
        return sum(c * p**i for i, c in enumerate(dc))

    def _build_log_tables(self):
        q = self.q
        # generator: smallest code whose order is exactly q-1
        order_primes = _int_factor(q - 1)
        gen = None
        for cand in range(2, q):
            ok = True
            for r in order_primes:
                acc, base, n = 1, cand, (q - 1) // r
                while n:
                    if n & 1:
                        acc = self._raw_mul(acc, base)
                    base = self._raw_mul(base, base)
                    n >>= 1
                if acc == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        if gen is None:
            raise RuntimeError("no generator found")  # unreachable for prime-power q
        self.generator = gen
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, gen)
        if x != 1:
            raise RuntimeError("generator order mismatch")
        self.exp_table = exp
        self.log_table = log

    # -- scalar operations on int codes

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.q
        p, e = self.p0, self.e
        c = 0
        for i in range(e):
            c += (((a // p**i) + (b // p**i)) % p) * p**i
        return c

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.q
        p, e = self.p0, self.e
        c = 0
        for i in range(e):
            c += ((-(a // p**i)) % p) * p**i
        return c

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return (a * b) % self.q
        return int(self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return int(self.exp_table[(-self.log_table[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        return int(self.exp_table[(int(self.log_table[a]) * n) % (self.q - 1)])

    def is_square(self, a: int) -> bool:
        return a == 0 or int(self.log_table[a]) % 2 == 0

    def sqrt(self, a: int) -> int:
        """A square root of a square element."""
        if a == 0:
            return 0
        j = int(self.log_table[a])
        if j % 2:
            raise ValueError(f"{a} is not a square in F_{self.q}")
        return int(self.exp_table[j // 2])

    def embed_int(self, m: int) -> int:
        """The image of the rational integer m in F_q."""
        return m % self.p0

    @property
    def canonical_nonsquare(self) -> int:
        """Smallest-code nonsquare unit, used to canonicalise discriminant signs."""
        for a in range(2, self.q):
            if not self.is_square(a):
                return a
        raise RuntimeError("q odd implies a nonsquare exists")

    def units(self):
        return range(1, self.q)

    # -- dense operation tables for the array kernels

    def _ensure_tables(self):
        if self._add_t is not None:
            return
        q = self.q
        if q > KERNEL_TABLE_MAX_Q:
            raise ValueError(f"kernel tables limited to q <= {KERNEL_TABLE_MAX_Q}, got q = {q}")
        add_t = np.zeros((q, q), dtype=np.int16)
        mul_t = np.zeros((q, q), dtype=np.int16)
        for a in range(q):
            for b in range(q):
                add_t[a, b] = self.add(a, b)
                mul_t[a, b] = self.mul(a, b)
        neg_t = np.array([self.neg(a) for a in range(q)], dtype=np.int16)
        inv_t = np.zeros(q, dtype=np.int16)
        for a in range(1, q):
            inv_t[a] = self.inv(a)
        self._add_t, self._mul_t, self._neg_t, self._inv_t = add_t, mul_t, neg_t, inv_t

    def kernel_tables(self):
        """(add, mul, neg, inv) int16 tables consumed by both kernel backends."""
        self._ensure_tables()
        return self._add_t, self._mul_t, self._neg_t, self._inv_t

    # -- text format for scalars

    def format_scalar(self, a: int) -> str:
        if not 0 <= a < self.q:
            raise ValueError(f"scalar code {a} out of range for q = {self.q}")
        if self.e == 1:
            return str(a)
        if a == 0:
            return "0"
        j = int(self.log_table[a])
        if j == 0:
            return "1"
        if j == 1:
            return "g"
        return f"g^{j}"

    def parse_scalar(self, text: str) -> int:
        t = text.strip()
        if t.startswith("g"):
            if self.e == 1:
                raise ValueError("generator notation g^j is only for extension fields")
            j = 1 if t == "g" else int(t[2:]) if t.startswith("g^") else None
            if j is None:
                raise ValueError(f"bad scalar {text!r}")
            return int(self.exp_table[j % (self.q - 1)])
        neg = t.startswith("-")
        if neg:
            t = t[1:]
        v = int(t)
        if self.e == 1:
            v %= self.q
        elif not 0 <= v < self.q:
            raise ValueError(f"scalar code {v} out of range for q = {self.q}")
        return self.neg(v) if neg else v

    def __repr__(self):
        return f"FqContext(q={self.q})"


@lru_cache(maxsize=None)
def GF(q: int) -> FqContext:
    """Shared context for F_q; contexts are immutable and thread-safe."""
    return FqContext(q)
