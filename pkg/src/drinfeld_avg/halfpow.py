"""Exact carrier for rational multiples of sqrt(q)^k.

Quantities like the infinite-place factor for odd x and the main term
q^(x/2)/x are rational only up to a half power of q.  HalfPower keeps the
value as frac * q^(half/2) with half normalised to 0 or 1 (and folded away
entirely when q is a perfect square), so every comparison stays exact.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction

# Exact truncated Euler products run to hundreds of thousands of digits;
# lift the int-to-str conversion guard (meant for untrusted parsing) so the
# exact num/den fields can be serialised.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), 2_000_000))


def fraction_to_decimal(f: Fraction, digits: int = 12) -> str:
    """Round-half-up decimal rendering of an exact rational."""
    scale = 10**digits
    v = (abs(f.numerator) * scale * 2 + f.denominator) // (2 * f.denominator)
    ip, fp = divmod(v, scale)
    sign = "-" if f.numerator < 0 else ""
    return f"{sign}{ip}.{fp:0{digits}d}"


class HalfPower:
    __slots__ = ("q", "frac", "half")

    def __init__(self, q: int, frac, half: int = 0):
        frac = Fraction(frac)
        k, r = divmod(half, 2)
        if k:
            frac *= Fraction(q) ** k
        s = math.isqrt(q)
        if r and s * s == q:
            frac *= s
            r = 0
        self.q = q
        self.frac = frac
        self.half = r

    @property
    def is_rational(self) -> bool:
        return self.half == 0

    def as_fraction(self) -> Fraction:
        if self.half:
            raise ValueError(f"{self} carries an odd power of sqrt(q)")
        return self.frac

    def _coerce(self, other):
        if isinstance(other, HalfPower):
            if other.q != self.q:
                raise ValueError("mixed q in HalfPower arithmetic")
            return other
        return HalfPower(self.q, other, 0)

    def __mul__(self, other):
        o = self._coerce(other)
        return HalfPower(self.q, self.frac * o.frac, self.half + o.half)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.frac == 0:
            raise ZeroDivisionError
        # 1/sqrt(q) = sqrt(q)/q
        return HalfPower(self.q, self.frac / o.frac, self.half - o.half)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __add__(self, other):
        o = self._coerce(other)
        if self.frac == 0:
            return o
        if o.frac == 0:
            return self
        if self.half != o.half:
            raise ValueError("cannot add values with different sqrt(q) parity exactly")
        return HalfPower(self.q, self.frac + o.frac, self.half)

    __radd__ = __add__

    def __neg__(self):
        return HalfPower(self.q, -self.frac, self.half)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _cmp(self, other) -> int:
        """Sign of self - other, decided exactly."""
        o = self._coerce(other)
        a, b = self.frac, o.frac
        if self.half == o.half:
            return (a > b) - (a < b)
        # exactly one side carries sqrt(q); put it on the left
        flip = 1
        if self.half == 0:
            a, b = b, a
            flip = -1
        # compare a*sqrt(q) with b
        if a >= 0 and b < 0:
            return flip
        if a <= 0 and b > 0:
            return -flip
        if a == 0 and b == 0:
            return 0
        lhs, rhs = a * a * self.q, b * b
        if a < 0:
            sign = -((lhs > rhs) - (lhs < rhs))
        else:
            sign = (lhs > rhs) - (lhs < rhs)
        return flip * sign

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash((self.q, self.frac, self.half))

    def to_decimal(self, digits: int = 12) -> str:
        """Decimal rendering (the exact value is the num/den/half_power triple)."""
        if not self.half:
            return fraction_to_decimal(self.frac, digits)
        # multiply by sqrt(q) via isqrt at extended precision
        root = math.isqrt(self.q * 10 ** (2 * digits + 8))
        return fraction_to_decimal(self.frac * Fraction(root, 10 ** (digits + 4)), digits)

    def to_json(self) -> dict:
        return {
            "num": str(self.frac.numerator),
            "den": str(self.frac.denominator),
            "half_power": self.half,
        }

    def __repr__(self):
        if self.half == 0:
            return f"HalfPower({self.frac})"
        return f"HalfPower({self.frac} * sqrt({self.q}))"
