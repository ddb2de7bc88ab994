"""The twisted polynomial ring F_p{tau} with tau * a = a^q * tau.

Coefficients are ResidueField codes, little-endian in tau.  Only the exact
object arithmetic lives here; batch charpoly solving is in the kernels.
"""

from __future__ import annotations

from .residue import ResidueField


class TwistedPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: ResidueField, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field) -> "TwistedPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field) -> "TwistedPoly":
        return cls(field, (1,))

    @classmethod
    def scalar(cls, field, c: int) -> "TwistedPoly":
        return cls(field, (c,))

    @classmethod
    def tau_power(cls, field, k: int) -> "TwistedPoly":
        return cls(field, (0,) * k + (1,))

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "TwistedPoly"):
        if self.field is not other.field:
            raise ValueError("twisted polynomials over different residue fields")

    def __eq__(self, other):
        return (
            isinstance(other, TwistedPoly)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __add__(self, other: "TwistedPoly") -> "TwistedPoly":
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return TwistedPoly(F, out)

    def __neg__(self) -> "TwistedPoly":
        F = self.field
        return TwistedPoly(F, (F.neg(c) for c in self.coeffs))

    def __sub__(self, other: "TwistedPoly") -> "TwistedPoly":
        return self + (-other)

    def __mul__(self, other: "TwistedPoly") -> "TwistedPoly":
        """(a tau^i)(b tau^j) = a * b^(q^i) tau^(i+j)."""
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return TwistedPoly.zero(F)
        out = [0] * (len(a) + len(b) - 1)
        btw = list(b)  # b twisted by frob^i, updated as i advances
        for i, ai in enumerate(a):
            if i > 0:
                btw = [F.frobenius(c) for c in btw]
            if ai:
                for j, bj in enumerate(btw):
                    if bj:
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return TwistedPoly(F, out)

    def scale(self, c: int) -> "TwistedPoly":
        """Left multiplication by the scalar c (no twist)."""
        F = self.field
        return TwistedPoly(F, (F.mul(c, a) for a in self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"[{c}]t^{i}")
        return "TwistedPoly(" + (" + ".join(terms) if terms else "0") + ")"
