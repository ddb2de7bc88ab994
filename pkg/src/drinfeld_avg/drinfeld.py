"""Rank-2 finite Drinfeld modules: Frobenius characteristic polynomials and
isomorphism classification.

A module phi(gamma, delta) over F_p sends T to T^ + gamma tau + delta tau^2.
Its Frobenius tau^x (x = deg p) satisfies a unique quadratic

    tau^(2x) - phi_a tau^x + u phi_p = 0,  deg a <= x/2, u in F_q^*,

and the pair (a, u) is computed by solving the F_q-linear system obtained by
matching tau-coefficients in coordinates.  The exhaustive search over all
candidate pairs is kept as the independent oracle, and the identity itself
can be re-verified with plain twisted arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .backend import kernels
from .poly import Poly
from .residue import ResidueField
from .twisted import TwistedPoly

ISO_ENUM_MAX_PAIRS = 1 << 22


class FiniteDrinfeldModule(NamedTuple):
    field: ResidueField
    gamma: int
    delta: int

    def validate(self) -> "FiniteDrinfeldModule":
        if self.delta == 0:
            raise ValueError("delta must be nonzero for a rank-2 module")
        return self

    @property
    def phi_T(self) -> TwistedPoly:
        return TwistedPoly(self.field, (self.field.tcode, self.gamma, self.delta))


@dataclass(frozen=True)
class CharPolyFrob:
    """The Frobenius characteristic polynomial X^2 - a X + u p."""

    a: Poly
    u: int  # F_q code, nonzero

    def key(self) -> tuple[int, int]:
        return (self.a.code, self.u)


def phi_image(M: FiniteDrinfeldModule, n: Poly) -> TwistedPoly:
    """The image phi_n, by Horner evaluation in F_p{tau} (F_q is central)."""
    F = M.field
    acc = TwistedPoly.zero(F)
    pt = M.phi_T
    for c in reversed(n.coeffs):
        acc = acc * pt + TwistedPoly.scalar(F, F.embed_scalar(c))
    return acc


def _kernel_inputs(F: ResidueField):
    ctx = F.ctx
    add_t, mul_t, neg_t, inv_t = ctx.kernel_tables()
    fp_mul = F.ensure_mul_table()
    frob = F.frob_pow_table(2 * F.x)
    p_fq = np.zeros(F.x + 1, np.int16)
    for i, c in enumerate(F.p.coeffs):
        p_fq[i] = c
    return add_t, mul_t, neg_t, inv_t, ctx.q, F.x, F.x // 2, F.tcode, p_fq, fp_mul, frob


def charpoly_batch(F: ResidueField, gammas, deltas) -> tuple[np.ndarray, np.ndarray]:
    """(a codes, u codes) for many modules at once; raises if any system is
    singular or inconsistent, which would mean a bug, not bad input."""
    args = _kernel_inputs(F)
    g = np.ascontiguousarray(gammas, np.int64)
    d = np.ascontiguousarray(deltas, np.int64)
    a_codes, u_codes, status = kernels().charpoly_batch(*args, g, d)
    if status.any():
        bad = int(np.flatnonzero(status)[0])
        raise RuntimeError(
            f"charpoly system not uniquely solvable for (gamma, delta) = "
            f"({int(g[bad])}, {int(d[bad])}) over p = {F.p} (status {int(status[bad])})")
    return a_codes, u_codes


def frobenius_charpoly(M: FiniteDrinfeldModule) -> CharPolyFrob:
    M.validate()
    a_codes, u_codes = charpoly_batch(M.field, [M.gamma], [M.delta])
    return CharPolyFrob(Poly.from_code(M.field.ctx, int(a_codes[0])), int(u_codes[0]))


def verify_frobenius_identity(M: FiniteDrinfeldModule, a: Poly, u: int) -> bool:
    """Check tau^(2x) - phi_a tau^x + u phi_p = 0 by twisted arithmetic."""
    F = M.field
    x = F.x
    lhs = TwistedPoly.tau_power(F, 2 * x)
    lhs = lhs - phi_image(M, a) * TwistedPoly.tau_power(F, x)
    lhs = lhs + phi_image(M, F.p).scale(F.embed_scalar(u))
    return lhs.is_zero


def charpoly_by_search(M: FiniteDrinfeldModule) -> CharPolyFrob:
    """Brute-force oracle: try every (a, u) with deg a <= x/2, u != 0."""
    M.validate()
    F = M.field
    ctx = F.ctx
    found = None
    for acode in range(ctx.q ** (F.x // 2 + 1)):
        a = Poly.from_code(ctx, acode)
        for u in ctx.units():
            if verify_frobenius_identity(M, a, u):
                if found is not None:
                    raise RuntimeError(f"charpoly not unique for {M}")
                found = CharPolyFrob(a, u)
    if found is None:
        raise RuntimeError(f"no charpoly found for {M}")
    return found


# ---------------------------------------------------------------------------
# isomorphism: (alpha, beta) ~ (mu^(q-1) gamma, mu^(q2-1) delta)


def iso_test_via_residues(M1: FiniteDrinfeldModule, M2: FiniteDrinfeldModule) -> bool:
    """Isomorphism test for modules with nonzero gamma: the ratio of gammas
    must be a perfect (q-1)-th power and its (q+1)-th power must match the
    ratio of deltas."""
    if M1.field is not M2.field:
        raise ValueError("modules over different residue fields")
    if 0 in (M1.gamma, M2.gamma, M1.delta, M2.delta):
        raise ValueError("residue test needs all of gamma1, gamma2, delta1, delta2 nonzero")
    F = M1.field
    s = F.mul(M2.gamma, F.inv(M1.gamma))
    if F.power_residue_symbol(s) != 1:
        return False
    return F.pow(s, F.ctx.q + 1) == F.mul(M2.delta, F.inv(M1.delta))


def iso_equivalent(M1: FiniteDrinfeldModule, M2: FiniteDrinfeldModule) -> bool:
    if M1.field is not M2.field:
        raise ValueError("modules over different residue fields")
    M1.validate()
    M2.validate()
    F = M1.field
    if M1.gamma == 0 and M2.gamma == 0:
        # delta class modulo (q^2-1)-th powers
        q = F.ctx.q
        t = (F.size - 1) // math.gcd(q * q - 1, F.size - 1)
        return F.pow(F.mul(M2.delta, F.inv(M1.delta)), t) == 1
    if M1.gamma == 0 or M2.gamma == 0:
        return False
    return iso_test_via_residues(M1, M2)


class IsoClass(NamedTuple):
    gamma: int
    delta: int
    size: int
    charpoly: CharPolyFrob


def _power_cosets(F: ResidueField):
    """s1 = the (q-1)-th powers in F_p^*, s2 their (q+1)-th powers."""
    q = F.ctx.q
    g = F.generator
    n = (F.size - 1) // math.gcd(q - 1, F.size - 1)
    s1 = sorted(F.pow(g, (q - 1) * k) for k in range(n))
    s2 = [F.pow(s, q + 1) for s in s1]
    return np.array(s1, np.int64), np.array(s2, np.int64)


def enumerate_iso_classes(F: ResidueField, max_pairs: int = ISO_ENUM_MAX_PAIRS) -> list[IsoClass]:
    """Partition {(gamma, delta): delta != 0} into isomorphism classes.

    Orbits are generated directly from the mu-action; sizes are counted, not
    assumed.  Representatives are the first pair of each orbit in code order."""
    npairs = F.size * (F.size - 1)
    if npairs > max_pairs:
        raise ValueError(f"{npairs} pairs exceeds the enumeration guard {max_pairs}")
    s1, s2 = _power_cosets(F)
    fp_mul = F.ensure_mul_table()
    rep_g, rep_d, sizes = kernels().orbit_partition(fp_mul, s1, s2, F.size)
    a_codes, u_codes = charpoly_batch(F, rep_g, rep_d)
    out = []
    for i in range(rep_g.shape[0]):
        cp = CharPolyFrob(Poly.from_code(F.ctx, int(a_codes[i])), int(u_codes[i]))
        out.append(IsoClass(int(rep_g[i]), int(rep_d[i]), int(sizes[i]), cp))
    return out


@lru_cache(maxsize=64)
def class_count_by_charpoly(F: ResidueField, max_pairs: int = ISO_ENUM_MAX_PAIRS):
    """{(a code, u code): (number of classes, number of pairs)} over F_p.

    Cached per field; treat the returned dict as read-only."""
    counts: dict[tuple[int, int], list[int]] = {}
    for cls in enumerate_iso_classes(F, max_pairs):
        k = cls.charpoly.key()
        row = counts.setdefault(k, [0, 0])
        row[0] += 1
        row[1] += cls.size
    return {k: (v[0], v[1]) for k, v in counts.items()}
