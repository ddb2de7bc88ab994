import random

import pytest

from drinfeld_avg import GF, parse_poly
from drinfeld_avg.residue import residue_field
from drinfeld_avg.twisted import TwistedPoly

K3 = GF(3)
F = residue_field(parse_poly(K3, "T^2+1"))


def rand_tp(rng, deg):
    return TwistedPoly(F, [rng.randrange(F.size) for _ in range(deg + 1)])


def test_commutation_rule():
    # tau * alpha = alpha^q * tau for every alpha
    tau = TwistedPoly.tau_power(F, 1)
    for alpha in range(F.size):
        lhs = tau * TwistedPoly.scalar(F, alpha)
        rhs = TwistedPoly(F, (0, F.frobenius(alpha)))
        assert lhs == rhs


def test_spec_example_tau_times_that():
    # tau * T-hat = (2 T-hat) tau since T-hat^3 = -T-hat
    lhs = TwistedPoly.tau_power(F, 1) * TwistedPoly.scalar(F, F.tcode)
    assert lhs == TwistedPoly(F, (0, F.mul(2, F.tcode)))


def test_tau_times_tau():
    assert TwistedPoly.tau_power(F, 1) * TwistedPoly.tau_power(F, 1) == TwistedPoly.tau_power(F, 2)


def test_scalars_multiply_without_twist():
    for a in range(F.size):
        for b in (0, 1, F.tcode):
            assert TwistedPoly.scalar(F, a) * TwistedPoly.scalar(F, b) == TwistedPoly.scalar(F, F.mul(a, b))


def test_monomial_product_rule():
    rng = random.Random(5)
    for _ in range(40):
        i, j = rng.randrange(4), rng.randrange(4)
        a, b = rng.randrange(1, F.size), rng.randrange(1, F.size)
        lhs = TwistedPoly(F, (0,) * i + (a,)) * TwistedPoly(F, (0,) * j + (b,))
        expect = TwistedPoly(F, (0,) * (i + j) + (F.mul(a, F.frobenius(b, i)),))
        assert lhs == expect


def test_associative_and_distributive_random():
    rng = random.Random(11)
    for _ in range(60):
        f, g, h = rand_tp(rng, 2), rand_tp(rng, 2), rand_tp(rng, 2)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


def test_degree_of_product_adds():
    rng = random.Random(13)
    for _ in range(30):
        f, g = rand_tp(rng, 3), rand_tp(rng, 2)
        if f.is_zero or g.is_zero:
            continue
        assert (f * g).deg == f.deg + g.deg


def test_field_mismatch_rejected():
    F2 = residue_field(parse_poly(K3, "T"))
    with pytest.raises(ValueError):
        TwistedPoly.one(F) * TwistedPoly.one(F2)
