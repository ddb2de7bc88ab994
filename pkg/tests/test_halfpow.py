from fractions import Fraction

import pytest

from drinfeld_avg.halfpow import HalfPower, fraction_to_decimal


def test_normalization_folds_even_powers():
    v = HalfPower(3, Fraction(1, 2), 4)
    assert v.half == 0 and v.frac == Fraction(9, 2)
    w = HalfPower(3, Fraction(1, 2), -1)  # 1/(2 sqrt 3) = sqrt(3)/6
    assert w.half == 1 and w.frac == Fraction(1, 6)


def test_square_q_collapses():
    v = HalfPower(9, Fraction(1, 8), 1)
    assert v.half == 0 and v.frac == Fraction(3, 8)


def test_arithmetic():
    a = HalfPower(3, Fraction(1, 2), 1)
    b = HalfPower(3, Fraction(2), 1)
    assert (a * b).as_fraction() == 3  # (1/2)(2) sqrt3^2
    assert (a / b).as_fraction() == Fraction(1, 4)
    assert (a + a) == HalfPower(3, Fraction(1), 1)
    assert (a - a).frac == 0
    assert (2 * a) == HalfPower(3, Fraction(1), 1)


def test_add_requires_matching_parity():
    a = HalfPower(3, Fraction(1), 1)
    with pytest.raises(ValueError):
        a + Fraction(1)
    # zero is fine on either side
    assert (a + HalfPower(3, 0, 0)) == a


def test_as_fraction_guards():
    with pytest.raises(ValueError):
        HalfPower(3, Fraction(1), 1).as_fraction()


def test_comparisons_exact():
    s3 = HalfPower(3, Fraction(1), 1)
    assert HalfPower(3, Fraction(17, 10), 0) < s3 < HalfPower(3, Fraction(18, 10), 0)
    assert s3 > 0 and -s3 < 0
    assert s3 * s3 == 3
    # 2 sqrt(3) vs 7/2: 12 vs 49/4
    assert HalfPower(3, 2, 1) < Fraction(7, 2)
    assert -HalfPower(3, 2, 1) > Fraction(-7, 2)
    assert HalfPower(5, Fraction(1), 1) >= HalfPower(5, Fraction(1), 1)


def test_mixed_q_rejected():
    with pytest.raises(ValueError):
        HalfPower(3, 1, 1) * HalfPower(5, 1, 1)


def test_decimal_rendering():
    assert fraction_to_decimal(Fraction(1, 8), 6) == "0.125000"
    assert fraction_to_decimal(Fraction(-1, 3), 4) == "-0.3333"
    assert HalfPower(3, Fraction(1), 1).to_decimal(8) == "1.73205081"
    assert HalfPower(3, Fraction(1), 0).to_decimal(4) == "1.0000"


def test_json_fields():
    j = HalfPower(3, Fraction(-3, 4), 1).to_json()
    assert j == {"num": "-3", "den": "4", "half_power": 1}
