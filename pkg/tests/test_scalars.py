from fractions import Fraction

import pytest

from sourcerec import QI, ToleranceProfile, format_exact, parse_exact
from sourcerec.scalars import abs_mag, conj, scalar_is_zero


def test_parse_exact_roundtrip():
    assert parse_exact("3/7") == Fraction(3, 7)
    assert parse_exact("-2/5") == Fraction(-2, 5)
    assert parse_exact(4) == Fraction(4)
    assert format_exact(Fraction(3, 7)) == "3/7"
    assert format_exact(Fraction(-4)) == "-4/1"
    assert parse_exact(format_exact(Fraction(22, 6))) == Fraction(11, 3)


def test_parse_exact_rejects_garbage():
    with pytest.raises(ValueError):
        parse_exact("one half")
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_exact("1/0")


def test_qi_field_arithmetic():
    i = QI(0, 1)
    a = QI(Fraction(1, 2), Fraction(3))
    assert i * i == QI(-1)
    assert a + a == QI(1, 6)
    assert (a * a) / a == a
    assert a - a == QI(0)
    assert 1 / i == QI(0, -1)
    assert conj(a) == QI(Fraction(1, 2), Fraction(-3))
    assert a * conj(a) == QI(Fraction(1, 4) + 9)


def test_qi_coerces_rationals():
    a = QI(2) + Fraction(1, 2)
    assert a == QI(Fraction(5, 2))
    assert Fraction(1, 2) * QI(0, 2) == QI(0, 1)


def test_conj_on_floats_and_complex():
    assert conj(2.5) == 2.5
    assert conj(1 + 2j) == 1 - 2j


def test_tolerance_profile_validation():
    ToleranceProfile(rank_threshold=1e-7, equality_threshold=1e-9)
    with pytest.raises(ValueError):
        ToleranceProfile(rank_threshold=1e-3, equality_threshold=1e-9)
    with pytest.raises(ValueError):
        ToleranceProfile(rank_threshold=0.0, equality_threshold=1e-9)


def test_scalar_is_zero_modes():
    assert scalar_is_zero(Fraction(0))
    assert not scalar_is_zero(Fraction(1, 10**12))
    tol = ToleranceProfile(rank_threshold=1e-9, equality_threshold=1e-9)
    assert scalar_is_zero(1e-12, tol)
    assert not scalar_is_zero(1e-6, tol)


def test_abs_mag():
    assert abs_mag(QI(3, 4)) == pytest.approx(5.0)
    assert abs_mag(Fraction(-7, 2)) == pytest.approx(3.5)
