from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from trigdet.dirichlet import UnityValue
from trigdet.numerics import (
    PrecisionError,
    cos_pi,
    cot_pi,
    csc_pi,
    real_part_checked,
    short_string,
    sin_pi,
    sincos_pi,
    tan_pi,
    to_decimal_string,
    unity_to_complex,
    working_precision,
)

PREC = 256


@settings(max_examples=300, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(1, 500))
def test_sincos_against_direct_evaluation(num, den):
    with working_precision(PREC):
        s, c = sincos_pi(num, den)
        with mp.workprec(PREC + 200):
            x = mp.pi * num / den
            es, ec = mp.sin(x), mp.cos(x)
        assert abs(s - es) < mp.mpf(2) ** (-PREC + 2)
        assert abs(c - ec) < mp.mpf(2) ** (-PREC + 2)


def test_exact_special_angles():
    with working_precision(PREC):
        assert sincos_pi(0, 7) == (0, 1)
        assert sincos_pi(7, 7) == (0, -1)
        assert sincos_pi(1, 2) == (1, 0)
        assert sincos_pi(-1, 2) == (-1, 0)
        assert sincos_pi(3, 2) == (-1, 0)
        assert sincos_pi(10**30, 1) == (0, 1)


def test_values_at_pi_over_3():
    with working_precision(PREC):
        r3 = mp.sqrt(3)
        assert abs(sin_pi(1, 3) - r3 / 2) < mp.mpf(2) ** -250
        assert abs(cos_pi(2, 3) + mp.mpf(1) / 2) < mp.mpf(2) ** -250
        assert abs(cot_pi(1, 3) - 1 / r3) < mp.mpf(2) ** -250
        assert abs(tan_pi(1, 3) - r3) < mp.mpf(2) ** -250
        assert abs(csc_pi(2, 3) - 2 / r3) < mp.mpf(2) ** -250


def test_poles():
    with working_precision(PREC):
        for f, args in ((cot_pi, (5, 5)), (tan_pi, (1, 2)), (csc_pi, (0, 3))):
            with pytest.raises(ZeroDivisionError):
                f(*args)


def test_working_precision_sets_guard_bits():
    before = mp.prec
    with working_precision(128):
        assert mp.prec == 160
    assert mp.prec == before
    with pytest.raises(ValueError):
        with working_precision(16):
            pass
    with pytest.raises(ValueError):
        sincos_pi(1, 0)


def test_unity_to_complex():
    with working_precision(PREC):
        assert unity_to_complex(UnityValue(Fraction(1, 4))) == mp.mpc(0, 1)
        assert unity_to_complex(UnityValue(None)) == 0
        z = unity_to_complex(UnityValue(Fraction(1, 3)))
        assert abs(z - mpmath.expjpi(mp.mpf(2) / 3)) < mp.mpf(2) ** -250


def test_real_part_checked():
    with working_precision(PREC):
        assert real_part_checked(mp.mpc(2, mp.mpf(2) ** -200)) == 2
        with pytest.raises(PrecisionError):
            real_part_checked(mp.mpc(2, mp.mpf("1e-10")))


def test_decimal_strings():
    assert to_decimal_string(0) == "0"
    assert to_decimal_string(-5) == "-5.000000000000000000000000000000000000000"
    assert to_decimal_string(844) == "8.440000000000000000000000000000000000000e+2"
    assert to_decimal_string(Fraction(1, 3)) == "3." + "3" * 39 + "e-1"
    assert to_decimal_string(10**30 + 1) == "1.000000000000000000000000000001000000000e+30"
    assert short_string(mp.mpf("1.5e-30")) == "1.50000e-30"


def test_decimal_string_keeps_full_precision_outside_context():
    # a 192-bit value formatted after leaving the context must not be rounded to 53 bits
    with working_precision(192):
        x = 1 / mp.sqrt(3)
    assert to_decimal_string(x) == "5.773502691896257645091487805019574556476e-1"
    assert to_decimal_string(x, 30) == "5.77350269189625764509148780502e-1"
