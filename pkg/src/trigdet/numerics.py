"""High-precision helpers on top of mpmath.

All trigonometric arguments in this package are rational multiples of pi, so
every evaluation goes through :func:`sincos_pi`, which reduces the rational
argument exactly in integers before touching floating point.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import mp

from .dirichlet import UnityValue

GUARD_BITS = 32
MIN_PRECISION = 64


class PrecisionError(ArithmeticError):
    """A result could not be certified at the requested working precision."""


@contextmanager
def working_precision(bits: int):
    if bits < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits, got {bits}")
    with mp.workprec(bits + GUARD_BITS):
        yield


def sincos_pi(num: int, den: int):
    """(sin, cos) of num*pi/den at the current precision.

    The reduction to an angle in [0, pi/4] happens on integers; exact zeros and
    ones come out exact.
    """
    if den <= 0:
        raise ValueError("denominator must be positive")
    # angle = (quadrant * pi/2) + rem * pi / (2 den), 0 <= rem < den
    r = num % (2 * den)
    quadrant, rem = divmod(2 * r, den)
    if rem == 0:
        s, c = mp.zero, mp.one
    elif 2 * rem <= den:
        theta = mp.pi * rem / (2 * den)
        s, c = mp.sin(theta), mp.cos(theta)
    else:
        theta = mp.pi * (den - rem) / (2 * den)
        c, s = mp.sin(theta), mp.cos(theta)
    for _ in range(quadrant):
        s, c = c, -s
    return s, c


def sin_pi(num: int, den: int):
    return sincos_pi(num, den)[0]


def cos_pi(num: int, den: int):
    return sincos_pi(num, den)[1]


def cot_pi(num: int, den: int):
    s, c = sincos_pi(num, den)
    if not s:
        raise ZeroDivisionError(f"cot pole at {num}*pi/{den}")
    return c / s


def tan_pi(num: int, den: int):
    s, c = sincos_pi(num, den)
    if not c:
        raise ZeroDivisionError(f"tan pole at {num}*pi/{den}")
    return s / c


def csc_pi(num: int, den: int):
    s = sin_pi(num, den)
    if not s:
        raise ZeroDivisionError(f"csc pole at {num}*pi/{den}")
    return 1 / s


def unity_to_complex(u: UnityValue):
    """exp(2 pi i frac) as an mpc at the current precision."""
    if u.is_zero:
        return mp.mpc(0)
    s, c = sincos_pi(2 * u.numerator, u.denominator)
    return mp.mpc(c, s)


def real_part_checked(z, rel_tol=None):
    """Real part of z, after checking the imaginary part is noise."""
    z = mp.mpc(z)
    if rel_tol is None:
        rel_tol = mp.ldexp(1, -mp.prec // 2)
    if abs(z.imag) > rel_tol * max(abs(z.real), 1):
        raise PrecisionError(f"expected a real value, imaginary part is {mpmath.nstr(z.imag, 5)}")
    return z.real


def _exact_mpf(x, digits: int):
    # mpf values are printed as they are; converting them would round to mp.prec
    if isinstance(x, mpmath.mpf):
        return x
    with mp.workprec(max(mp.prec, 4 * digits + 16)):
        if isinstance(x, Fraction):
            return mp.mpf(x.numerator) / x.denominator
        return mp.mpf(x)


def to_decimal_string(x, digits: int = 40) -> str:
    """Scientific-notation decimal string with ``digits`` significant digits."""
    x = _exact_mpf(x, digits)
    if not x:
        return "0"
    return mpmath.nstr(x, digits, strip_zeros=False, min_fixed=1, max_fixed=0)


def short_string(x, digits: int = 6) -> str:
    return to_decimal_string(x, digits)
