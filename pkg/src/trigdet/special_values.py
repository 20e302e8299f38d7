"""Gauss sums, generalized Bernoulli numbers, L(1, chi) and relative class numbers.

Two independent routes to L(1, chi) for odd chi are provided:

* ``cot-sum``: (pi / 2n) * sum_{j in U_n} chi(j) cot(j pi / n);
* ``euler-primitive``: the closed form pi i tau(chi*) B_{1, conj chi*} / f for the
  primitive core, times the Euler factors at primes dividing n but not f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .arith import factorize, euler_phi, is_prime, multiplicative_order, residue_systems
from .dirichlet import DirichletCharacter, UnityValue, evaluate, odd_characters
from .numerics import (
    PrecisionError,
    cot_pi,
    csc_pi,
    real_part_checked,
    tan_pi,
    unity_to_complex,
    working_precision,
)

CLASS_NUMBER_ROUNDING_TOL = mp.mpf("1e-10")


@dataclass(frozen=True)
class ClassNumberData:
    n: int
    h_minus: int
    Q: int
    w: int
    conductor_product: int
    l_product: object  # mpf, prod of L(1, chi*) over odd chi
    precision_bits: int
    rounding_residual: object


def _require_odd(chi: DirichletCharacter):
    if not chi.is_odd:
        raise ValueError(f"{chi.label} is not an odd character")


def gauss_sum(chi: DirichletCharacter, l: int = 1, precision: int = 128):
    """G(l, chi) = sum_{j=1}^{n} chi(j) exp(2 pi i l j / n)."""
    n = chi.modulus
    with working_precision(precision):
        terms = []
        for j in range(1, n + 1):
            v = evaluate(chi, j)
            if not v.is_zero:
                terms.append(unity_to_complex(v * UnityValue(Fraction(l * j, n))))
        return +mp.fsum(terms)


def bernoulli_b1(chi: DirichletCharacter, precision: int = 128):
    """B_{1, chi} = (1/f) sum_{a=1}^{f} a chi*(a) on the primitive core."""
    if chi.is_principal:
        raise ValueError("B_1 is not used for the principal character")
    star = chi.primitive
    f = star.modulus
    with working_precision(precision):
        return mp.fsum(a * unity_to_complex(evaluate(star, a)) for a in range(1, f + 1)) / f


def _kernel_sum(chi, precision, kernel, scale):
    n = chi.modulus
    with working_precision(precision):
        return mp.fsum(
            unity_to_complex(evaluate(chi, j)) * kernel(scale * j, n)
            for j in residue_systems(n).U
        )


def cot_character_sum(chi: DirichletCharacter, precision: int = 128):
    _require_odd(chi)
    return _kernel_sum(chi, precision, cot_pi, 1)


def tan_character_sum(chi: DirichletCharacter, precision: int = 128):
    _require_odd(chi)
    if chi.modulus % 2 == 0:
        raise ValueError("tangent sums need an odd modulus")
    return _kernel_sum(chi, precision, tan_pi, 1)


def csc_character_sum(chi: DirichletCharacter, precision: int = 128):
    _require_odd(chi)
    if chi.modulus % 2 == 0:
        raise ValueError("cosecant sums need an odd modulus")
    return _kernel_sum(chi, precision, csc_pi, 2)


def euler_factor_product(chi: DirichletCharacter, precision: int = 128):
    """prod over p | modulus, p not dividing f_chi, of (1 - chi*(p)/p)."""
    if chi.is_principal:
        raise ValueError("Euler factors are only used for non-principal characters")
    star = chi.primitive
    with working_precision(precision):
        result = mp.mpc(1)
        for p in factorize(chi.modulus).primes:
            if star.modulus % p:
                result *= 1 - unity_to_complex(evaluate(star, p)) / p
        return result


def primitive_L1(star: DirichletCharacter, precision: int = 128):
    """L(1, chi) for an odd primitive chi via pi i tau(chi) B_{1, conj chi} / f."""
    _require_odd(star)
    if not star.is_primitive:
        raise ValueError(f"{star.label} is not primitive")
    with working_precision(precision):
        tau = gauss_sum(star, 1, precision)
        b1 = bernoulli_b1(star.conjugate(), precision)
        return mp.pi * mp.j * tau * b1 / star.modulus


def L1(chi: DirichletCharacter, precision: int = 128, route: str = "euler-primitive"):
    if chi.is_principal:
        raise ValueError("L(1, chi) diverges for the principal character")
    _require_odd(chi)
    if route == "cot-sum":
        s = cot_character_sum(chi, precision)
        with working_precision(precision):
            return mp.pi * s / (2 * chi.modulus)
    if route == "euler-primitive":
        core = primitive_L1(chi.primitive, precision)
        with working_precision(precision):
            return core * euler_factor_product(chi, precision)
    raise ValueError(f"unknown route {route!r}")


def one_minus_chi2_product(p: int) -> int:
    """prod over odd chi mod p of (1 - chi(2)), in closed form."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    ell = multiplicative_order(2, p)
    return 2 ** ((p - 1) // ell) if ell % 2 == 0 else 0


def unit_index(n: int) -> int:
    return 1 if factorize(n).is_prime_power() else 2


def roots_of_unity_count(n: int) -> int:
    return 2 * n if n % 2 else n


def relative_class_number(n: int, precision: int = 192) -> ClassNumberData:
    """h_n^- of Q(zeta_n) from the product of -B_{1, chi*}/2 over odd chi mod n."""
    if n < 3 or n % 4 == 2:
        raise ValueError(f"relative class number needs n >= 3, n != 2 mod 4; got {n}")
    chars = odd_characters(n)
    Q, w = unit_index(n), roots_of_unity_count(n)
    with working_precision(precision):
        value = Q * w * mp.fprod(-bernoulli_b1(chi, precision) / 2 for chi in chars)
        value = real_part_checked(value)
        h = int(mp.nint(value))
        residual = abs(value - h)
        if h < 1 or residual >= CLASS_NUMBER_ROUNDING_TOL * max(1, abs(value)):
            raise PrecisionError(
                f"h^-_{n} does not round cleanly at {precision} bits (value {mp.nstr(value, 15)})"
            )
        fprod = 1
        for chi in chars:
            fprod *= chi.conductor
        # route independent of B_1: cotangent sums on the primitive cores
        l_product = real_part_checked(
            mp.fprod(L1(chi.primitive, precision, "cot-sum") for chi in chars)
        )
        expected = (2 * mp.pi) ** (euler_phi(n) // 2) * h / (Q * w * mp.sqrt(fprod))
        if abs(l_product - expected) > mp.ldexp(abs(expected), -precision // 2):
            raise PrecisionError(f"L-value product for n={n} disagrees with the class number formula")
        return ClassNumberData(n, h, Q, w, fprod, +l_product, precision, +residual)
