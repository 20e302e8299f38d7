from fractions import Fraction
from math import gcd

import mpmath
import pytest
from mpmath import mp

from trigdet import special_values as sv
from trigdet.arith import euler_phi, is_prime, moebius
from trigdet.dirichlet import DirichletCharacter, all_characters, evaluate, induce, odd_characters
from trigdet.matrices import Indexing, Kind, TrigMatrixSpec, exact_determinant, integer_matrix
from trigdet.numerics import PrecisionError, unity_to_complex, working_precision
from trigdet.special_values import (
    L1,
    bernoulli_b1,
    cot_character_sum,
    csc_character_sum,
    euler_factor_product,
    gauss_sum,
    one_minus_chi2_product,
    relative_class_number,
    tan_character_sum,
)

PREC = 192
TIGHT = mp.mpf(2) ** (-PREC // 2)

QUAD3 = DirichletCharacter(3, (1,))
QUAD4 = DirichletCharacter(4, (1,))


def close(a, b, tol=TIGHT):
    with working_precision(PREC):
        if isinstance(b, Fraction):
            b = mp.mpf(b.numerator) / b.denominator
        return abs(a - b) <= tol * max(1, abs(b))


def test_gauss_sum_mod3_two_term_oracle():
    with working_precision(PREC):
        oracle = mpmath.expjpi(mp.mpf(2) / 3) - mpmath.expjpi(mp.mpf(4) / 3)
        assert close(gauss_sum(QUAD3, 1, PREC), oracle)
        assert close(oracle, mp.j * mp.sqrt(3))


def test_gauss_sum_vanishes_for_mod9_character_from_mod3():
    chi = induce(QUAD3, 9)
    assert abs(gauss_sum(chi, 1, PREC)) < TIGHT


def test_twisted_gauss_sums_for_primitive_characters():
    for n in range(3, 41):
        for chi in all_characters(n):
            if not chi.is_primitive:
                continue
            tau = gauss_sum(chi, 1, PREC)
            for l in range(1, n):
                if gcd(l, n) == 1:
                    with working_precision(PREC):
                        expected = unity_to_complex(evaluate(chi, l).conjugate()) * tau
                    assert close(gauss_sum(chi, l, PREC), expected)


def test_gauss_sum_modulus_is_sqrt_conductor():
    for n in range(3, 61):
        for chi in all_characters(n):
            if chi.is_primitive:
                with working_precision(PREC):
                    assert close(abs(gauss_sum(chi, 1, PREC)), mp.sqrt(chi.conductor))


def test_gauss_sum_reduces_to_primitive_core():
    for n in range(1, 61):
        for chi in all_characters(n):
            star = chi.primitive
            ratio = n // star.modulus
            with working_precision(PREC):
                expected = moebius(ratio) * unity_to_complex(evaluate(star, ratio)) * gauss_sum(star, 1, PREC)
            assert close(gauss_sum(chi, 1, PREC), expected)


def test_bernoulli_examples():
    assert close(bernoulli_b1(QUAD3, PREC), Fraction(-1, 3))
    assert close(bernoulli_b1(QUAD4, PREC), Fraction(-1, 2))
    for n in (5, 12, 15):
        for chi in all_characters(n):
            if not chi.is_odd and not chi.is_principal:
                assert abs(bernoulli_b1(chi, PREC)) < TIGHT
    with pytest.raises(ValueError):
        bernoulli_b1(DirichletCharacter(5, (0,)))


def test_character_sum_examples_mod3():
    with working_precision(PREC):
        assert close(cot_character_sum(QUAD3, PREC), 2 / mp.sqrt(3))
        assert close(tan_character_sum(QUAD3, PREC), 2 * mp.sqrt(3))
        assert close(csc_character_sum(QUAD3, PREC), 4 / mp.sqrt(3))


def test_character_sums_reject_bad_input():
    even = DirichletCharacter(5, (2,))
    for f in (cot_character_sum, tan_character_sum, csc_character_sum):
        with pytest.raises(ValueError):
            f(even)
    with pytest.raises(ValueError):
        tan_character_sum(QUAD4)
    with pytest.raises(ValueError):
        csc_character_sum(QUAD4)


def test_even_cot_sum_vanishes_by_symmetry():
    from trigdet.arith import residue_systems
    from trigdet.numerics import cot_pi

    chi = DirichletCharacter(5, (2,))
    with working_precision(PREC):
        s = mp.fsum(unity_to_complex(evaluate(chi, j)) * cot_pi(j, 5) for j in residue_systems(5).U)
    assert abs(s) < TIGHT


def test_tan_and_csc_factor_identities():
    for n in range(3, 61, 2):
        for chi in odd_characters(n):
            cot = cot_character_sum(chi, PREC)
            with working_precision(PREC):
                chibar2 = unity_to_complex(evaluate(chi, 2).conjugate())
                assert close(tan_character_sum(chi, PREC), (1 - 2 * chibar2) * cot)
                assert close(csc_character_sum(chi, PREC), (1 - chibar2) * cot)


def test_tan_ratio_mod5():
    for chi in odd_characters(5):
        ratio = tan_character_sum(chi, PREC) / cot_character_sum(chi, PREC)
        assert close(ratio, 1 - 2 * mp.j) or close(ratio, 1 + 2 * mp.j)


def test_csc_sum_vanishes_when_chi2_is_one():
    hits = [chi for chi in odd_characters(7) if evaluate(chi, 2).is_one()]
    assert hits
    assert abs(csc_character_sum(hits[0], PREC)) < TIGHT


def test_L1_classical_value_mod3():
    with working_precision(PREC):
        expected = mp.pi / (3 * mp.sqrt(3))
    assert close(L1(QUAD3, PREC, "cot-sum"), expected)
    assert close(L1(QUAD3, PREC, "euler-primitive"), expected)
    assert mpmath.nstr(expected, 4) == "0.6046"


def _L1_digamma(chi):
    # L(1, chi) = -(1/n) sum_a chi(a) psi(a/n) for non-principal chi mod n
    n = chi.modulus
    with working_precision(PREC):
        return -mp.fsum(
            unity_to_complex(evaluate(chi, a)) * mp.digamma(mp.mpf(a) / n) for a in range(1, n + 1) if gcd(a, n) == 1
        ) / n


@pytest.mark.parametrize("n", [3, 4, 5, 8, 9, 12, 15, 21, 28, 45])
def test_L1_against_digamma_oracle(n):
    for chi in odd_characters(n):
        oracle = _L1_digamma(chi)
        assert close(L1(chi, PREC, "cot-sum"), oracle)
        assert close(L1(chi, PREC, "euler-primitive"), oracle)


def test_L1_routes_agree():
    for n in range(3, 61, 2):
        for chi in odd_characters(n):
            a = L1(chi, PREC, "cot-sum")
            b = L1(chi, PREC, "euler-primitive")
            assert abs(a - b) <= mp.mpf("1e-20") * abs(b)
            assert abs(a - b) <= mp.mpf(2) ** (-PREC / 3) * abs(b)


def test_L1_imprimitive_examples():
    chi9 = induce(QUAD3, 9)
    assert close(L1(chi9, PREC), L1(QUAD3, PREC))
    chi15 = induce(QUAD3, 15)
    with working_precision(PREC):
        assert close(L1(chi15, PREC), L1(QUAD3, PREC) * (1 - mp.mpf(-1) / 5))
    assert close(L1(chi15, PREC, "cot-sum"), L1(chi15, PREC, "euler-primitive"))


def test_L1_rejections():
    with pytest.raises(ValueError):
        L1(DirichletCharacter(5, (0,)))
    with pytest.raises(ValueError):
        L1(DirichletCharacter(5, (2,)), route="cot-sum")
    with pytest.raises(ValueError):
        L1(QUAD3, route="series")


def test_euler_factor_examples():
    assert close(euler_factor_product(DirichletCharacter(5, (1,)), PREC), 1)
    chi15 = induce(QUAD3, 15)
    assert close(euler_factor_product(chi15, PREC), Fraction(6, 5))
    for chi in odd_characters(15):
        if chi.conductor == 5:
            at3 = evaluate(chi.primitive, 3)
            assert at3.frac in (Fraction(1, 4), Fraction(3, 4))
            with working_precision(PREC):
                expected = 1 - unity_to_complex(at3) / 3
                assert close(abs(expected), mp.sqrt(mp.mpf(10)) / 3)
            assert close(euler_factor_product(chi, PREC), expected)


@pytest.mark.parametrize("p, value", [(7, 0), (43, 8), (11, 2), (3, 2), (17, 4)])
def test_one_minus_chi2_examples(p, value):
    assert one_minus_chi2_product(p) == value


def test_one_minus_chi2_against_numeric_product():
    for p in range(3, 200, 2):
        if not is_prime(p):
            continue
        with working_precision(PREC):
            numeric = mp.fprod(1 - unity_to_complex(evaluate(chi, 2)) for chi in odd_characters(p))
        assert close(numeric, one_minus_chi2_product(p), mp.mpf(2) ** -80)
        if p % 8 == 7:
            assert one_minus_chi2_product(p) == 0


def test_one_minus_chi2_rejects():
    for bad in (2, 9, 15):
        with pytest.raises(ValueError):
            one_minus_chi2_product(bad)


def test_class_number_examples():
    d = relative_class_number(5)
    assert (d.h_minus, d.Q, d.w, d.conductor_product) == (1, 1, 10, 25)
    assert relative_class_number(23, 256).h_minus == 3
    d43 = relative_class_number(43, 344)
    assert d43.h_minus == 211 and 4 * d43.h_minus == 844


def test_class_number_one_for_small_primes():
    for p in (3, 5, 7, 11, 13, 17, 19):
        assert relative_class_number(p).h_minus == 1


def test_class_number_against_maillet_determinant():
    # |D_p| = p^((p-3)/2) h_p^-: an exact-integer route with no B_1 in it
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43):
        D = exact_determinant(integer_matrix(TrigMatrixSpec(Kind.MAILLET_R, p, Indexing.INVERSE_PRODUCT)))
        h, rem = divmod(abs(D), p ** ((p - 3) // 2))
        assert rem == 0
        assert relative_class_number(p, max(192, 8 * p)).h_minus == h


def test_class_number_one_cyclotomic_fields():
    # the fields Q(zeta_n), n != 2 mod 4, with class number 1 in this range
    for n in (3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 17, 19, 20, 21, 24, 25, 27, 28, 32, 33, 35, 36, 40, 44, 45, 48, 60):
        assert relative_class_number(n, max(192, 8 * n)).h_minus == 1


def test_class_number_data_invariants():
    for n in (7, 12, 15, 16, 20, 39):
        d = relative_class_number(n, 256)
        assert d.Q == (1 if n in (7, 16) else 2)
        assert d.w == (2 * n if n % 2 else n)
        with working_precision(256):
            expected = (2 * mp.pi) ** (euler_phi(n) // 2) * d.h_minus / (d.Q * d.w * mp.sqrt(d.conductor_product))
            assert abs(d.l_product - expected) < mp.mpf(2) ** -100 * expected


def test_class_number_rejects_and_precision_error(monkeypatch):
    for bad in (2, 6, 10):
        with pytest.raises(ValueError):
            relative_class_number(bad)
    monkeypatch.setattr(sv, "CLASS_NUMBER_ROUNDING_TOL", mp.mpf(0))
    with pytest.raises(PrecisionError):
        relative_class_number(5)


def test_L_product_is_real_and_positive():
    for n in range(3, 61):
        with working_precision(PREC):
            prod = mp.fprod(L1(chi, PREC) for chi in odd_characters(n))
        assert abs(prod.imag) < TIGHT and prod.real > 0
