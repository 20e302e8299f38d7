"""Determinants of cotangent, tangent, cosecant, sine and Maillet matrices over
reduced residue systems, checked against Dirichlet L-values, Gauss sums and
relative class numbers."""

from .arith import (
    euler_phi,
    factorize,
    group_structure,
    jacobi_symbol,
    least_positive_residue,
    mod_inverse,
    moebius,
    multiplicative_order,
    residue_systems,
)
from .dirichlet import DirichletCharacter, UnityValue, all_characters, conjugate, evaluate, induce, odd_characters, to_primitive
from .matrices import Indexing, Kind, TrigMatrixSpec, build, determinant, epsilon_sign, epsilon_sign_direct, spectral_check
from .special_values import (
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
from .verify import VerificationReport, scan, verify

__version__ = "0.1.0"
