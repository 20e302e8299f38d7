"""Trigonometric and Maillet matrices over S_n, their determinants, and sign bookkeeping."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from mpmath import mp

from .arith import euler_phi, factorize, least_positive_residue, mod_inverse, residue_systems
from .dirichlet import DirichletCharacter, evaluate
from .numerics import cot_pi, csc_pi, sin_pi, tan_pi, unity_to_complex, working_precision
from .special_values import L1, gauss_sum


class Kind(str, enum.Enum):
    COT = "cot"
    TAN = "tan"
    TAN_FULL = "tan-full"
    CSC = "csc"
    SIN = "sin"
    MAILLET_R = "maillet"
    MAILLET_CENTERED = "maillet-centered"


class Indexing(str, enum.Enum):
    PRODUCT = "product"
    INVERSE_PRODUCT = "inverse-product"


_ODD_ONLY = {Kind.TAN, Kind.TAN_FULL, Kind.CSC}


@dataclass(frozen=True)
class TrigMatrixSpec:
    kind: Kind
    n: int
    indexing: Indexing = Indexing.PRODUCT

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "indexing", Indexing(self.indexing))
        if self.n < 3:
            raise ValueError(f"matrices over S_n need n >= 3, got {self.n}")
        if self.kind in _ODD_ONLY and self.n % 2 == 0:
            raise ValueError(f"{self.kind.value} matrices are only defined here for odd n")
        if self.kind is Kind.TAN_FULL and self.indexing is Indexing.INVERSE_PRODUCT:
            raise ValueError("tan-full is indexed by 1..(n-1)/2, which has no inverse indexing")

    @property
    def index_set(self) -> tuple[int, ...]:
        if self.kind is Kind.TAN_FULL:
            return tuple(range(1, (self.n - 1) // 2 + 1))
        return residue_systems(self.n).S

    def column_index(self, k: int) -> int:
        if self.indexing is Indexing.INVERSE_PRODUCT:
            return mod_inverse(k, self.n)
        return k

    def entry(self, j: int, k: int):
        """Entry (j, k); numeric kinds need an active working precision."""
        n, x = self.n, j * self.column_index(k)
        kind = self.kind
        if kind is Kind.COT:
            return cot_pi(x, n)
        if kind in (Kind.TAN, Kind.TAN_FULL):
            return tan_pi(x, n)
        if kind is Kind.CSC:
            return csc_pi(2 * x, n)
        if kind is Kind.SIN:
            return sin_pi(2 * x, n)
        if kind is Kind.MAILLET_R:
            return least_positive_residue(x, n)
        return least_positive_residue(x, n) - Fraction(n, 2)


@dataclass
class DenseMatrix:
    dim: int
    entries: list  # list of rows
    precision_bits: int

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rounded(self, bits: int) -> DenseMatrix:
        with mp.workprec(bits):
            return DenseMatrix(self.dim, [[+mp.mpf(x) for x in row] for row in self.entries], bits)


@dataclass(frozen=True)
class Determinant:
    value: object  # mpf
    error: object  # mpf, dual-precision estimate
    precision_bits: int

    def is_zero(self, factor: int = 10) -> bool:
        return abs(self.value) <= factor * self.error


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def build(spec: TrigMatrixSpec, precision: int = 128) -> DenseMatrix:
    idx = spec.index_set
    with working_precision(precision):
        rows = [[_to_mpf(spec.entry(j, k)) for k in idx] for j in idx]
    return DenseMatrix(len(idx), rows, precision)


def integer_matrix(spec: TrigMatrixSpec) -> list[list]:
    """Exact entries for the Maillet kinds (ints, or Fractions for the centred one)."""
    if spec.kind not in (Kind.MAILLET_R, Kind.MAILLET_CENTERED):
        raise ValueError(f"{spec.kind.value} entries are not rational")
    idx = spec.index_set
    return [[spec.entry(j, k) for k in idx] for j in idx]


def _lu_determinant(rows, bits: int):
    with mp.workprec(bits):
        a = [[+mp.mpf(x) for x in row] for row in rows]
        n = len(a)
        det = mp.one
        for col in range(n):
            pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
            if not a[pivot][col]:
                return mp.zero
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            p = a[col][col]
            det *= p
            for r in range(col + 1, n):
                factor = a[r][col] / p
                if factor:
                    row_r, row_c = a[r], a[col]
                    for c in range(col + 1, n):
                        row_r[c] -= factor * row_c[c]
        return det


def _hadamard_bound(rows, bits: int):
    with mp.workprec(bits):
        return mp.fprod(mp.sqrt(mp.fsum(x * x for x in row)) for row in rows)


def determinant(M: DenseMatrix) -> Determinant:
    """LU with partial pivoting; error estimated by redoing the work at half precision.

    The estimate is floored at the Hadamard bound times 2^(-precision/2) so that an
    exactly singular matrix (which may factor to an exact 0 twice) still carries a
    meaningful scale.
    """
    if M.dim == 0:
        return Determinant(mp.one, mp.zero, M.precision_bits)
    full = _lu_determinant(M.entries, M.precision_bits + 16)
    half_bits = max(M.precision_bits // 2, 32)
    half = _lu_determinant(M.rounded(half_bits).entries, half_bits)
    with mp.workprec(M.precision_bits):
        floor = mp.ldexp(_hadamard_bound(M.entries, 64), -half_bits)
        err = abs(full - half) + floor
        return Determinant(+full, +err, M.precision_bits)


def exact_determinant(rows) -> int | Fraction:
    """Fraction-free (Bareiss) elimination; rational input is scaled to integers first."""
    n = len(rows)
    if n == 0:
        return 1
    scale = lcm(*(Fraction(x).denominator for row in rows for x in row))
    a = [[int(Fraction(x) * scale) for x in row] for row in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    det = sign * a[n - 1][n - 1]
    if scale == 1:
        return det
    return Fraction(det, scale**n)


@dataclass(frozen=True)
class SignData:
    n: int
    epsilon: int
    tau_sign: int
    inv_count_parity: int

    @property
    def consistent(self) -> bool:
        return self.epsilon == self.tau_sign * (-1) ** self.inv_count_parity


def _require_odd_n(n: int):
    if n < 3 or n % 2 == 0:
        raise ValueError(f"the sign epsilon(n) is defined for odd n >= 3, got {n}")


def _tau_permutation(n: int) -> tuple[list[int], int]:
    """tau_n on positions of S_n, and #N_n^inv (k with k * tau(k) = -1 mod n)."""
    S = residue_systems(n).S
    pos = {a: i for i, a in enumerate(S)}
    perm, inv_count = [], 0
    for k in S:
        kp = mod_inverse(k, n)
        if kp in pos:
            perm.append(pos[kp])
        else:
            perm.append(pos[n - kp])
            inv_count += 1
    return perm, inv_count


def permutation_sign(perm: list[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length and length % 2 == 0:
            sign = -sign
    return sign


def epsilon_closed_form(n: int) -> int:
    _require_odd_n(n)
    factors = factorize(n).factors
    half_phi = euler_phi(n) // 2
    flip = False
    if len(factors) == 1:
        p, e = factors[0]
        flip = p % 8 not in (1, (4 * e + 3) % 8)
    elif len(factors) == 2:
        flip = (factors[0][0] + factors[1][0]) % 4 == 0
    return (-1) ** (half_phi + flip)


def epsilon_sign_direct(n: int) -> SignData:
    _require_odd_n(n)
    perm, inv_count = _tau_permutation(n)
    tau_sign = permutation_sign(perm)
    return SignData(n, tau_sign * (-1) ** inv_count, tau_sign, inv_count % 2)


def epsilon_sign(n: int) -> SignData:
    """Closed-form epsilon(n) alongside the directly counted sign(tau_n) and #N_n^inv parity.

    Check ``.consistent`` before trusting the closed form.
    """
    direct = epsilon_sign_direct(n)
    return SignData(n, epsilon_closed_form(n), direct.tau_sign, direct.inv_count_parity)


def spectral_check(n: int, kind: Kind | str, chi: DirichletCharacter, precision: int = 128):
    """||M v - lambda v||_inf / ||v||_inf for v = chi restricted to S_n.

    M is the inverse-product cot (or sin) matrix; lambda is (n/pi) L(1, conj chi)
    for cot and tau(conj chi) / 2i for sin.
    """
    kind = Kind(kind)
    if kind not in (Kind.COT, Kind.SIN):
        raise ValueError("spectral checks cover the cot and sin kernels")
    if chi.modulus != n or not chi.is_odd:
        raise ValueError(f"need an odd character mod {n}")
    M = build(TrigMatrixSpec(kind, n, Indexing.INVERSE_PRODUCT), precision)
    S = residue_systems(n).S
    conj = chi.conjugate()
    if kind is Kind.COT:
        lam = L1(conj, precision)
        with working_precision(precision):
            lam = n * lam / mp.pi
    else:
        tau = gauss_sum(conj, 1, precision)
        with working_precision(precision):
            lam = tau / (2 * mp.j)
    with working_precision(precision):
        v = [unity_to_complex(evaluate(chi, k)) for k in S]
        residual = max(
            abs(mp.fsum(M[i, c] * v[c] for c in range(M.dim)) - lam * v[i]) for i in range(M.dim)
        )
        return residual / max(abs(x) for x in v)
