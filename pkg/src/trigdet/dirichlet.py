"""Dirichlet characters mod n with exact root-of-unity values.

A character is labelled by its exponent vector over the canonical generators of
(Z/nZ)^x (see :func:`trigdet.arith.group_structure`): chi(g_i) = exp(2 pi i e_i / o_i).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm

from .arith import discrete_log_table, divisors, euler_phi, exponent_vector, group_structure


@dataclass(frozen=True)
class UnityValue:
    """exp(2 pi i * frac), or zero when frac is None."""

    frac: Fraction | None

    def __post_init__(self):
        if self.frac is not None:
            object.__setattr__(self, "frac", Fraction(self.frac) % 1)

    @property
    def is_zero(self) -> bool:
        return self.frac is None

    @property
    def numerator(self) -> int:
        return self.frac.numerator

    @property
    def denominator(self) -> int:
        return self.frac.denominator

    def __mul__(self, other: UnityValue) -> UnityValue:
        if self.is_zero or other.is_zero:
            return ZERO
        return UnityValue(self.frac + other.frac)

    def conjugate(self) -> UnityValue:
        return self if self.is_zero else UnityValue(-self.frac)

    def is_one(self) -> bool:
        return self.frac == 0

    def __repr__(self):
        return "UnityValue(0)" if self.is_zero else f"UnityValue(e({self.frac}))"


ZERO = UnityValue(None)
ONE = UnityValue(Fraction(0))


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        orders = group_structure(self.modulus).orders
        if len(self.exponents) != len(orders):
            raise ValueError(f"need {len(orders)} exponents for modulus {self.modulus}")
        object.__setattr__(
            self, "exponents", tuple(e % o for e, o in zip(self.exponents, orders))
        )

    @property
    def orders(self) -> tuple[int, ...]:
        return group_structure(self.modulus).orders

    def __call__(self, a: int) -> UnityValue:
        return evaluate(self, a)

    @cached_property
    def order(self) -> int:
        return lcm(1, *(o // gcd(o, e) for e, o in zip(self.exponents, self.orders)))

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @cached_property
    def is_odd(self) -> bool:
        return self.modulus > 2 and evaluate(self, -1).frac == Fraction(1, 2)

    @property
    def parity(self) -> str:
        return "odd" if self.is_odd else "even"

    @cached_property
    def conductor(self) -> int:
        return conductor(self)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @cached_property
    def primitive(self) -> DirichletCharacter:
        return to_primitive(self)[1]

    def conjugate(self) -> DirichletCharacter:
        return conjugate(self)

    @property
    def label(self) -> str:
        exps = ",".join(map(str, self.exponents))
        return f"chi[n={self.modulus}; e=({exps}); f={self.conductor}; {self.parity}]"

    def __repr__(self):
        return self.label


def trivial_character(n: int = 1) -> DirichletCharacter:
    return DirichletCharacter(n, (0,) * len(group_structure(n).orders))


def evaluate(chi: DirichletCharacter, a: int) -> UnityValue:
    n = chi.modulus
    if gcd(a, n) != 1:
        return ZERO
    logs = exponent_vector(a, n)
    return UnityValue(sum(Fraction(e * l, o) for e, l, o in zip(chi.exponents, logs, chi.orders)))


@lru_cache(maxsize=None)
def all_characters(n: int) -> tuple[DirichletCharacter, ...]:
    from itertools import product

    orders = group_structure(n).orders
    return tuple(DirichletCharacter(n, e) for e in product(*(range(o) for o in orders)))


@lru_cache(maxsize=None)
def odd_characters(n: int) -> tuple[DirichletCharacter, ...]:
    if n <= 2:
        raise ValueError(f"there are no odd characters mod {n}")
    return tuple(chi for chi in all_characters(n) if chi.is_odd)


def conductor(chi: DirichletCharacter) -> int:
    n = chi.modulus
    units = [a for a in discrete_log_table(n) if gcd(a, n) == 1]
    for f in divisors(n):
        # chi factors through mod f iff it is trivial on the units that are 1 mod f
        if all(evaluate(chi, a).is_one() for a in units if (a - 1) % f == 0):
            return f
    raise AssertionError("unreachable: f = n always qualifies")


def _unit_lift(r: int, f: int, n: int) -> int:
    """A unit mod n congruent to r mod f (r a unit mod f, f | n)."""
    a = r % f if f > 1 else 1
    while gcd(a, n) != 1:
        a += f
    return a


def _character_from_values(n: int, value_at) -> DirichletCharacter:
    g = group_structure(n)
    exps = []
    for gen, o in zip(g.generators, g.orders):
        v = value_at(gen)
        e = v.frac * o
        if v.is_zero or e.denominator != 1:
            raise ValueError(f"values do not define a character mod {n}")
        exps.append(int(e))
    return DirichletCharacter(n, tuple(exps))


def to_primitive(chi: DirichletCharacter) -> tuple[int, DirichletCharacter]:
    f = chi.conductor
    star = _character_from_values(f, lambda g: evaluate(chi, _unit_lift(g, f, chi.modulus)))
    return f, star


def induce(chi: DirichletCharacter, n: int) -> DirichletCharacter:
    f = chi.modulus
    if n % f:
        raise ValueError(f"cannot induce from modulus {f} to {n}: {f} does not divide {n}")
    return _character_from_values(n, lambda g: evaluate(chi, g))


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    return DirichletCharacter(chi.modulus, tuple(-e for e in chi.exponents))


# Exact sums of roots of unity, used for orthogonality-type identities.


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_N, lowest degree first."""
    num = [-1] + [0] * (N - 1) + [1]
    for d in divisors(N)[:-1]:
        num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    q, r = _poly_divmod(a, b)
    assert not any(r)
    return q


def _poly_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    # b monic
    a = list(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    return q, a[:db] if db else []


def reduce_cyclotomic(exponents, N: int) -> tuple[int, ...]:
    """sum of zeta_N^k over the integer exponents k, as canonical coefficients in Z[zeta_N].

    Coefficients are lowest degree first with trailing zeros stripped: () means
    the sum is exactly 0, (c,) means it is the rational integer c.
    """
    coeffs = [0] * N
    for k, c in Counter(k % N for k in exponents).items():
        coeffs[k] += c
    _, rem = _poly_divmod(coeffs, list(cyclotomic_polynomial(N)))
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(rem)


def exact_root_sum(values) -> tuple[int, ...]:
    """Exact sum of UnityValues (zeros dropped), in the form of :func:`reduce_cyclotomic`."""
    fracs = [v.frac for v in values if not v.is_zero]
    if not fracs:
        return ()
    N = lcm(*(f.denominator for f in fracs))
    return reduce_cyclotomic((int(f * N) for f in fracs), N)


def character_table(n: int) -> tuple[int, list[list[int]], list[int]]:
    """(N, rows, units): chi_i(units[a]) = zeta_N^rows[i][a], characters in all_characters order."""
    g = group_structure(n)
    N = lcm(1, *g.orders)
    logs = discrete_log_table(n)
    units = sorted(a for a in logs if gcd(a, n) == 1)
    rows = [
        [sum(e * l * (N // o) for e, l, o in zip(chi.exponents, logs[a], g.orders)) % N for a in units]
        for chi in all_characters(n)
    ]
    return N, rows, units
