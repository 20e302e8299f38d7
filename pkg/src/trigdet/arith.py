"""Exact integer arithmetic on (Z/nZ)^x: residue systems, group structure, small arithmetic functions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, isqrt, prod


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_prime_power(self) -> bool:
        return len(self.factors) == 1

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)


@dataclass(frozen=True)
class ResidueSystems:
    n: int
    S: tuple[int, ...]
    U: tuple[int, ...]


@dataclass(frozen=True)
class GroupStructure:
    """Decomposition of (Z/nZ)^x as a product of cyclic groups <g_i> of order o_i."""

    n: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]


@lru_cache(maxsize=None)
def factorize(n: int) -> Factorization:
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n).factors == ((n, 1),)


def euler_phi(n: int) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in factorize(n).factors)


def moebius(n: int) -> int:
    f = factorize(n)
    if not f.is_squarefree():
        return 0
    return -1 if len(f.factors) % 2 else 1


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def least_positive_residue(m: int, n: int) -> int:
    """R_n(m): the representative of m mod n in {1, ..., n}."""
    r = m % n
    return r if r else n


def mod_inverse(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible mod {n}")
    return pow(a, -1, n)


@lru_cache(maxsize=None)
def residue_systems(n: int) -> ResidueSystems:
    if n < 3:
        raise ValueError(f"residue systems need n >= 3, got {n}")
    # 2a < n is the exact form of a < n/2
    S = tuple(a for a in range(1, n) if 2 * a < n and gcd(a, n) == 1)
    U = tuple(sorted([-a for a in S] + list(S)))
    return ResidueSystems(n, S, U)


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    if n == 1:
        return 1
    phi = euler_phi(n)
    order = phi
    for p, _ in factorize(phi).factors:
        while order % p == 0 and pow(a, order // p, n) == 1:
            order //= p
    return order


def jacobi_symbol(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def primitive_root(q: int) -> int:
    """Smallest generator of (Z/qZ)^x for q an odd prime power (or 2, 4)."""
    phi = euler_phi(q)
    for g in range(1, q):
        if gcd(g, q) == 1 and multiplicative_order(g, q) == phi:
            return g
    raise ValueError(f"(Z/{q}Z)^x is not cyclic")


def crt_lift(residue: int, q: int, n: int) -> int:
    """The x mod n with x = residue mod q and x = 1 mod n/q (q, n/q coprime)."""
    r = n // q
    if r == 1:
        return residue % n
    return (residue * r * pow(r, -1, q) + q * pow(q, -1, r)) % n


@lru_cache(maxsize=None)
def group_structure(n: int) -> GroupStructure:
    if n < 1:
        raise ValueError(f"group structure needs n >= 1, got {n}")
    gens: list[int] = []
    orders: list[int] = []
    for p, e in factorize(n).factors:
        q = p**e
        if p == 2:
            if e == 2:
                gens.append(crt_lift(-1, q, n))
                orders.append(2)
            elif e >= 3:
                gens += [crt_lift(-1, q, n), crt_lift(5, q, n)]
                orders += [2, 2 ** (e - 2)]
        else:
            gens.append(crt_lift(primitive_root(q), q, n))
            orders.append(q // p * (p - 1))
    return GroupStructure(n, tuple(gens), tuple(orders))


@lru_cache(maxsize=None)
def discrete_log_table(n: int) -> dict[int, tuple[int, ...]]:
    """Map each unit a mod n to its exponent vector over group_structure(n).generators."""
    g = group_structure(n)
    table = {}
    for exps in product(*(range(o) for o in g.orders)):
        a = 1 % n
        for base, e in zip(g.generators, exps):
            a = a * pow(base, e, n) % n
        table[a] = exps
    return table


def exponent_vector(a: int, n: int) -> tuple[int, ...]:
    try:
        return discrete_log_table(n)[a % n]
    except KeyError:
        raise ValueError(f"{a} is not a unit mod {n}") from None
