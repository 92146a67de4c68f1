"""Factorization profiles of f(x^m) and the two-power family classification.

For odd q and a monic irreducible f != x, f(x^2) is either irreducible
or splits into exactly two distinct irreducibles of the same degree as
f; the two outcomes drive the whole square-root theory.  The profile of
f(x^m) for general m coprime to q is available as an independent,
formula-driven route and is audited against direct factorization.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import gcd as int_gcd

import sympy

from .ffpoly import (
    Poly,
    conj_reciprocal,
    factorize,
    is_irreducible,
    mult_order,
    reciprocal,
    root_order,
    substitute_power,
)
from .limits import InputError


@dataclass(frozen=True)
class ButlerEntry:
    degree: int
    count: int
    root_order: int


@dataclass(frozen=True)
class ButlerProfile:
    """Degrees, counts and root orders of the irreducible factors of f(x^m),
    computed from the order of the roots of f without factoring anything."""

    entries: tuple[ButlerEntry, ...]
    m1: int
    m2: int

    def total_degree(self) -> int:
        return sum(e.degree * e.count for e in self.entries)


@dataclass(frozen=True)
class TwoPower:
    """f(x^2) = f1 * f2 with distinct monic irreducibles of degree deg f."""

    f1: Poly
    f2: Poly


@dataclass(frozen=True)
class SkewTwoPower:
    """f(x^2) itself irreducible."""

    f_of_x2: Poly


class ReciprocalFamily(enum.Enum):
    """Trichotomy for self-paired irreducibles (reciprocal or conjugate kind)."""

    POWER = "power"
    SKEW = "skew"
    NEITHER = "neither"


def _require_irreducible_not_x(f: Poly) -> None:
    if not f.is_monic() or f.degree < 1:
        raise InputError("need a monic polynomial of degree >= 1")
    if f.constant_term() == 0:
        raise InputError("x is excluded")
    if not is_irreducible(f):
        raise InputError(f"{f} is not irreducible")


def butler_profile(f: Poly, m: int) -> ButlerProfile:
    """Factor profile of f(x^m) for gcd(m, q) = 1.

    Writes m = m1 * m2 with gcd(m1, t) = 1 and every prime of m2
    dividing t, where t is the root order of f.  For each divisor e of
    m1 the factors of degree M(e*m2*t; q) with roots of order e*m2*t
    number deg(f)*m2*phi(e)/M(e*m2*t; q).
    """
    _require_irreducible_not_x(f)
    if m < 1:
        raise InputError("m must be positive")
    q = f.field.q
    if int_gcd(m, q) != 1:
        raise InputError(f"gcd({m}, {q}) != 1")
    t = root_order(f)
    m1, m2 = 1, 1
    for prime, exp in sympy.factorint(m).items():
        if t % int(prime) == 0:
            m2 *= int(prime) ** exp
        else:
            m1 *= int(prime) ** exp
    entries = []
    for e in sorted(int(v) for v in sympy.divisors(m1)):
        order = e * m2 * t
        degree = mult_order(order, q)
        num = f.degree * m2 * int(sympy.totient(e))
        count, rem = divmod(num, degree)
        assert rem == 0, "factor count is not integral"
        entries.append(ButlerEntry(degree, count, order))
    profile = ButlerProfile(tuple(entries), m1, m2)
    assert profile.total_degree() == m * f.degree
    return profile


@lru_cache(maxsize=None)
def classify2(f: Poly):
    """SkewTwoPower if f(x^2) is irreducible, else the sorted TwoPower pair.

    Any other factorization shape contradicts the odd-characteristic
    dichotomy and aborts loudly.
    """
    _require_irreducible_not_x(f)
    fx2 = substitute_power(f, 2)
    factors = factorize(fx2)
    if len(factors) == 1 and factors[0][1] == 1:
        return SkewTwoPower(fx2)
    if (
        len(factors) == 2
        and all(m == 1 for _, m in factors)
        and all(g.degree == f.degree for g, _ in factors)
    ):
        f1, f2 = factors[0][0], factors[1][0]
        return TwoPower(f1, f2)
    raise RuntimeError(
        f"f(x^2) for f={f} over F_{f.field.q} violates the two-factor dichotomy"
    )


def is_two_power(f: Poly) -> bool:
    return isinstance(classify2(f), TwoPower)


def is_self_reciprocal(f: Poly) -> bool:
    return reciprocal(f) == f


def is_self_conjugate(f: Poly) -> bool:
    return conj_reciprocal(f) == f


def classify2_star(f: Poly) -> ReciprocalFamily:
    """Trichotomy for self-reciprocal irreducibles.

    SKEW when f(x^2) is irreducible; POWER when f(x^2) has a
    self-reciprocal irreducible factor of degree deg f; NEITHER when it
    splits but neither factor is self-reciprocal.
    """
    if not is_self_reciprocal(f):
        raise InputError(f"{f} is not self-reciprocal")
    cls = classify2(f)
    if isinstance(cls, SkewTwoPower):
        return ReciprocalFamily.SKEW
    if is_self_reciprocal(cls.f1) or is_self_reciprocal(cls.f2):
        return ReciprocalFamily.POWER
    return ReciprocalFamily.NEITHER


def classify2_tilde(f: Poly) -> ReciprocalFamily:
    """Same trichotomy with the conjugate-reciprocal pairing; the field
    must have square order."""
    if not is_self_conjugate(f):
        raise InputError(f"{f} is not self-conjugate")
    cls = classify2(f)
    if isinstance(cls, SkewTwoPower):
        return ReciprocalFamily.SKEW
    if is_self_conjugate(cls.f1) or is_self_conjugate(cls.f2):
        return ReciprocalFamily.POWER
    return ReciprocalFamily.NEITHER
