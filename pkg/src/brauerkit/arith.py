"""Exact arithmetic over Q and its completions.

Rationals are :class:`fractions.Fraction`; places are :class:`Place`; p-adic
approximations with explicit precision are :class:`PAdicApprox`.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from sympy import isprime

from .errors import (FactorizationBoundExceeded, HenselConditionFailed,
                     InsufficientPrecision)

RationalLike = Union[int, Fraction, str]

#: valuation of zero
INFINITY = math.inf

DEFAULT_FACTOR_BOUND = 10**6


def factor_bound() -> int:
    """Trial-division bound, overridable through ``BRAUERKIT_FACTOR_BOUND``."""
    return int(os.environ.get("BRAUERKIT_FACTOR_BOUND", DEFAULT_FACTOR_BOUND))


def to_rational(x: RationalLike) -> Fraction:
    """Parse ``"p/q"``, ``"n"``, an int or a Fraction into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip().replace("−", "-"))
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Place:
    """A place of Q: the real place (``prime is None``) or a finite prime."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not isprime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = str(text).strip().lower()
        if text in ("inf", "infinity", "real", "oo"):
            return cls(None)
        return cls(int(text))

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def sort_key(self):
        return (0, 0) if self.prime is None else (1, self.prime)

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)


REAL = Place.real()


# ---------------------------------------------------------------------------
# valuations and factorization


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(x: RationalLike, p: int) -> int | float:
    """ord_p(x); returns :data:`INFINITY` for x = 0."""
    x = to_rational(x)
    if x == 0:
        return INFINITY
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def unit_part(x: Fraction, p: int) -> Fraction:
    """x / p^ord_p(x)."""
    v = padic_valuation(x, p)
    return x / Fraction(p) ** v


@lru_cache(maxsize=65536)
def _factorize_positive(n: int, bound: int) -> tuple:
    factors = {}
    d = 2
    while d * d <= n and d <= bound:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors[d] = e
        d += 1 if d == 2 else 2
    if n > 1:
        if n <= bound * bound or isprime(n):
            factors[n] = factors.get(n, 0) + 1
        else:
            # squares of large primes show up whenever square classes are taken
            r = math.isqrt(n)
            if r * r != n or not isprime(r):
                raise FactorizationBoundExceeded(
                    f"cofactor {n} exceeds {bound}^2 and is not prime")
            factors[r] = factors.get(r, 0) + 2
    return tuple(sorted(factors.items()))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division up to :func:`factor_bound`."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    return dict(_factorize_positive(n, factor_bound()))


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def squarefree_part(n: int) -> tuple[int, int]:
    """Write n = s * f**2 with s squarefree and sign(s) = sign(n).

    >>> squarefree_part(-50)
    (-2, 5)
    """
    n = int(n)
    if n == 0:
        raise ValueError("squarefree_part of 0")
    s, f = 1, 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
        f *= p ** (e // 2)
    return (s if n > 0 else -s), f


def squarefree_class(x: RationalLike) -> int:
    """Squarefree integer representing the class of x in Q*/Q*^2."""
    x = to_rational(x)
    if x == 0:
        raise ValueError("zero has no square class")
    return squarefree_part(x.numerator * x.denominator)[0]


# ---------------------------------------------------------------------------
# squares


def legendre_symbol(a: int, p: int) -> int:
    """(a/p) for an odd prime p, via Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def is_square_local(x: RationalLike, v: Place) -> bool:
    """Whether x is a square in the completion of Q at v."""
    x = to_rational(x)
    if x == 0:
        raise ValueError("is_square_local needs x != 0")
    if v.is_real:
        return x > 0
    p = v.prime
    val = padic_valuation(x, p)
    if val % 2:
        return False
    u = unit_part(x, p)
    if p == 2:
        return (u.numerator * pow(u.denominator, -1, 8)) % 8 == 1
    return legendre_symbol(u.numerator * u.denominator, p) == 1


def is_rational_square(x: RationalLike) -> bool:
    x = to_rational(x)
    if x < 0:
        return False
    return (math.isqrt(x.numerator) ** 2 == x.numerator
            and math.isqrt(x.denominator) ** 2 == x.denominator)


# ---------------------------------------------------------------------------
# p-adic approximations


@dataclass(frozen=True)
class PAdicApprox:
    """The p-adic number ``unit * prime**valuation`` known modulo
    ``prime**(valuation + precision)``.
    """

    prime: int
    valuation: int
    unit: int
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise InsufficientPrecision("precision must be at least 1")
        if self.unit % self.prime == 0:
            raise ValueError("unit must be coprime to the prime")
        object.__setattr__(self, "unit", self.unit % self.prime ** self.precision)

    @classmethod
    def from_rational(cls, x: RationalLike, p: int, precision: int) -> "PAdicApprox":
        x = to_rational(x)
        if x == 0:
            raise InsufficientPrecision("zero has no finite-precision unit part")
        m = padic_valuation(x, p)
        u = unit_part(x, p)
        mod = p ** precision
        return cls(p, m, u.numerator * pow(u.denominator, -1, mod) % mod, precision)

    @property
    def absolute_precision(self) -> int:
        return self.valuation + self.precision

    def to_rational(self) -> Fraction:
        """The canonical representative ``unit * p**valuation``."""
        return Fraction(self.unit) * Fraction(self.prime) ** self.valuation

    def with_precision(self, precision: int) -> "PAdicApprox":
        if precision > self.precision:
            raise InsufficientPrecision(
                f"requested {precision} digits, only {self.precision} known")
        return PAdicApprox(self.prime, self.valuation, self.unit, precision)

    def __mul__(self, other: "PAdicApprox") -> "PAdicApprox":
        if not isinstance(other, PAdicApprox) or other.prime != self.prime:
            return NotImplemented
        k = min(self.precision, other.precision)
        return PAdicApprox(self.prime, self.valuation + other.valuation,
                           self.unit * other.unit, k)

    def __neg__(self) -> "PAdicApprox":
        return PAdicApprox(self.prime, self.valuation, -self.unit, self.precision)

    def inverse(self) -> "PAdicApprox":
        mod = self.prime ** self.precision
        return PAdicApprox(self.prime, -self.valuation, pow(self.unit, -1, mod),
                           self.precision)

    def is_square(self) -> bool:
        needed = 3 if self.prime == 2 else 1
        if self.precision < needed:
            raise InsufficientPrecision(
                f"square test at {self.prime} needs {needed} unit digits")
        return is_square_local(self.to_rational(), Place(self.prime))


def poly_eval(coeffs: Sequence[int], x):
    """Evaluate ``sum(coeffs[i] * x**i)`` by Horner's rule."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:] or [0]


def hensel_lift(coeffs: Sequence[int], a: int, p: int, k: int) -> PAdicApprox:
    """Lift the approximate root ``a`` of an integer polynomial to a p-adic root.

    ``coeffs`` lists coefficients from the constant term upward. Requires
    ``v_p(f(a)) > 2 v_p(f'(a))``. The result agrees with the unique root
    modulo ``p**k`` and satisfies ``f(x) = 0 mod p**k``.
    """
    coeffs = [int(c) for c in coeffs]
    deriv = poly_derivative(coeffs)
    fa, dfa = poly_eval(coeffs, a), poly_eval(deriv, a)
    if dfa == 0:
        raise HenselConditionFailed("f'(a) = 0")
    e = _int_valuation(dfa, p)
    if fa != 0 and _int_valuation(fa, p) <= 2 * e:
        raise HenselConditionFailed(
            f"v_p(f(a)) = {_int_valuation(fa, p)} is not > 2 v_p(f'(a)) = {2 * e}")

    mod = p ** (k + 2 * e + 1)
    x = a % mod
    fx = poly_eval(coeffs, x)
    while fx != 0 and _int_valuation(fx, p) < k + e:
        u = poly_eval(deriv, x) // p ** e
        x = (x - (fx // p ** e) * pow(u, -1, mod)) % mod
        fx = poly_eval(coeffs, x)

    x %= p ** k
    if x == 0:
        raise InsufficientPrecision(f"root is divisible by {p}^{k}")
    m = _int_valuation(x, p)
    return PAdicApprox(p, m, x // p ** m, k - m)
