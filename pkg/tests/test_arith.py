from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brauerkit.arith import (REAL, PAdicApprox, Place, factorize, format_rational,
                             hensel_lift, is_rational_square, is_square_local,
                             legendre_symbol, padic_valuation, poly_eval, squarefree_class,
                             squarefree_part, to_rational, unit_part)
from brauerkit.errors import (FactorizationBoundExceeded, HenselConditionFailed,
                              InsufficientPrecision)

nonzero = st.integers(-10**6, 10**6).filter(bool)


def test_rational_parsing():
    assert to_rational("-17") == -17
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational("−5/2") == Fraction(-5, 2)
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(4)) == "4"


def test_places():
    assert str(REAL) == "inf"
    assert Place.parse("inf") == REAL
    assert Place.parse("17") == Place(17)
    with pytest.raises(ValueError):
        Place(15)


def test_valuations():
    assert padic_valuation(Fraction(18, 5), 3) == 2
    assert padic_valuation(Fraction(18, 5), 5) == -1
    assert unit_part(Fraction(18, 5), 3) == Fraction(2, 5)
    assert padic_valuation(0, 7) == float("inf")


@given(nonzero, nonzero, st.sampled_from([2, 3, 5, 7, 11]))
def test_valuation_is_additive(a, b, p):
    assert padic_valuation(a * b, p) == padic_valuation(a, p) + padic_valuation(b, p)
    assert padic_valuation(Fraction(a, b), p) == padic_valuation(a, p) - padic_valuation(b, p)


@given(st.integers(1, 10**6))
def test_factorize_reconstructs(n):
    f = factorize(n)
    prod = 1
    for p, e in f.items():
        prod *= p**e
    assert prod == n


@given(nonzero)
def test_squarefree_part(n):
    s, f = squarefree_part(n)
    assert s * f * f == n
    assert all(e == 1 for e in factorize(abs(s)).values())


def test_squarefree_class_of_rationals():
    assert squarefree_class(Fraction(8, 9)) == 2
    assert squarefree_class(Fraction(-3, 12)) == -1
    assert squarefree_class(Fraction(1, 2)) == 2


def test_factor_bound(monkeypatch):
    monkeypatch.setenv("BRAUERKIT_FACTOR_BOUND", "100")
    with pytest.raises(FactorizationBoundExceeded):
        factorize(101 * 103)


@given(st.integers(-500, 500), st.sampled_from([3, 5, 7, 11, 13, 17]))
def test_legendre_matches_enumeration(a, p):
    squares = {x * x % p for x in range(1, p)}
    expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
    assert legendre_symbol(a, p) == expected


@given(st.integers(1, 2**12).filter(lambda x: x % 2))
def test_two_adic_unit_squares(x):
    # oracle: a 2-adic unit is a square iff it is a square mod 2^6
    brute = any(y * y % 64 == x % 64 for y in range(64))
    assert is_square_local(x, Place(2)) == brute


@given(nonzero, st.sampled_from([3, 5, 7, 13]))
def test_odd_local_squares(x, p):
    v = padic_valuation(x, p)
    u = unit_part(Fraction(x), p)
    brute = v % 2 == 0 and any(y * y % p == int(u) % p for y in range(1, p))
    assert is_square_local(x, Place(p)) == brute


def test_real_squares_and_rational_squares():
    assert is_square_local(3, REAL)
    assert not is_square_local(-3, REAL)
    assert is_rational_square(Fraction(9, 4))
    assert not is_rational_square(32)
    assert not is_rational_square(-4)


def test_padic_approx():
    x = PAdicApprox.from_rational(Fraction(50, 3), 5, 4)
    assert (x.valuation, x.precision) == (2, 4)
    assert x.to_rational() % 1 == 0
    assert (x * x.inverse()).unit == 1
    with pytest.raises(InsufficientPrecision):
        PAdicApprox(2, 0, 1, 2).is_square()
    assert PAdicApprox(2, 0, 17, 5).is_square()


def test_hensel_fourth_root_of_17_in_q2():
    t = hensel_lift([-17, 0, 0, 0, 1], 3, 2, 20)
    x = t.to_rational()
    assert (x**4 - 17) % 2**20 == 0


def test_hensel_requires_condition():
    with pytest.raises(HenselConditionFailed):
        hensel_lift([-2, 0, 1], 1, 7, 5)  # 1 - 2 = -1 is not 0 mod 7


@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 200), st.integers(1, 12))
def test_hensel_square_roots(p, a, k):
    if a % p == 0 or legendre_symbol(a, p) != 1:
        return
    r = next(x for x in range(1, p) if (x * x - a) % p == 0)
    root = hensel_lift([-a, 0, 1], r, p, k).to_rational()
    assert (root * root - a) % p**k == 0
    assert (root - r) % p == 0


def test_poly_eval():
    assert poly_eval([1, 2, 3], 2) == 17


def test_square_of_large_prime_cofactor():
    q = 1000003  # prime above the trial-division bound
    assert factorize(4 * q * q) == {2: 2, q: 2}
    assert squarefree_part(3 * q * q) == (3, q)
