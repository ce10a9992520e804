from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brauerkit.arith import REAL, Place, legendre_symbol, squarefree_part
from brauerkit.brauer import (InvariantVector, QuaternionClass, conic_point,
                              descent_split_trace, hilbert_symbol, is_split,
                              local_invariants, product_formula_check, sqrt_mod_squarefree)
from brauerkit.errors import SearchBudgetExceeded

HALF = Fraction(1, 2)
nonzero = st.integers(-5000, 5000).filter(bool)
squarefree = nonzero.filter(lambda n: squarefree_part(n)[1] == 1)


def serre_symbol(a: int, b: int, p: int) -> int:
    """Closed-form Hilbert symbol for integers (independent of the library)."""
    def split(x):
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v, x
    al, u = split(a)
    be, v = split(b)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + al * omega(v) + be * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (al * be * ((p - 1) // 2)) % 2 else 1
    return sign * legendre_symbol(u, p) ** be * legendre_symbol(v, p) ** al


@given(nonzero, nonzero, st.sampled_from([2, 3, 5, 7, 11, 13, 17]))
def test_hilbert_symbol_matches_closed_form(a, b, p):
    assert hilbert_symbol(a, b, Place(p)) == serre_symbol(a, b, p)


@given(nonzero, nonzero)
def test_real_symbol(a, b):
    assert hilbert_symbol(a, b, REAL) == (-1 if a < 0 and b < 0 else 1)


@given(nonzero, nonzero, nonzero, st.sampled_from([2, 3, 5, 7]))
def test_symbol_bimultiplicative(a, b, c, p):
    v = Place(p)
    assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v)


def test_frozen_invariants():
    assert local_invariants(-1, -1).to_json() == {"inf": "1/2", "2": "1/2"}
    assert local_invariants(17, 3).to_json() == {"3": "1/2", "17": "1/2"}
    assert local_invariants(2, 7).is_zero()
    assert local_invariants(1, 5).is_zero()
    assert hilbert_symbol(17, 3, Place(17)) == -1


def test_rational_arguments_use_square_classes():
    assert local_invariants(Fraction(-4, 9), Fraction(-1, 25)) == local_invariants(-1, -1)
    assert QuaternionClass(Fraction(8, 9), 28).normalized == (2, 7)


@given(squarefree, squarefree)
def test_product_formula(a, b):
    assert product_formula_check(a, b)


@given(nonzero, nonzero)
def test_symmetry(a, b):
    assert local_invariants(a, b) == local_invariants(b, a)


@given(st.fractions(min_value=-10**3, max_value=10**3, max_denominator=10**3)
       .filter(lambda x: x not in (0, 1)))
def test_steinberg(a):
    assert is_split(a, 1 - a)
    assert is_split(a, -a)


def test_invariant_vector_arithmetic():
    v = InvariantVector.from_dict({REAL: HALF, Place(2): HALF})
    assert (v + v).is_zero()
    assert v.total() == 0
    assert v[Place(3)] == 0


@given(st.integers(-300, 300), squarefree.filter(lambda b: abs(b) <= 300))
def test_sqrt_mod_squarefree(a, b):
    roots = sqrt_mod_squarefree(a, b)
    brute = [c for c in range(abs(b)) if (c * c - a) % abs(b) == 0]
    assert roots == brute


def test_descent_examples():
    t = descent_split_trace(2, 7)
    assert t.split and [(s.a, s.b, s.c, s.b_prime) for s in t.steps] == [(2, 7, 3, 1)]
    t = descent_split_trace(-1, -1)
    assert not t.split and t.obstruction == REAL
    assert descent_split_trace(1, 5).steps == ()


@given(squarefree.filter(lambda n: abs(n) <= 500), squarefree.filter(lambda n: abs(n) <= 500))
def test_descent_agrees_with_invariants(a, b):
    trace = descent_split_trace(a, b)
    assert trace.split == is_split(a, b)
    for s in trace.steps:
        assert s.a == s.c * s.c - s.b * s.b_prime
        assert 2 * abs(s.c) <= abs(s.b)


def test_conic_points():
    assert conic_point(2, 7) == ((3, 1, 1), None)
    assert conic_point(1, 5) == ((1, 1, 0), None)
    pt, place = conic_point(-1, -1)
    assert pt is None and place == REAL
    (u, v, w), _ = conic_point(Fraction(8, 9), 28)
    assert u * u == Fraction(8, 9) * v * v + 28 * w * w


@given(squarefree.filter(lambda n: abs(n) <= 2000), squarefree.filter(lambda n: abs(n) <= 2000))
def test_conic_witness_is_exact(a, b):
    if not is_split(a, b):
        return
    (u, v, w), _ = conic_point(a, b)
    assert (u, v, w) != (0, 0, 0)
    assert u * u == a * v * v + b * w * w


def test_search_budget(monkeypatch):
    # the smallest point on u^2 = 2v^2 - 17w^2 is (1, 3, 1)
    monkeypatch.setenv("BRAUERKIT_BUDGET", "2")
    with pytest.raises(SearchBudgetExceeded):
        conic_point(2, -17)
    monkeypatch.setenv("BRAUERKIT_BUDGET", "3")
    assert conic_point(2, -17) == ((1, 3, 1), None)
