import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brauerkit.bogomolov import (Bivector, FpVector, WGroupElement, all_vectors,
                                 associativity_exhaustive, bivector_decomposable, closure,
                                 commutator, commutator_check, commutator_product_witness,
                                 decomposable_by_search, group_inv, group_pow, quotient_center_order,
                                 quotient_center_order_bruteforce, verify_structure, wedge,
                                 wedge_hits_line, witness_product)

PRIMES = [3, 5, 7]


def vec(p):
    return st.tuples(*[st.integers(0, p - 1)] * 4).map(lambda c: FpVector(p, c))


def bivec(p):
    return st.tuples(*[st.integers(0, p - 1)] * 6).map(lambda c: Bivector(p, c))


def elem(p):
    return st.builds(WGroupElement, vec(p), bivec(p))


def test_wedge_example():
    u = FpVector(3, (1, 1, 0, 0))
    v = FpVector(3, (0, 1, 1, 0))
    # (e1 + e2) ^ (e2 + e3) = e12 + e13 + e23
    assert wedge(u, v).coords == (1, 1, 0, 1, 0, 0)
    assert wedge(FpVector(3, (1, 0, 0, 0)), FpVector(3, (0, 0, 1, 1))).coords == (0, 1, 1, 0, 0, 0)


@pytest.mark.parametrize("p", PRIMES)
def test_wedge_bilinear_alternating(p):
    @given(vec(p), vec(p), vec(p), st.integers(0, p - 1))
    def check(u, v, w, c):
        assert wedge(u, u).is_zero()
        assert wedge(u, v) == wedge(v, u).scale(-1)
        assert wedge(u + w.scale(c), v) == wedge(u, v) + wedge(w, v).scale(c)
    check()


@pytest.mark.parametrize("p", PRIMES)
def test_group_axioms(p):
    @given(elem(p), elem(p), elem(p))
    def check(a, b, c):
        e = WGroupElement.identity(p)
        assert (a * b) * c == a * (b * c)
        assert a * e == a == e * a
        assert a * group_inv(a) == e
    check()


@pytest.mark.parametrize("p", PRIMES)
def test_commutator_formula(p):
    @given(elem(p), elem(p))
    def check(a, b):
        c = commutator(a, b)
        assert c.w.is_zero()
        assert c.m == wedge(a.w, b.w).scale(2)
    check()


@pytest.mark.parametrize("p", PRIMES)
def test_exponent_p(p):
    @given(elem(p))
    def check(a):
        assert group_pow(a, p) == WGroupElement.identity(p)
    check()


def test_closure_exhaustive_checks():
    gens = [WGroupElement(FpVector(3, (1, 0, 0, 0)), Bivector.zero(3)),
            WGroupElement(FpVector(3, (0, 1, 0, 0)), Bivector.zero(3))]
    H = closure(gens)
    assert len(H) == 27  # Heisenberg group of order p^3
    assert associativity_exhaustive(H) == 0
    out = commutator_check(H)
    assert out["formula_holds"] and out["span_rank"] == 1


@pytest.mark.parametrize("p", [3, 5])
def test_verify_structure(p):
    out = verify_structure(p, samples=2000)
    assert all(out["checks"].values())
    assert out["derived_rank"] == 6 and out["center_order"] == p**6


@pytest.mark.parametrize("p", [2, 4, 7])
def test_verify_structure_rejects(p):
    with pytest.raises(ValueError):
        verify_structure(p)


@settings(max_examples=40)
@given(bivec(3))
def test_plucker_matches_search(z):
    assert bivector_decomposable(z) == decomposable_by_search(z)


def test_decomposability_examples():
    assert bivector_decomposable(Bivector.basis(5, 1, 2))
    assert not bivector_decomposable(Bivector.basis(5, 1, 2) + Bivector.basis(5, 3, 4))
    assert bivector_decomposable(wedge(FpVector(5, (1, 2, 3, 4)), FpVector(5, (0, 1, 4, 2))))


def test_random_products_of_commutators():
    rng = np.random.default_rng(0)
    for p in PRIMES:
        for _ in range(1000 // len(PRIMES) + 1):
            m = Bivector(p, tuple(int(x) for x in rng.integers(0, p, 6)))
            if m.is_zero():
                continue
            pairs = commutator_product_witness(m)
            assert len(pairs) <= 6
            lifts = [(Bivector(p, tuple(int(x) for x in rng.integers(0, p, 6))),
                      Bivector(p, tuple(int(x) for x in rng.integers(0, p, 6)))) for _ in pairs]
            target = WGroupElement(FpVector(p, (0,) * 4), m)
            assert witness_product(pairs) == target
            assert witness_product(pairs, lifts) == target


@pytest.mark.parametrize("z", [Bivector.basis(3, 1, 2),
                               Bivector.basis(3, 1, 2) + Bivector.basis(3, 3, 4),
                               Bivector(3, (1, 2, 0, 1, 1, 2))])
def test_center_of_quotient_matches_group_law(z):
    assert quotient_center_order(z)["order"] == quotient_center_order_bruteforce(z)


@pytest.mark.parametrize("p", [3, 5])
def test_center_of_quotient_orders(p):
    dec = quotient_center_order(Bivector.basis(p, 1, 2))
    ind = quotient_center_order(Bivector.basis(p, 1, 2) + Bivector.basis(p, 3, 4))
    # any nonzero w has v with w ^ v outside <z>, so the center stays L^2 W / <z>
    assert dec["order"] == ind["order"] == p**5
    assert dec["decomposable"] and not ind["decomposable"]


def test_wedge_hits_line_separates_decomposable():
    for p in [3, 5]:
        assert wedge_hits_line(Bivector.basis(p, 1, 2))
        assert not wedge_hits_line(Bivector.basis(p, 1, 2) + Bivector.basis(p, 3, 4))


def test_vector_shapes():
    assert all_vectors(3).shape == (81, 4)
    with pytest.raises(ValueError):
        FpVector(3, (1, 2, 3))
    with pytest.raises(ValueError):
        commutator_product_witness(Bivector.zero(3))
    assert list(itertools.islice(all_vectors(3)[1], 4)) == [0, 0, 0, 1]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_witness_examples(p):
    e = [FpVector.basis(p, i) for i in range(4)]
    assert commutator_product_witness(Bivector.basis(p, 1, 2).scale(2)) == [(e[0], e[1])]
    assert commutator_product_witness(Bivector.basis(p, 1, 2)) == [(e[0], e[1].scale((p + 1) // 2))]
    m = Bivector.basis(p, 1, 2) + Bivector.basis(p, 3, 4)
    pairs = commutator_product_witness(m)
    assert len(pairs) == 2
    assert witness_product(pairs) == WGroupElement(FpVector(p, (0,) * 4), m)
