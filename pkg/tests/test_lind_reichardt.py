import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brauerkit.arith import REAL, Place, PAdicApprox, is_rational_square
from brauerkit.brauer import HALF
from brauerkit.lind_reichardt import (A, chart_transition_identity, is_rational_point_x,
                                      local_point, obstruction_conclusion, pairing,
                                      search_rational_points, verify_pairing_constant_at_17,
                                      verify_pairing_zero_elsewhere)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_charts_glue_symbolically():
    assert chart_transition_identity()


def test_real_point():
    pt = local_point(REAL)
    assert pt.holds()
    x, y = pt.coordinates
    assert x == 3 and y.radicand == 32
    assert y.lo ** 2 <= 32 <= y.hi ** 2
    assert pairing(pt) == 0


def test_two_adic_point_is_fourth_root_of_17():
    pt = local_point(Place(2), precision=20)
    t = pt.coordinates[0].to_rational()
    assert pt.chart == "U" and pt.coordinates[1] == 0
    assert (t**4 - 17) % 2**20 == 0
    assert pairing(pt) == 0


def test_seventeen_adic_point():
    pt = local_point(Place(17))
    z, w = pt.coordinates
    assert pt.chart == "V" and w == 0
    assert z.to_rational() % 17 == 3  # 2 * 3^2 = 18 = 1 mod 17
    assert pairing(pt) == HALF


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_local_points_exist_and_satisfy_equation(p):
    pt = local_point(Place(p))
    assert pt.holds()
    assert pt.defect_valuation() >= pt.precision


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_pairing_independent_of_precision(p):
    assert pairing(local_point(Place(p), 6)) == pairing(local_point(Place(p), 14))


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_pairing_is_half_only_at_17(p):
    assert pairing(local_point(Place(p))) == (HALF if p == 17 else 0)


def _residue(c, p):
    return c.to_rational() if isinstance(c, PAdicApprox) else Fraction(c)


def test_pairing_agrees_across_charts():
    # brute force over Z_17 residues: on the overlap f = y on U equals z w^-2 on V,
    # so (17, y) and (17, z) agree; both are non-residues mod 17
    squares = {x * x % 17 for x in range(1, 17)}
    for x in range(1, 17):
        for y in range(1, 17):
            if (2 * y * y - x**4 + 17) % 17 == 0:
                w = pow(x, -1, 17)
                z = y * w * w % 17
                assert (2 * z * z - 1 + 17 * w**4) % 17 == 0
                assert (y in squares) == (z in squares)
                assert y not in squares


def test_constant_at_17_tables():
    out = verify_pairing_constant_at_17()
    assert out["ratios"] == [3, 14]
    assert out["z_values"] == [3, 14]
    assert out["fourth_powers"] == [1, 4, 13, 16]
    assert all(out["checks"].values())
    assert out["pairing"] == HALF


def test_zero_elsewhere_rows():
    out = verify_pairing_zero_elsewhere(200)
    assert out["all_zero"]
    rows = {r["prime"]: r for r in out["rows"]}
    assert 17 not in rows
    # 17 = 2 mod 3 is not a square mod 3; 17 = 4 mod 13 is
    assert rows[3]["case"] == "unit"
    assert rows[13]["case"] == "square"
    assert all(r["value"] == 0 for r in out["rows"])


def test_rational_point_rejections():
    ok, reason = is_rational_point_x(Fraction(3))
    assert not ok and "32" in reason
    ok, reason = is_rational_point_x(Fraction(1))
    assert not ok and "negative" in reason


def _brute_search(height, a):
    hits = []
    for n in range(1, height + 1):
        for m in range(0, height + 1):
            if math.gcd(m, n) == 1:
                t = 2 * (m**4 - a * n**4)
                if t >= 0 and math.isqrt(t) ** 2 == t:
                    hits.append(Fraction(m, n))
    return sorted(hits)


@pytest.mark.parametrize("a", [17, 1, -7, 9, -2, 8])
def test_search_matches_brute_force(a):
    assert sorted(search_rational_points(40, a)) == _brute_search(40, a)


def test_search_finds_points_on_soluble_twists():
    assert Fraction(1) in search_rational_points(10, 1)
    assert Fraction(1) in search_rational_points(10, -7)


@given(st.integers(-50, 50), st.integers(1, 50))
def test_is_rational_point_matches_definition(m, n):
    x = Fraction(m, n)
    t = (x**4 - A) / 2
    assert is_rational_point_x(x)[0] == (t >= 0 and is_rational_square(t))


def test_obstruction_conclusion():
    out = obstruction_conclusion()
    assert out["verdict"] == "empty"
    assert out["pairing_at_17"] == HALF
    assert out["total_pairing"] == HALF
    assert out["rational_points"] == []
    assert all(out["checks"].values())
