"""Local solvability of diagonal quadratic equations by residue search + Hensel.

A residue vector ``x`` modulo ``p^K`` with ``sum a_i x_i^2 = 0 (mod p^K)`` lifts
to a nonzero p-adic zero as soon as some coordinate satisfies the strong Hensel
condition ``K > 2 v_p(2 a_i x_i)``. After scaling every coefficient to
valuation 0 or 1, a primitive p-adic zero always has a coordinate with
``v_p(2 a_i x_i) <= v_p(2) + 1``, so ``K = 2 v_p(2) + 3`` digits decide
isotropy exactly.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .arith import _int_valuation, padic_valuation, unit_part


def search_depth(p: int) -> int:
    return 2 * (1 if p == 2 else 0) + 3


def normalize_coefficient(a: Fraction, p: int, K: int) -> int:
    """An integer in the same square class as ``a`` at p, with valuation 0 or 1,
    reduced modulo ``p^(K+1)`` (which the residue search cannot tell apart)."""
    v = padic_valuation(a, p)
    u = unit_part(a, p)
    mod = p ** (K + 1)
    unit = u.numerator * pow(u.denominator, -1, mod) % mod
    return (p ** (v % 2) * unit) % mod


@lru_cache(maxsize=None)
def residue_isotropic(coeffs: tuple, p: int, K: int) -> bool:
    """Does ``sum a_i x_i^2`` have a residue zero mod p^K that Hensel-lifts?

    ``coeffs`` are nonzero integers of p-adic valuation 0 or 1.
    """
    P = p ** K
    v2 = 1 if p == 2 else 0
    reach = {(0, False)}
    for a in coeffs:
        va = _int_valuation(a, p)
        opts = set()
        for x in range(P):
            qual = x != 0 and 2 * (v2 + va + _int_valuation(x, p)) < K
            opts.add((a * x * x % P, qual))
        reach = {((s + t) % P, f or q) for s, f in reach for t, q in opts}
    return (0, True) in reach


def local_isotropic_diagonal(coeffs: Sequence[Fraction], p: int,
                             K: int | None = None) -> bool:
    """Exhaustive residue-search verdict for the diagonal form at the prime p."""
    K = K or search_depth(p)
    key = tuple(sorted(normalize_coefficient(Fraction(a), p, K) for a in coeffs))
    return residue_isotropic(key, p, K)
