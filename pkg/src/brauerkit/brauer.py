"""Quaternion classes (a, b) in Br(Q): Hilbert symbols, local invariants,
global splitting and the induction-on-|a|+|b| descent."""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from sympy.ntheory.modular import crt
from sympy.ntheory.residue_ntheory import sqrt_mod

from .arith import (REAL, Place, RationalLike, format_rational, legendre_symbol,
                    padic_valuation, prime_divisors, squarefree_class, squarefree_part,
                    to_rational, unit_part)
from .errors import BrauerkitError, SearchBudgetExceeded
from .localsolve import local_isotropic_diagonal

HALF = Fraction(1, 2)
#: residue depth of the 2-adic symbol search
TWO_ADIC_DEPTH = 6
DEFAULT_CONIC_HEIGHT_CAP = 2048


def search_budget(default: int) -> int:
    """Height cap for witness searches; ``BRAUERKIT_BUDGET`` overrides it."""
    return int(os.environ.get("BRAUERKIT_BUDGET", default))


def hilbert_symbol(a: RationalLike, b: RationalLike, v: Place) -> int:
    """(a, b)_v in {+1, -1}: +1 iff u^2 - a v^2 - b w^2 = 0 is solvable over Q_v."""
    a, b = to_rational(a), to_rational(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.prime
    if p == 2:
        ok = local_isotropic_diagonal([Fraction(1), -a, -b], 2, TWO_ADIC_DEPTH)
        return 1 if ok else -1
    # tame symbol (-1)^(v(a)v(b)) a^(-v(b)) b^(v(a)) in F_p^*
    va, vb = padic_valuation(a, p), padic_valuation(b, p)
    ua, ub = unit_part(a, p), unit_part(b, p)
    ra = ua.numerator * pow(ua.denominator, -1, p) % p
    rb = ub.numerator * pow(ub.denominator, -1, p) % p
    t = (-1) ** (va * vb) * pow(ra, -vb, p) * pow(rb, va, p)
    return legendre_symbol(t % p, p)


@dataclass(frozen=True)
class InvariantVector:
    """Finitely supported map Place -> Q/Z; absent places carry 0."""

    entries: tuple = ()

    @classmethod
    def from_dict(cls, d: dict) -> "InvariantVector":
        items = [(pl, Fraction(x) % 1) for pl, x in d.items()]
        items = [(pl, x) for pl, x in items if x != 0]
        return cls(tuple(sorted(items, key=lambda t: t[0].sort_key())))

    def __getitem__(self, place: Place) -> Fraction:
        return dict(self.entries).get(place, Fraction(0))

    @property
    def support(self) -> list[Place]:
        return [pl for pl, _ in self.entries]

    def __add__(self, other: "InvariantVector") -> "InvariantVector":
        d = dict(self.entries)
        for pl, x in other.entries:
            d[pl] = d.get(pl, Fraction(0)) + x
        return InvariantVector.from_dict(d)

    def total(self) -> Fraction:
        return sum((x for _, x in self.entries), Fraction(0)) % 1

    def is_zero(self) -> bool:
        return not self.entries

    def to_json(self) -> dict:
        return {str(pl): format_rational(x) for pl, x in self.entries}


@dataclass(frozen=True)
class QuaternionClass:
    """The Brauer class of the quaternion algebra A(a, b): i^2 = a, j^2 = b."""

    a: Fraction
    b: Fraction
    normalized: tuple = field(init=False, compare=False)

    def __post_init__(self):
        a, b = to_rational(self.a), to_rational(self.b)
        if a == 0 or b == 0:
            raise ValueError("quaternion class needs a, b != 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "normalized", (squarefree_class(a), squarefree_class(b)))

    def relevant_places(self) -> list[Place]:
        a, b = self.normalized
        primes = set(prime_divisors(2 * a * b))
        return [REAL] + [Place(p) for p in sorted(primes)]


def _as_class(a, b=None) -> QuaternionClass:
    if isinstance(a, QuaternionClass):
        return a
    return QuaternionClass(to_rational(a), to_rational(b))


def local_invariants(a, b=None) -> InvariantVector:
    """inv_v(a, b) in {0, 1/2} at every place (support: inf, 2, p | ab)."""
    c = _as_class(a, b)
    abar, bbar = c.normalized
    return InvariantVector.from_dict({
        v: (0 if hilbert_symbol(abar, bbar, v) == 1 else HALF)
        for v in c.relevant_places()})


def product_formula_check(a, b=None) -> bool:
    """Sum of local invariants is 0 in Q/Z."""
    return local_invariants(a, b).total() == 0


def is_split(a, b=None) -> bool:
    return local_invariants(a, b).is_zero()


# ---------------------------------------------------------------------------
# descent


@dataclass(frozen=True)
class DescentStep:
    a: int
    b: int
    c: int
    b_prime: int

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c),
                "b_prime": str(self.b_prime)}


@dataclass(frozen=True)
class DescentTrace:
    steps: tuple
    outcome: str  # "BaseCaseSplit" or "LocalObstruction"
    obstruction: Optional[Place] = None

    @property
    def split(self) -> bool:
        return self.outcome == "BaseCaseSplit"

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "steps": [s.to_json() for s in self.steps]}
        if self.obstruction is not None:
            out["obstruction"] = str(self.obstruction)
        return out


def sqrt_mod_squarefree(a: int, b: int) -> list[int]:
    """All c mod |b| with c^2 = a, for squarefree b (per-prime roots + CRT)."""
    b = abs(b)
    if b == 1:
        return [0]
    primes = prime_divisors(b)
    per_prime = []
    for p in primes:
        roots = sqrt_mod(a % p, p, all_roots=True) or []
        if not roots:
            return []
        per_prime.append(sorted(set(int(r) for r in roots)))
    out = set()
    for combo in itertools.product(*per_prime):
        r, _ = crt(primes, list(combo))
        out.add(int(r) % b)
    return sorted(out)


def _centered_choice(roots: list[int], b: int) -> int:
    b = abs(b)
    lifted = []
    for r in roots:
        c = r if 2 * r <= b else r - b
        lifted.append(c)
    return min(lifted, key=lambda c: (abs(c), -c))


def descent_split_trace(a: int, b: int) -> DescentTrace:
    """Decide splitting of (a, b) for squarefree integers by descent on |a|+|b|.

    If some local invariant is nonzero the trace stops at once with that place.
    Otherwise each step writes a = c^2 - b b' with |c| <= |b|/2 and continues
    with (a, squarefree part of b'), until a or b is 1.
    """
    a, b = int(a), int(b)
    if a == 0 or b == 0 or squarefree_part(a)[1] != 1 or squarefree_part(b)[1] != 1:
        raise ValueError("descent needs squarefree nonzero integers")
    inv = local_invariants(a, b)
    if not inv.is_zero():
        return DescentTrace((), "LocalObstruction", inv.support[0])
    steps = []
    while True:
        if abs(a) > abs(b):
            a, b = b, a
        if a == 1 or b == 1:
            return DescentTrace(tuple(steps), "BaseCaseSplit")
        if abs(a) + abs(b) == 2:  # a = b = -1 cannot survive the local test
            raise BrauerkitError("descent reached (-1, -1) from a split class")
        roots = sqrt_mod_squarefree(a, b)
        if not roots:
            raise BrauerkitError(f"{a} is not a square modulo {b} for a split class")
        c = _centered_choice(roots, b)
        bp = (c * c - a) // b
        steps.append(DescentStep(a, b, c, bp))
        if bp == 0:  # c^2 = a, so a = 1 (excluded above)
            raise BrauerkitError("unexpected exact square")
        b = squarefree_part(bp)[0]


# ---------------------------------------------------------------------------
# points on the conic u^2 = a v^2 + b w^2


def _integer_conic_point(a: int, b: int, cap: int) -> tuple[int, int, int] | None:
    for h in range(0, cap + 1):
        shell = [(h, w) for w in range(h + 1)] + [(v, h) for v in range(h)]
        for v, w in shell:
            if v == 0 and w == 0:
                continue
            t = a * v * v + b * w * w
            if t < 0:
                continue
            u = math.isqrt(t)
            if u * u == t:
                g = math.gcd(math.gcd(u, v), w)
                return u // g, v // g, w // g
    return None


def conic_point(a: RationalLike, b: RationalLike, height_cap: int | None = None):
    """A primitive integer solution of u^2 - a v^2 - b w^2 = 0.

    Returns ``((u, v, w), None)`` when the class splits, ``(None, place)`` with
    an obstructing place otherwise. Raises :class:`SearchBudgetExceeded` when
    splitting is certified but no point of height up to the cap turned up.
    """
    a, b = to_rational(a), to_rational(b)
    c = QuaternionClass(a, b)
    inv = local_invariants(c)
    if not inv.is_zero():
        return None, inv.support[0]
    cap = height_cap or search_budget(DEFAULT_CONIC_HEIGHT_CAP)
    abar, bbar = c.normalized
    pt = _integer_conic_point(abar, bbar, cap)
    if pt is None:
        raise SearchBudgetExceeded(f"no point of height <= {cap} on ({abar}, {bbar})")
    u, v, w = pt
    # a = abar * s^2, b = bbar * t^2 with s, t rational
    s = _rational_sqrt(a / abar)
    t = _rational_sqrt(b / bbar)
    U, V, W = Fraction(u), Fraction(v) / s, Fraction(w) / t
    den = math.lcm(U.denominator, V.denominator, W.denominator)
    ints = [int(x * den) for x in (U, V, W)]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints), None


def _rational_sqrt(x: Fraction) -> Fraction:
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n != x.numerator or d * d != x.denominator:
        raise ValueError(f"{x} is not a rational square")
    return Fraction(n, d)
