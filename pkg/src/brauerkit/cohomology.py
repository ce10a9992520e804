"""Cohomology of finite groups through the standard inhomogeneous complex.

Cochains of degree i are maps ``G^i -> M``; in matrix form the basis of C^i is
indexed by ``(tuple_index, component)`` with tuples ordered lexicographically
(first entry most significant). The coboundary is

    (d phi)(g_1..g_{i+1}) = g_1 . phi(g_2..g_{i+1})
                            + sum_{j=1..i} (-1)^j phi(.., g_j g_{j+1}, ..)
                            + (-1)^{i+1} phi(g_1..g_i).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .arith import factorize
from .errors import DimensionOverflow, NotAnAction, NotASubgroup
from .groups import AbelianInvariants, FiniteGroup, GModule
from .snf import (RANK_PRIME, exact_rank, invariant_factors, local_smith,
                  rank_mod_prime, smith_diagonal, subquotient_invariants)

__all__ = ["AbelianInvariants", "Cochain", "boundary_matrix", "coboundary",
           "cohomology", "cyclic_cohomology", "permutation_module"]

DEFAULT_ROW_CAP = 2 * 10**6
MAX_DEGREE = 3
_SECOND_PRIME = 2147483629


@dataclass(frozen=True)
class Cochain:
    """A map ``G^degree -> M`` stored as ``{tuple: vector}``."""

    degree: int
    values: dict

    @classmethod
    def from_vector(cls, G: FiniteGroup, rank: int, degree: int, vec) -> "Cochain":
        vec = list(vec)
        vals = {}
        for k, t in enumerate(itertools.product(G.elements(), repeat=degree)):
            vals[t] = tuple(int(x) for x in vec[k * rank:(k + 1) * rank])
        return cls(degree, vals)

    def to_vector(self, G: FiniteGroup) -> list[int]:
        out = []
        for t in itertools.product(G.elements(), repeat=self.degree):
            out.extend(self.values[t])
        return out


def coboundary(M: GModule, phi: Cochain) -> Cochain:
    """Apply d to a cochain by evaluating the defining formula pointwise."""
    G, i, m = M.group, phi.degree, M.modulus
    out = {}
    for t in itertools.product(G.elements(), repeat=i + 1):
        acc = M.rho(t[0]).dot(np.array(phi.values[t[1:]], dtype=object))
        for j in range(1, i + 1):
            merged = t[:j - 1] + (G.mul(t[j - 1], t[j]),) + t[j + 1:]
            acc = acc + (-1) ** j * np.array(phi.values[merged], dtype=object)
        acc = acc + (-1) ** (i + 1) * np.array(phi.values[t[:i]], dtype=object)
        if m:
            acc = acc % m
        out[t] = tuple(int(x) for x in acc)
    return Cochain(i + 1, out)


def _check_size(G: FiniteGroup, M: GModule, i: int, row_cap: int, max_degree: int):
    if i < 0:
        raise ValueError("degree must be non-negative")
    if i > max_degree:
        raise DimensionOverflow(f"degree {i} exceeds the cap {max_degree}")
    rows = G.order ** (i + 1) * M.rank
    if rows > row_cap:
        raise DimensionOverflow(f"n^(i+1) r = {rows} exceeds the cap {row_cap}")


def boundary_matrix(G: FiniteGroup, M: GModule, i: int, *,
                    row_cap: int = DEFAULT_ROW_CAP,
                    max_degree: int = MAX_DEGREE + 1) -> np.ndarray:
    """Matrix of d: C^i -> C^(i+1), shape ``(n^(i+1) r, n^i r)``."""
    _check_size(G, M, i, row_cap, max_degree)
    n, r = G.order, M.rank
    rho = np.array([np.array(A, dtype=object) for A in M.action], dtype=object)
    big = max((abs(int(x)) for x in rho.ravel()), default=0) >= 2**31
    dtype = object if big else np.int64
    rho = rho.astype(dtype).reshape(n, r, r)
    tab = np.array(G.table, dtype=np.int64)

    nrow, ncol = n ** (i + 1), n ** i
    tuples = np.indices((n,) * (i + 1)).reshape(i + 1, -1)  # shape (i+1, nrow)
    weights = n ** np.arange(i - 1, -1, -1, dtype=np.int64) if i else np.zeros(0, np.int64)

    def index(cols):  # cols: list of i arrays
        if not cols:
            return np.zeros(nrow, dtype=np.int64)
        return sum(w * c for w, c in zip(weights, cols))

    D = np.zeros((nrow, r, ncol, r), dtype=dtype)
    rows = np.arange(nrow)
    eye = np.eye(r, dtype=dtype)
    # g_1 acting on phi(g_2..g_{i+1})
    c0 = index([tuples[k] for k in range(1, i + 1)])
    for a in range(r):
        for b in range(r):
            np.add.at(D, (rows, a, c0, b), rho[tuples[0], a, b])
    for j in range(1, i + 1):
        cols = [tuples[k] for k in range(j - 1)]
        cols.append(tab[tuples[j - 1], tuples[j]])
        cols += [tuples[k] for k in range(j + 1, i + 1)]
        cj = index(cols)
        for a in range(r):
            np.add.at(D, (rows, a, cj, a), (-1) ** j * eye[a, a])
    cl = index([tuples[k] for k in range(i)])
    for a in range(r):
        np.add.at(D, (rows, a, cl, a), (-1) ** (i + 1) * eye[a, a])
    D = D.reshape(nrow * r, ncol * r)
    if M.modulus:
        D = D % M.modulus
    return D


def _rank_over_q(A: np.ndarray, upper: int) -> int:
    """Exact rank of an integer matrix given an a-priori upper bound.

    Ranks mod p never exceed the rank over Q, so a modular rank equal to the
    upper bound is certified; otherwise fall back to exact elimination.
    """
    if A.size == 0:
        return 0
    if A.dtype != object:
        for p in (RANK_PRIME, _SECOND_PRIME):
            if rank_mod_prime(A, p) == upper:
                return upper
    return exact_rank(A)


def _local_part(A: np.ndarray | None, B: np.ndarray | None, N: int, p: int, e: int):
    """Elementary divisors of ker(A)/im(B) over Z/p^e; both maps act on R^N."""
    q = p ** e
    if A is None:
        vals, T, Tinv = [e] * N, None, None
    else:
        vals, T, Tinv = local_smith(A, p, e, track=B is not None)
    J = [j for j in range(N) if vals[j] >= 1]
    if B is None or not J:
        return [p ** vals[j] for j in J]
    if T is None:
        Tinv = np.eye(N, dtype=np.int64 if q < 2**24 else object)
    Bq = np.array(B, dtype=Tinv.dtype) % q
    Y = Tinv.dot(Bq) % q
    rest = [j for j in range(N) if vals[j] == 0]
    if rest and np.any(Y[rest] != 0):
        raise NotAnAction("d o d != 0: the action is not a homomorphism mod m")
    Z = np.zeros((len(J), Y.shape[1]), dtype=object)
    for row, j in enumerate(J):
        shift = p ** (e - vals[j])
        yj = np.array(Y[j], dtype=object)
        if np.any(yj % shift != 0):
            raise NotAnAction("d o d != 0: the action is not a homomorphism mod m")
        Z[row] = (yj // shift) % (p ** vals[j])
    P = np.concatenate([np.diag([p ** vals[j] for j in J]).astype(object), Z], axis=1)
    P = P.astype(np.int64) if q < 2**24 else P
    vals2, _, _ = local_smith(P, p, e)
    return [p ** vals2[t] for t in range(len(J)) if vals2[t] >= 1]


def cohomology(G: FiniteGroup, M: GModule, i: int, *,
               row_cap: int = DEFAULT_ROW_CAP,
               max_degree: int = MAX_DEGREE) -> AbelianInvariants:
    """H^i(G, M) computed as ker(d_i) / im(d_{i-1}) in the standard complex."""
    _check_size(G, M, i, row_cap, max_degree)
    A = boundary_matrix(G, M, i, row_cap=row_cap, max_degree=max_degree + 1)
    B = boundary_matrix(G, M, i - 1, row_cap=row_cap) if i > 0 else None
    N = G.order ** i * M.rank
    m = M.modulus
    if m == 0:
        if B is None:
            return AbelianInvariants(N - exact_rank(A), ())
        diag = smith_diagonal(B)
        rank_b = len(diag)
        rank_a = _rank_over_q(A, N - rank_b)
        return AbelianInvariants(N - rank_a - rank_b, tuple(invariant_factors(diag)))
    if m == 1:
        return AbelianInvariants()
    elementary = []
    for p, e in factorize(m).items():
        elementary += _local_part(A, B, N, p, e)
    return AbelianInvariants(0, tuple(elementary))


def _matpow(S: np.ndarray, k: int, m: int) -> np.ndarray:
    R = np.eye(S.shape[0], dtype=object)
    for _ in range(k):
        R = R.dot(S)
        if m:
            R = R % m
    return R


def cyclic_cohomology(n: int, s_action, modulus: int, i: int) -> AbelianInvariants:
    """H^i(Z/n, M) from the periodic resolution.

    With s the generator and N = 1 + s + ... + s^(n-1): H^0 = M^G, even i > 0
    gives M^G / N(M), odd i gives ker(N) / (s - 1) M.
    """
    if i < 0:
        raise ValueError("degree must be non-negative")
    S = np.array(s_action, dtype=object)
    S = S.reshape(S.shape[0], -1)
    m = modulus
    if m:
        S = S % m
    r = S.shape[0]
    eye = np.eye(r, dtype=object)
    D = _matpow(S, n, m) - eye
    if np.any((D % m if m else D) != 0):
        raise NotAnAction("s^n is not the identity")
    if m == 1:
        return AbelianInvariants()
    s_minus_1 = S - eye
    norm = sum((_matpow(S, k, m) for k in range(n)), np.zeros((r, r), dtype=object))
    if i == 0:
        free, tors = subquotient_invariants(s_minus_1, None, m, ncols=r)
    elif i % 2 == 0:
        free, tors = subquotient_invariants(s_minus_1, norm, m, ncols=r)
    else:
        free, tors = subquotient_invariants(norm, s_minus_1, m, ncols=r)
    return AbelianInvariants(free, tuple(tors))


def left_cosets(G: FiniteGroup, H) -> list[tuple]:
    """Left cosets gH, each sorted, ordered by their least element."""
    H = sorted(set(H))
    seen, cosets = set(), []
    for g in G.elements():
        if g in seen:
            continue
        c = tuple(sorted(G.mul(g, h) for h in H))
        seen.update(c)
        cosets.append(c)
    return cosets


def permutation_module(G: FiniteGroup, H, modulus: int = 0) -> GModule:
    """Z[G/H]: G permutes the left cosets of H by left multiplication."""
    H = set(int(h) for h in H)
    if not G.is_subgroup(H):
        raise NotASubgroup(f"{sorted(H)} is not a subgroup")
    cosets = left_cosets(G, H)
    where = {x: k for k, c in enumerate(cosets) for x in c}
    k = len(cosets)
    mats = []
    for g in G.elements():
        P = np.zeros((k, k), dtype=object)
        for c, coset in enumerate(cosets):
            P[where[G.mul(g, coset[0])], c] = 1
        mats.append(P)
    return GModule(G, tuple(mats), modulus)
