"""Smith normal form over Z and over Z/p^e, and exact ranks.

The integer routine works on Python ints (no overflow); the local routine
works on int64 numpy arrays reduced mod p^e, which stay bounded.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

# 2^31 - 1; products of two residues fit in int64
RANK_PRIME = 2147483647


def _as_rows(A) -> list[list[int]]:
    if isinstance(A, np.ndarray):
        return [[int(x) for x in row] for row in A.tolist()]
    return [[int(x) for x in row] for row in A]


def smith_diagonal(A) -> list[int]:
    """Nonzero diagonal entries of a Smith-type diagonalization of A over Z.

    Pivots are chosen by minimal absolute value; the returned entries are
    positive but not yet arranged into a divisibility chain (see
    :func:`invariant_factors`).
    """
    M = [row[:] for row in _as_rows(A)]
    M = [row for row in M if any(row)]
    diag = []
    while M:
        ncols = len(M[0])
        # pivot: entry of least absolute value
        best = None
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        while True:
            pivot = M[pi][pj]
            done = True
            # clear the pivot column
            for i, row in enumerate(M):
                if i == pi or row[pj] == 0:
                    continue
                q = row[pj] // pivot
                if q:
                    prow = M[pi]
                    M[i] = [x - q * y for x, y in zip(row, prow)]
                if M[i][pj]:
                    done = False
            # clear the pivot row
            prow = M[pi]
            for j in range(ncols):
                if j == pj or prow[j] == 0:
                    continue
                q = prow[j] // pivot
                if q:
                    for row in M:
                        if row[pj]:
                            row[j] -= q * row[pj]
                if prow[j]:
                    done = False
            if done:
                break
            # move pivot to a smaller remainder in its row or column
            cands = [(abs(M[i][pj]), i, pj) for i in range(len(M)) if M[i][pj]]
            cands += [(abs(x), pi, j) for j, x in enumerate(M[pi]) if x]
            _, pi, pj = min(cands)
        diag.append(abs(M[pi][pj]))
        del M[pi]
        for row in M:
            del row[pj]
        M = [row for row in M if any(row)]
    return diag


def invariant_factors(diagonal: Sequence[int]) -> list[int]:
    """Turn a list of positive integers into the divisibility chain of the
    group they present: d_1 | d_2 | ... (entries equal to 1 dropped)."""
    d = sorted(int(x) for x in diagonal if x != 0)
    # (a, b) -> (gcd, lcm) until the chain divides
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = math.gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return [x for x in d if x != 1]


def rank_mod_prime(A: np.ndarray, p: int = RANK_PRIME) -> int:
    """Rank of an integer matrix over F_p (p < 2^31)."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    rank = 0
    col = 0
    while rank < rows and col < cols:
        nz = np.nonzero(M[rank:, col])[0]
        if nz.size == 0:
            col += 1
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, col]), -1, p)
        M[rank] = (M[rank] * inv) % p
        below = rank + 1 + np.nonzero(M[rank + 1:, col])[0]
        if below.size:
            f = M[below, col].reshape(-1, 1)
            M[below] = (M[below] - f * M[rank]) % p
        rank += 1
        col += 1
    return rank


def exact_rank(A) -> int:
    """Rank over Q, by Smith diagonalization (exact, slow for large input)."""
    return len(smith_diagonal(A))


def local_smith(A: np.ndarray, p: int, e: int, track: bool = False):
    """Diagonalize A over Z/p^e.

    Returns ``(vals, T, Tinv)`` where ``vals[j]`` is the p-valuation (``e``
    meaning zero) of the j-th diagonal entry of ``S A T``, for j over all
    columns of A. ``T``/``Tinv`` (column transform and its inverse) are only
    computed when ``track`` is set; otherwise they are None.
    """
    q = p ** e
    dtype = np.int64 if q < 2**24 else object
    M = np.array(A, dtype=dtype) % q
    rows, cols = M.shape
    T = np.eye(cols, dtype=dtype) if track else None
    Tinv = np.eye(cols, dtype=dtype) if track else None
    vals = [e] * cols
    pw = [p ** k for k in range(e + 1)]
    t = 0
    while t < min(rows, cols):
        # cheap pass: a unit in the current column
        col = M[t:, t]
        units = np.nonzero(col % p != 0)[0]
        if units.size:
            i, j, k = units[0], 0, 0
        else:
            sub = M[t:, t:]
            val = np.full(sub.shape, e, dtype=np.int64)
            rem = sub.copy()
            for k_ in range(e):
                hit = (rem % p != 0) & (val == e)
                val[hit] = k_
                rem = rem // p
            k = int(val.min())
            if k == e:
                break
            i, j = np.argwhere(val == k)[0]
        i, j = int(i) + t, int(j) + t
        if i != t:
            M[[t, i]] = M[[i, t]]
        if j != t:
            M[:, [t, j]] = M[:, [j, t]]
            if track:
                T[:, [t, j]] = T[:, [j, t]]
                Tinv[[t, j]] = Tinv[[j, t]]
        piv = int(M[t, t])
        uinv = pow(piv // pw[k], -1, q)
        # rows below: subtract multiples of the pivot row
        below = t + 1 + np.nonzero(M[t + 1:, t])[0]
        if below.size:
            c = ((M[below, t] // pw[k]) * uinv) % q
            M[below] = (M[below] - c.reshape(-1, 1) * M[t]) % q
        # columns to the right: only row t is affected now
        right = t + 1 + np.nonzero(M[t, t + 1:])[0]
        if right.size:
            c = ((M[t, right] // pw[k]) * uinv) % q
            if track:
                T[:, right] = (T[:, right] - T[:, [t]] * c.reshape(1, -1)) % q
                Tinv[t] = (Tinv[t] + (c.reshape(-1, 1) * Tinv[right]).sum(axis=0)) % q
            M[t, right] = 0
        vals[t] = k
        t += 1
    return vals, T, Tinv


def column_echelon(A) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Unimodular column reduction ``A U = E`` over Z.

    Returns ``(E, U, Uinv)`` as row-major lists. The nonzero columns of E come
    first and are in echelon form; the columns of U matching zero columns of
    E form a basis of the integer kernel of A.
    """
    A = _as_rows(A)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    E = [r[:] for r in A]
    U = [[int(i == j) for j in range(cols)] for i in range(cols)]
    Uinv = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def addcol(dst, src, c):  # col_dst += c * col_src
        for M in (E, U):
            for r in M:
                r[dst] += c * r[src]
        Uinv[src] = [x - c * y for x, y in zip(Uinv[src], Uinv[dst])]

    def swapcol(a, b):
        for M in (E, U):
            for r in M:
                r[a], r[b] = r[b], r[a]
        Uinv[a], Uinv[b] = Uinv[b], Uinv[a]

    piv = 0
    for i in range(rows):
        if piv >= cols:
            break
        while True:
            nz = [j for j in range(piv, cols) if E[i][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(E[i][j]))
            if j0 != piv:
                swapcol(piv, j0)
            others = [j for j in range(piv + 1, cols) if E[i][j]]
            if not others:
                break
            for j in others:
                addcol(j, piv, -(E[i][j] // E[i][piv]))
        if any(E[i][j] for j in range(piv, cols)):
            piv += 1
    return E, U, Uinv


def integer_kernel(A) -> list[list[int]]:
    """Basis (as a list of vectors) of {x in Z^n : A x = 0}."""
    E, U, _ = column_echelon(A)
    cols = len(U)
    zero = [j for j in range(cols) if all(r[j] == 0 for r in E)]
    return [[U[i][j] for i in range(cols)] for j in zero]


def _solve_in_basis(basis: list[list[int]], vectors: list[list[int]]) -> list[list[int]]:
    """Integer coordinates of ``vectors`` in a lattice basis (columns of B)."""
    k = len(basis)
    n = len(basis[0]) if basis else 0
    B = [[basis[j][i] for j in range(k)] for i in range(n)]
    E, U, Uinv = column_echelon(B)
    # B U = E with the first k columns nonzero, so coordinates c = U E^-1 v
    coords = []
    for v in vectors:
        # solve E y = v by forward substitution on the echelon pivots
        y = [0] * k
        resid = list(v)
        col = 0
        for i in range(n):
            if col < k and E[i][col] != 0:
                if resid[i] % E[i][col]:
                    raise ArithmeticError("vector not in lattice")
                y[col] = resid[i] // E[i][col]
                for r in range(n):
                    resid[r] -= y[col] * E[r][col]
                col += 1
        if any(resid):
            raise ArithmeticError("vector not in lattice")
        coords.append([sum(U[a][b] * y[b] for b in range(k)) for a in range(k)])
    return coords


def subquotient_invariants(A, B, m: int = 0, ncols: int | None = None):
    """Invariants ``(free_rank, torsion)`` of ker(A) / im(B) over Z or Z/m.

    A is r x n (or None for the zero map), B is n x s (or None). Exact and
    meant for small matrices.
    """
    n = ncols if ncols is not None else (len(_as_rows(A)[0]) if A is not None
                                         else len(_as_rows(B)))
    A = _as_rows(A) if A is not None and len(A) else [[0] * n]
    Bcols = [list(c) for c in zip(*_as_rows(B))] if B is not None and len(B) else []
    if m == 0:
        K = integer_kernel(A)
        if not K:
            return 0, []
        coords = _solve_in_basis(K, Bcols) if Bcols else []
        diag = smith_diagonal([list(r) for r in zip(*coords)]) if coords else []
        return len(K) - len(diag), invariant_factors(diag)
    r = len(A)
    aug = [row + [m * int(i == j) for j in range(r)] for i, row in enumerate(A)]
    gens = [v[:n] for v in integer_kernel(aug)]
    # basis of L from its generators: nonzero columns of a column echelon form
    G = [list(r_) for r_ in zip(*gens)]
    E, _, _ = column_echelon(G)
    basis = [[E[i][j] for i in range(n)] for j in range(len(E[0]))
             if any(E[i][j] for i in range(n))]
    rel = Bcols + [[m * int(i == j) for i in range(n)] for j in range(n)]
    coords = _solve_in_basis(basis, rel)
    diag = smith_diagonal([list(r_) for r_ in zip(*coords)])
    return len(basis) - len(diag), invariant_factors(diag)
