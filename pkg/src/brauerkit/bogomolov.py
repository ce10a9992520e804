"""The central extension 0 -> L^2 W -> G~ -> W -> 0 with W = F_p^4 and cocycle
(w1, w2) -> w1 ^ w2, together with checks of its structural lemmas.

Elements are pairs (w, m) with w in F_p^4 and m in L^2 W = F_p^6; bivector
coordinates are ordered e12, e13, e14, e23, e24, e34. The group law is

    (w1, m1)(w2, m2) = (w1 + w2, m1 + m2 + w1 ^ w2).

The group (order p^10) is never listed; checks run over the parametrization.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {pair: k for k, pair in enumerate(PAIRS)}


def _check_prime(p: int):
    if p == 2:
        raise ValueError("the construction needs an odd prime")
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class FpVector:
    p: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != 4:
            raise ValueError("W has dimension 4")
        object.__setattr__(self, "coords", tuple(int(c) % self.p for c in self.coords))

    @classmethod
    def basis(cls, p: int, i: int) -> "FpVector":
        return cls(p, tuple(int(k == i) for k in range(4)))

    def __add__(self, other: "FpVector") -> "FpVector":
        return FpVector(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c: int) -> "FpVector":
        return FpVector(self.p, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class Bivector:
    p: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != 6:
            raise ValueError("L^2 W has dimension 6")
        object.__setattr__(self, "coords", tuple(int(c) % self.p for c in self.coords))

    @classmethod
    def zero(cls, p: int) -> "Bivector":
        return cls(p, (0,) * 6)

    @classmethod
    def basis(cls, p: int, i: int, j: int) -> "Bivector":
        """e_i ^ e_j for 1 <= i < j <= 4."""
        k = PAIR_INDEX[(i - 1, j - 1)]
        return cls(p, tuple(int(t == k) for t in range(6)))

    def __add__(self, other: "Bivector") -> "Bivector":
        return Bivector(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c: int) -> "Bivector":
        return Bivector(self.p, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class WGroupElement:
    w: FpVector
    m: Bivector

    def __post_init__(self):
        if self.w.p != self.m.p:
            raise ValueError("components live over different primes")

    @property
    def p(self) -> int:
        return self.w.p

    @classmethod
    def identity(cls, p: int) -> "WGroupElement":
        return cls(FpVector(p, (0,) * 4), Bivector.zero(p))

    def __mul__(self, other: "WGroupElement") -> "WGroupElement":
        return group_mul(self, other)

    def key(self) -> tuple:
        return self.w.coords + self.m.coords


def wedge(u: FpVector, v: FpVector) -> Bivector:
    if u.p != v.p:
        raise ValueError("vectors over different primes")
    a, b = u.coords, v.coords
    return Bivector(u.p, tuple(a[i] * b[j] - a[j] * b[i] for i, j in PAIRS))


def group_mul(g1: WGroupElement, g2: WGroupElement) -> WGroupElement:
    return WGroupElement(g1.w + g2.w, g1.m + g2.m + wedge(g1.w, g2.w))


def group_inv(g: WGroupElement) -> WGroupElement:
    # (w, m)(-w, -m) = (0, w ^ (-w)) = identity
    return WGroupElement(g.w.scale(-1), g.m.scale(-1))


def commutator(g1: WGroupElement, g2: WGroupElement) -> WGroupElement:
    return g1 * g2 * group_inv(g1) * group_inv(g2)


def group_pow(g: WGroupElement, k: int) -> WGroupElement:
    out = WGroupElement.identity(g.p)
    for _ in range(k):
        out = out * g
    return out


def closure(gens: list[WGroupElement]) -> list[WGroupElement]:
    """The subgroup generated by ``gens`` (finite, so products suffice)."""
    p = gens[0].p
    e = WGroupElement.identity(p)
    seen = {e.key(): e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y.key() not in seen:
                    seen[y.key()] = y
                    nxt.append(y)
        frontier = nxt
    return list(seen.values())


# ---------------------------------------------------------------------------
# vectorized arithmetic on arrays of shape (..., 4) and (..., 6)


def wedge_batch(U: np.ndarray, V: np.ndarray, p: int) -> np.ndarray:
    cols = [U[..., i] * V[..., j] - U[..., j] * V[..., i] for i, j in PAIRS]
    return np.stack(cols, axis=-1) % p


def mul_batch(W1, M1, W2, M2, p):
    return (W1 + W2) % p, (M1 + M2 + wedge_batch(W1, W2, p)) % p


def inv_batch(W, M, p):
    return (-W) % p, (-M) % p


def all_vectors(p: int, dim: int = 4) -> np.ndarray:
    return np.array(list(itertools.product(range(p), repeat=dim)), dtype=np.int64)


def associativity_sample(p: int, samples: int, rng: np.random.Generator) -> int:
    """Number of random triples violating associativity (expected 0)."""
    W = rng.integers(0, p, size=(3, samples, 4))
    M = rng.integers(0, p, size=(3, samples, 6))
    lw, lm = mul_batch(*mul_batch(W[0], M[0], W[1], M[1], p), W[2], M[2], p)
    rw, rm = mul_batch(W[0], M[0], *mul_batch(W[1], M[1], W[2], M[2], p), p)
    bad = np.any(lw != rw, axis=1) | np.any(lm != rm, axis=1)
    return int(bad.sum())


def associativity_exhaustive(elements: list[WGroupElement]) -> int:
    """Violations of (xy)z = x(yz) over all triples from ``elements``."""
    p = elements[0].p
    W = np.array([g.w.coords for g in elements], dtype=np.int64)
    M = np.array([g.m.coords for g in elements], dtype=np.int64)
    n = len(elements)
    # all pairs (y, z) once, then sweep x
    Y = np.repeat(np.arange(n), n)
    Z = np.tile(np.arange(n), n)
    yzw, yzm = mul_batch(W[Y], M[Y], W[Z], M[Z], p)
    bad = 0
    for x in range(n):
        xw, xm = np.broadcast_to(W[x], yzw.shape), np.broadcast_to(M[x], yzm.shape)
        lw, lm = mul_batch(*mul_batch(xw, xm, W[Y], M[Y], p), W[Z], M[Z], p)
        rw, rm = mul_batch(xw, xm, yzw, yzm, p)
        bad += int((np.any(lw != rw, axis=1) | np.any(lm != rm, axis=1)).sum())
    return bad


def commutators_batch(W1, M1, W2, M2, p):
    """[g1, g2] = g1 g2 g1^-1 g2^-1 by the group law."""
    aw, am = mul_batch(W1, M1, W2, M2, p)
    aw, am = mul_batch(aw, am, *inv_batch(W1, M1, p), p)
    return mul_batch(aw, am, *inv_batch(W2, M2, p), p)


def _rank_mod_p(A: np.ndarray, p: int) -> int:
    A = np.array(A, dtype=np.int64) % p
    rank, rows, cols = 0, A.shape[0], A.shape[1]
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r, c]), None)
        if piv is None:
            continue
        A[[rank, piv]] = A[[piv, rank]]
        A[rank] = A[rank] * pow(int(A[rank, c]), -1, p) % p
        others = [r for r in range(rows) if r != rank and A[r, c]]
        A[others] = (A[others] - np.outer(A[others, c], A[rank])) % p
        rank += 1
    return rank


def commutator_check(elements: list[WGroupElement]) -> dict:
    """[g1, g2] == (0, 2 w1 ^ w2) over all pairs of ``elements``."""
    p = elements[0].p
    W = np.array([g.w.coords for g in elements], dtype=np.int64)
    M = np.array([g.m.coords for g in elements], dtype=np.int64)
    n = len(elements)
    I, J = np.repeat(np.arange(n), n), np.tile(np.arange(n), n)
    cw, cm = commutators_batch(W[I], M[I], W[J], M[J], p)
    expected = 2 * wedge_batch(W[I], W[J], p) % p
    return {
        "pairs": n * n,
        "formula_holds": bool(not np.any(cw) and np.array_equal(cm, expected)),
        "span_rank": _rank_mod_p(np.unique(cm, axis=0), p),
    }


def verify_structure(p: int, seed: int = 0, samples: int = 10**5) -> dict:
    """Exponent p, derived subgroup = center = 0 x L^2 W, cocycle condition."""
    _check_prime(p)
    if p > 5:
        raise ValueError("exhaustive checks are limited to p <= 5")
    rng = np.random.default_rng(seed)
    vecs = all_vectors(p)
    span_m = np.vstack([np.zeros((1, 6), np.int64), np.eye(6, dtype=np.int64)])
    # (a) g^p = 1 for w in F_p^4 and m in a spanning set
    Wg = np.repeat(vecs, len(span_m), axis=0)
    Mg = np.tile(span_m, (len(vecs), 1))
    pw, pm = np.zeros_like(Wg), np.zeros_like(Mg)
    for _ in range(p):
        pw, pm = mul_batch(pw, pm, Wg, Mg, p)
    exponent_ok = not np.any(pw) and not np.any(pm)
    # a nonidentity element exists, so the exponent is exactly p
    exponent_sharp = bool(np.any(Wg))
    # (b) commutators over all pairs w1, w2 (the m parts drawn at random)
    I, J = np.repeat(np.arange(len(vecs)), len(vecs)), np.tile(np.arange(len(vecs)), len(vecs))
    M1 = rng.integers(0, p, size=(len(I), 6))
    M2 = rng.integers(0, p, size=(len(I), 6))
    cw, cm = commutators_batch(vecs[I], M1, vecs[J], M2, p)
    comm_in_center = not np.any(cw)
    comm_formula = np.array_equal(cm, 2 * wedge_batch(vecs[I], vecs[J], p) % p)
    derived_rank = _rank_mod_p(np.unique(cm, axis=0), p)
    # (c) (w, m) central iff w = 0: every w != 0 fails to commute with some v
    nonzero = vecs[np.any(vecs != 0, axis=1)]
    wv = wedge_batch(nonzero[:, None, :], vecs[None, :, :], p)
    noncentral = bool(np.all(np.any(wv.reshape(len(nonzero), -1) != 0, axis=1)))
    center_order = p**6 if noncentral else None
    assoc_bad = associativity_sample(p, samples, rng)
    checks = {
        "associativity_sample": assoc_bad == 0,
        "exponent_p": bool(exponent_ok and exponent_sharp),
        "commutators_central": bool(comm_in_center),
        "commutator_formula": bool(comm_formula),
        "derived_subgroup_is_L2W": derived_rank == 6,
        "center_is_L2W": noncentral,
    }
    return {
        "prime": p,
        "exponent_checked": int(len(Wg)),
        "commutator_pairs": int(len(I)),
        "derived_rank": derived_rank,
        "center_order": center_order,
        "associativity_samples": samples,
        "associativity_failures": assoc_bad,
        "checks": checks,
    }


# ---------------------------------------------------------------------------
# quotients by a central subgroup <z>


def bivector_decomposable(z: Bivector) -> bool:
    """z = u ^ v for some u, v iff z ^ z = 0 (Pluecker relation in dim 4)."""
    _check_prime(z.p)
    c = z.coords
    return (2 * (c[0] * c[5] - c[1] * c[4] + c[2] * c[3])) % z.p == 0


def decomposable_by_search(z: Bivector) -> bool:
    """Oracle: try every pair u, v in F_p^4."""
    p = z.p
    vecs = all_vectors(p)
    target = np.array(z.coords, dtype=np.int64)
    for u in vecs:
        if np.any(np.all(wedge_batch(u[None, :], vecs, p) == target, axis=1)):
            return True
    return False


def _in_line(X: np.ndarray, z: np.ndarray, p: int) -> np.ndarray:
    """Rows of X lying in the F_p-line spanned by z."""
    out = np.zeros(X.shape[:-1], dtype=bool)
    for c in range(p):
        out |= np.all(X == (c * z) % p, axis=-1)
    return out


def quotient_center_order(z: Bivector) -> dict:
    """|Z(G~/<z>)| by the bilinear criterion: (w, m) is central modulo <z> iff
    2 w ^ v lies in <z> for every v in F_p^4."""
    _check_prime(z.p)
    if z.is_zero():
        raise ValueError("z must be nonzero")
    p = z.p
    vecs = all_vectors(p)
    zz = np.array(z.coords, dtype=np.int64)
    wv = 2 * wedge_batch(vecs[:, None, :], vecs[None, :, :], p) % p
    central_w = int(np.all(_in_line(wv, zz, p), axis=1).sum())
    order = central_w * p**5
    return {
        "order": order,
        "central_w_count": central_w,
        "decomposable": bivector_decomposable(z),
        "exceeds_p5": order > p**5,
    }


def quotient_center_order_bruteforce(z: Bivector) -> int:
    """Oracle: count elements x of G~ whose commutator with every generator
    (e_i, 0) and (0, e_ij) of G~ lands in <z>, using only the group law, then
    divide by |<z>|."""
    p = z.p
    W = np.repeat(all_vectors(p), p**6, axis=0)
    M = np.tile(all_vectors(p, 6), (p**4, 1))
    zz = np.array(z.coords, dtype=np.int64)
    ok = np.ones(len(W), dtype=bool)
    gens = [(np.eye(4, dtype=np.int64)[i], np.zeros(6, np.int64)) for i in range(4)]
    gens += [(np.zeros(4, np.int64), np.eye(6, dtype=np.int64)[k]) for k in range(6)]
    for gw, gm in gens:
        GW, GM = np.broadcast_to(gw, W.shape), np.broadcast_to(gm, M.shape)
        cw, cm = commutators_batch(W, M, GW, GM, p)
        ok &= ~np.any(cw != 0, axis=1) & _in_line(cm, zz, p)
    return int(ok.sum()) // p


def wedge_hits_line(z: Bivector) -> bool:
    """Do independent v, v' exist with v ^ v' a nonzero multiple of z?"""
    p = z.p
    vecs = all_vectors(p)
    zz = np.array(z.coords, dtype=np.int64)
    wv = wedge_batch(vecs[:, None, :], vecs[None, :, :], p)
    hits = _in_line(wv, zz, p) & np.any(wv != 0, axis=-1)
    return bool(hits.any())


def commutator_product_witness(m: Bivector) -> list[tuple[FpVector, FpVector]]:
    """Pairs (u_k, v_k) with 2 sum u_k ^ v_k = m, so prod [(u_k, 0), (v_k, 0)] = (0, m)."""
    p = m.p
    _check_prime(p)
    if m.is_zero():
        raise ValueError("m must be nonzero")
    half = (p + 1) // 2
    pairs = []
    for k, (i, j) in enumerate(PAIRS):
        c = m.coords[k]
        if c:
            pairs.append((FpVector.basis(p, i), FpVector.basis(p, j).scale(c * half)))
    return pairs


def witness_product(pairs: list[tuple[FpVector, FpVector]], lift_m=None) -> WGroupElement:
    """Multiply out the commutators of lifts (u, m_u), (v, m_v) of the pairs."""
    p = pairs[0][0].p
    out = WGroupElement.identity(p)
    for k, (u, v) in enumerate(pairs):
        mu = lift_m[k][0] if lift_m else Bivector.zero(p)
        mv = lift_m[k][1] if lift_m else Bivector.zero(p)
        out = out * commutator(WGroupElement(u, mu), WGroupElement(v, mv))
    return out
