"""Finite groups given by multiplication tables, and modules over them."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .arith import factorize
from .errors import NotAGroup, NotAnAction
from .snf import invariant_factors

PERMUTATION_ORDER_CAP = 10**4


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank x Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... | d_k."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(invariant_factors(self.torsion)))

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 when trivial)."""
        return self.torsion[-1] if self.torsion else 1

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ([f"Z^{self.free_rank}"] if self.free_rank > 1 else
                 ["Z"] if self.free_rank == 1 else [])
        parts += [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": str(self.free_rank),
                "torsion": [str(d) for d in self.torsion]}


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on the elements ``0 .. order-1``.

    ``table[g][h]`` is the index of ``g*h``. Optional ``generators`` record the
    elements a group was built from (used when a module action is only given
    on generators).
    """

    table: tuple
    identity: int = 0
    name: str = ""
    generators: tuple = ()
    inverses: tuple = field(init=False)

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        e = self.identity
        inv = [None] * n
        for g in range(n):
            for h in range(n):
                if table[g][h] == e:
                    inv[g] = h
                    break
        if any(i is None for i in inv):
            raise NotAGroup("some element has no inverse")
        object.__setattr__(self, "inverses", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def elements(self) -> range:
        return range(self.order)

    def validate(self, samples: int = 20000, rng: random.Random | None = None) -> None:
        """Check the group axioms (exhaustively up to order 64)."""
        n, t, e = self.order, self.table, self.identity
        for g in range(n):
            if t[g][e] != g or t[e][g] != g:
                raise NotAGroup(f"{e} is not a two-sided identity")
            if t[g][self.inverses[g]] != e or t[self.inverses[g]][g] != e:
                raise NotAGroup(f"bad inverse for {g}")
        if n <= 64:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = rng or random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(samples))
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise NotAGroup(f"associativity fails on {(a, b, c)}")

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def closure(self, gens: Iterable[int]) -> frozenset:
        """Subgroup generated by ``gens``."""
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, H: Iterable[int]) -> bool:
        H = set(H)
        if self.identity not in H:
            return False
        return all(self.table[a][b] in H for a in H for b in H) and \
            all(self.inverses[a] in H for a in H)

    def subgroups(self) -> list[frozenset]:
        """All subgroups, as joins of cyclic subgroups (fine for small orders)."""
        cyclic = {self.closure([g]) for g in self.elements()}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for A in frontier:
                for C in cyclic:
                    if not C <= A:
                        J = self.closure(A | C)
                        if J not in found:
                            new.add(J)
            found |= new
            frontier = new
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def to_json(self) -> dict:
        return {"order": str(self.order),
                "table": [[str(x) for x in r] for r in self.table],
                "identity": str(self.identity)}


# ---------------------------------------------------------------------------
# constructors


def group_from_table(table, identity: int = 0, name: str = "") -> FiniteGroup:
    G = FiniteGroup(tuple(map(tuple, table)), identity, name)
    G.validate()
    return G


def group_from_permutations(generators: Sequence[Sequence[int]], name: str = "",
                            cap: int = PERMUTATION_ORDER_CAP) -> FiniteGroup:
    """Close a set of permutations of ``{0..d-1}`` under composition.

    Products compose right to left: ``(g*h)(x) = g(h(x))``. Element 0 is the
    identity and elements ``1..k`` are the generators (duplicates removed).
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise NotAGroup("need at least one generator")
    d = len(gens[0])
    for g in gens:
        if len(g) != d or sorted(g) != list(range(d)):
            raise NotAGroup(f"{g} is not a permutation of 0..{d - 1}")
    ident = tuple(range(d))
    elems = [ident]
    index = {ident: 0}
    gen_idx = []
    for g in gens:
        if g not in index:
            index[g] = len(elems)
            elems.append(g)
        gen_idx.append(index[g])
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = tuple(x[g[k]] for k in range(d))
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                if len(elems) > cap:
                    raise NotAGroup(f"group order exceeds cap {cap}")
        i += 1
    table = [[index[tuple(a[b[k]] for k in range(d))] for b in elems] for a in elems]
    return FiniteGroup(tuple(map(tuple, table)), 0, name, tuple(gen_idx))


def cyclic_group(n: int) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(tuple(map(tuple, table)), 0, f"Z/{n}", (1 % n,))


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    table = [[G.table[a // m][b // m] * m + H.table[a % m][b % m]
              for b in range(n * m)] for a in range(n * m)]
    gens = tuple(g * m + H.identity for g in G.generators) + \
        tuple(G.identity * m + h for h in H.generators)
    return FiniteGroup(tuple(map(tuple, table)), G.identity * m + H.identity,
                       f"{G.name}x{H.name}", gens)


def symmetric_group(d: int) -> FiniteGroup:
    if d < 2:
        return cyclic_group(1)
    cycle = list(range(1, d)) + [0]
    swap = [1, 0] + list(range(2, d))
    return group_from_permutations([swap, cycle] if d > 2 else [swap], f"S{d}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = [(k + 1) % n for k in range(n)]
    ref = [(-k) % n for k in range(n)]
    return group_from_permutations([rot, ref], f"D{n}")


def quaternion_group() -> FiniteGroup:
    """Q8 through its left regular permutation representation."""
    # elements (sign, unit) with unit in 1,i,j,k
    units = ["1", "i", "j", "k"]
    mult = {("1", u): (1, u) for u in units}
    mult.update({(u, "1"): (1, u) for u in units})
    mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in units]
    pos = {x: n for n, x in enumerate(elems)}

    def times(a, b):
        s, u = mult[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    gens = [[pos[times(g, x)] for x in elems] for g in [(1, "i"), (1, "j")]]
    return group_from_permutations(gens, "Q8")


def alternating_group_4() -> FiniteGroup:
    return group_from_permutations([[1, 2, 0, 3], [1, 0, 3, 2]], "A4")


def corpus_groups() -> list[FiniteGroup]:
    """Z/n (n <= 8), Z/2 x Z/2, S3, D4, Q8, A4."""
    groups = [cyclic_group(n) for n in range(1, 9)]
    groups.append(direct_product(cyclic_group(2), cyclic_group(2)))
    groups.append(symmetric_group(3))
    groups.append(dihedral_group(4))
    groups.append(quaternion_group())
    groups.append(alternating_group_4())
    return groups


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True, eq=False)
class GModule:
    """Z^rank (modulus 0) or (Z/modulus)^rank with ``action[g]`` the matrix of g."""

    group: FiniteGroup
    action: tuple
    modulus: int = 0

    def __post_init__(self):
        mats = []
        for a in self.action:
            A = np.array(a, dtype=object).reshape(len(a), -1)
            if self.modulus:
                A = A % self.modulus
            mats.append(A)
        object.__setattr__(self, "action", tuple(mats))
        if len(mats) != self.group.order:
            raise NotAnAction("need one matrix per group element")

    @property
    def rank(self) -> int:
        return self.action[0].shape[0]

    def rho(self, g: int) -> np.ndarray:
        return self.action[g]

    def validate(self) -> None:
        """Check rho(e) = 1 and rho(g) rho(h) = rho(gh) for all pairs."""
        G, m, r = self.group, self.modulus, self.rank
        eye = np.eye(r, dtype=object)
        if not _mat_equal(self.action[G.identity], eye, m):
            raise NotAnAction("identity does not act trivially")
        for g in G.elements():
            for h in G.elements():
                if not _mat_equal(self.action[g].dot(self.action[h]),
                                  self.action[G.mul(g, h)], m):
                    raise NotAnAction(f"rho({g}) rho({h}) != rho({g}*{h})")

    def to_json(self) -> dict:
        return {"rank": str(self.rank), "modulus": str(self.modulus),
                "action": {str(g): [[str(int(x)) for x in row] for row in A.tolist()]
                           for g, A in enumerate(self.action)}}


def _mat_equal(A, B, m: int) -> bool:
    D = np.array(A, dtype=object) - np.array(B, dtype=object)
    if m:
        D = D % m
    return not np.any(D != 0)


def trivial_module(G: FiniteGroup, rank: int = 1, modulus: int = 0) -> GModule:
    eye = np.eye(rank, dtype=object)
    return GModule(G, tuple(eye for _ in G.elements()), modulus)


def module_from_generators(G: FiniteGroup, gen_action: dict, modulus: int = 0) -> GModule:
    """Extend an action given on ``G.generators`` to all of G, then validate."""
    gen_action = {int(k): np.array(v, dtype=object) for k, v in gen_action.items()}
    r = next(iter(gen_action.values())).shape[0]
    mats = {G.identity: np.eye(r, dtype=object)}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, A in gen_action.items():
                y = G.mul(x, s)
                if y not in mats:
                    B = mats[x].dot(A)
                    mats[y] = B % modulus if modulus else B
                    nxt.append(y)
        frontier = nxt
    if len(mats) != G.order:
        raise NotAnAction("generators given do not generate the group")
    M = GModule(G, tuple(mats[g] for g in G.elements()), modulus)
    M.validate()
    return M


def cyclic_module(n: int, s_action, modulus: int = 0) -> GModule:
    """Module over Z/n where the generator 1 acts by ``s_action``."""
    return module_from_generators(cyclic_group(n), {1 % n: s_action} if n > 1 else
                                  {0: np.eye(len(s_action), dtype=object)}, modulus)


# ---------------------------------------------------------------------------
# abelianization


def derived_subgroup(G: FiniteGroup) -> frozenset:
    comms = {G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
             for a in G.elements() for b in G.elements()}
    return G.closure(comms)


def abelian_invariants_of_table(G: FiniteGroup) -> list[int]:
    """Invariant factors of an abelian group, read off from torsion counts.

    For each prime p, ``|A[p^k]| = p^(sum_j min(k, l_j))`` determines the
    partition ``l`` of the p-part.
    """
    n = G.order
    if n == 1:
        return []

    def power(g, k):
        x = G.identity
        for _ in range(k):
            x = G.mul(x, g)
        return x

    elementary = []
    for p, a in factorize(n).items():
        logs = [0]
        k = 1
        while logs[-1] < a:
            cnt = sum(1 for g in G.elements() if power(g, p ** k) == G.identity)
            e = 0
            while p ** (e + 1) <= cnt:
                e += 1
            logs.append(e)
            k += 1
        # number of parts >= k is logs[k] - logs[k-1]
        ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))] + [0]
        for k in range(1, len(ge)):
            elementary += [p ** k] * (ge[k - 1] - ge[k])
    return invariant_factors(elementary)


def quotient_group(G: FiniteGroup, N: frozenset) -> FiniteGroup:
    """G/N for a normal subgroup N."""
    cosets = []
    index = {}
    for g in G.elements():
        if g in index:
            continue
        c = sorted(G.mul(g, x) for x in N)
        for y in c:
            index[y] = len(cosets)
        cosets.append(c[0])
    k = len(cosets)
    table = [[index[G.mul(cosets[a], cosets[b])] for b in range(k)] for a in range(k)]
    return FiniteGroup(tuple(map(tuple, table)), index[G.identity])


def abelianization(G: FiniteGroup) -> AbelianInvariants:
    """Invariants of G/[G,G]."""
    Q = quotient_group(G, derived_subgroup(G))
    return AbelianInvariants(0, tuple(abelian_invariants_of_table(Q)))


# ---------------------------------------------------------------------------
# JSON


def group_from_json(data: dict) -> FiniteGroup:
    if "permutation_generators" in data:
        gens = [[int(x) for x in perm] for perm in data["permutation_generators"]]
        return group_from_permutations(gens, data.get("name", ""))
    table = tuple(tuple(int(x) for x in row) for row in data["table"])
    G = FiniteGroup(table, int(data.get("identity", 0)),
                    data.get("name", ""))
    if "order" in data and int(data["order"]) != G.order:
        raise NotAGroup("order does not match table size")
    G.validate()
    return G


def module_from_json(G: FiniteGroup, data: dict) -> GModule:
    m = int(data.get("modulus", 0))
    action = {int(k): [[int(x) for x in row] for row in v]
              for k, v in data["action"].items()}
    r = int(data["rank"])
    if set(action) == set(G.elements()):
        M = GModule(G, tuple(np.array(action[g], dtype=object).reshape(r, r)
                             for g in G.elements()), m)
        M.validate()
        return M
    if G.generators and set(action) <= set(G.generators) | {G.identity}:
        return module_from_generators(G, action, m)
    raise NotAnAction("action must be given on every element or on the generators")


# ---------------------------------------------------------------------------
# random modules for property checks


def random_unimodular(r: int, rng: random.Random, steps: int = 4):
    """A random integer matrix of determinant +-1 and its exact inverse."""
    P = np.eye(r, dtype=object)
    Pinv = np.eye(r, dtype=object)
    for _ in range(steps if r > 1 else 0):
        a, b = rng.sample(range(r), 2)
        c = rng.choice([-2, -1, 1, 2])
        E = np.eye(r, dtype=object)
        E[a, b] = c
        Einv = np.eye(r, dtype=object)
        Einv[a, b] = -c
        P, Pinv = P.dot(E), Einv.dot(Pinv)
    return P, Pinv


def _cyclic_blocks(n: int) -> list:
    """Small integer matrices whose order divides n."""
    blocks = [[[1]]]
    if n % 2 == 0:
        blocks.append([[-1]])
        blocks.append([[0, 1], [1, 0]])
    if n % 3 == 0:
        blocks.append([[0, -1], [1, -1]])
        blocks.append([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    if n % 4 == 0:
        blocks.append([[0, -1], [1, 0]])
    if n % 6 == 0:
        blocks.append([[1, -1], [1, 0]])
    return blocks


def random_cyclic_action(n: int, rank: int, rng: random.Random):
    """Random integer matrix S of size ``rank`` with S^n = 1."""
    blocks = _cyclic_blocks(n)
    chosen, size = [], 0
    while size < rank:
        fits = [b for b in blocks if len(b) <= rank - size]
        b = rng.choice(fits)
        chosen.append(b)
        size += len(b)
    S = np.zeros((rank, rank), dtype=object)
    k = 0
    for b in chosen:
        d = len(b)
        S[k:k + d, k:k + d] = np.array(b, dtype=object)
        k += d
    P, Pinv = random_unimodular(rank, rng)
    return P.dot(S).dot(Pinv)


def sign_characters(G: FiniteGroup) -> list[tuple]:
    """All homomorphisms G -> {+1, -1}, as value tuples."""
    chars = [tuple(1 for _ in G.elements())]
    for H in G.subgroups():
        if 2 * len(H) == G.order:
            chars.append(tuple(1 if g in H else -1 for g in G.elements()))
    return chars


def random_module(G: FiniteGroup, rank: int, rng: random.Random, modulus: int = 0) -> GModule:
    """Direct sum of sign characters and permutation modules, conjugated by a
    random unimodular change of basis; truncated sums keep the rank exact."""
    from .cohomology import permutation_module

    pieces = []
    size = 0
    subgroups = [H for H in G.subgroups() if G.order // len(H) <= rank]
    chars = sign_characters(G)
    while size < rank:
        options = [("char", c) for c in chars]
        options += [("perm", H) for H in subgroups if G.order // len(H) <= rank - size]
        kind, obj = rng.choice(options)
        if kind == "char":
            pieces.append([np.array([[c]], dtype=object) for c in obj])
            size += 1
        else:
            P = permutation_module(G, obj)
            pieces.append(list(P.action))
            size += P.rank
    P, Pinv = random_unimodular(rank, rng)
    mats = []
    for g in G.elements():
        A = np.zeros((rank, rank), dtype=object)
        k = 0
        for piece in pieces:
            d = piece[g].shape[0]
            A[k:k + d, k:k + d] = piece[g]
            k += d
        mats.append(P.dot(A).dot(Pinv))
    return GModule(G, tuple(mats), modulus)
