import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brauerkit.cohomology import (Cochain, boundary_matrix, coboundary, cohomology,
                                  cyclic_cohomology, permutation_module)
from brauerkit.errors import DimensionOverflow, NotAnAction, NotASubgroup
from brauerkit.groups import (AbelianInvariants, corpus_groups, cyclic_group, cyclic_module,
                              module_from_generators, random_cyclic_action, random_module,
                              symmetric_group, trivial_module)
from brauerkit.snf import subquotient_invariants

CORPUS = {G.name: G for G in corpus_groups()}


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_h2_cyclic_with_cyclic_coefficients(p):
    G = cyclic_group(p)
    assert cohomology(G, trivial_module(G, 1, p), 2) == AbelianInvariants(0, (p,))


@pytest.mark.parametrize("n", range(1, 9))
def test_cyclic_integral_cohomology(n):
    G = cyclic_group(n)
    M = trivial_module(G)
    assert cohomology(G, M, 0) == AbelianInvariants(1)
    assert cohomology(G, M, 1) == AbelianInvariants()
    assert cohomology(G, M, 2) == AbelianInvariants(0, (n,))


def test_sign_module_of_z2():
    # Z with the generator acting by -1: H^0 = 0, H^1 = Z/2, H^2 = 0
    G = cyclic_group(2)
    M = module_from_generators(G, {1: [[-1]]})
    assert [cohomology(G, M, i) for i in range(3)] == [
        AbelianInvariants(), AbelianInvariants(0, (2,)), AbelianInvariants()]


def _hom_count(G, m):
    """|Hom(G, Z/m)| by brute force over images of the generators."""
    gens = list(G.generators)
    count = 0
    for images in itertools.product(range(m), repeat=len(gens)):
        f = {G.identity: 0}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, img in zip(gens, images):
                    y = G.mul(x, g)
                    val = (f[x] + img) % m
                    if y in f:
                        ok &= f[y] == val
                    else:
                        f[y] = val
                        nxt.append(y)
            frontier = nxt
        if ok and all((f[G.mul(a, b)] - f[a] - f[b]) % m == 0
                      for a in G.elements() for b in G.elements()):
            count += 1
    return count


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "Z/2xZ/2", "Z/6"])
@pytest.mark.parametrize("m", [2, 3, 4])
def test_h1_trivial_coefficients_is_hom(name, m):
    G = CORPUS[name]
    H = cohomology(G, trivial_module(G, 1, m), 1)
    size = 1
    for d in H.torsion:
        size *= d
    assert size == _hom_count(G, m)


def test_shapiro_lemma_examples():
    S3 = symmetric_group(3)
    C3 = next(H for H in S3.subgroups() if len(H) == 3)
    C2 = next(H for H in S3.subgroups() if len(H) == 2)
    # H^2(S3, Z[S3/H]) = H^2(H, Z) = Z/|H|
    assert cohomology(S3, permutation_module(S3, C3), 2) == AbelianInvariants(0, (3,))
    assert cohomology(S3, permutation_module(S3, C2), 2) == AbelianInvariants(0, (2,))
    # H^0(G, Z[G/H]) = Z
    assert cohomology(S3, permutation_module(S3, C2), 0) == AbelianInvariants(1)


def test_not_a_subgroup():
    with pytest.raises(NotASubgroup):
        permutation_module(symmetric_group(3), [0, 1, 2])


def test_dimension_cap():
    G = CORPUS["A4"]
    with pytest.raises(DimensionOverflow):
        cohomology(G, trivial_module(G), 4)
    with pytest.raises(DimensionOverflow):
        cohomology(G, trivial_module(G), 2, row_cap=100)


def test_cyclic_path_rejects_non_action():
    with pytest.raises(NotAnAction):
        cyclic_cohomology(3, [[2]], 0, 1)


@pytest.mark.parametrize("name", ["Z/4", "S3", "Q8"])
def test_boundary_matrix_matches_pointwise_coboundary(name):
    G = CORPUS[name]
    rng = random.Random(0)
    M = random_module(G, 2, rng)
    for i in range(3):
        D = boundary_matrix(G, M, i)
        vec = [rng.randint(-5, 5) for _ in range(D.shape[1])]
        phi = Cochain.from_vector(G, M.rank, i, vec)
        via_formula = coboundary(M, phi).to_vector(G)
        via_matrix = D.dot(np.array(vec, dtype=object))
        assert [int(x) for x in via_matrix] == via_formula


@pytest.mark.parametrize("name", ["Z/6", "S3", "D4", "A4"])
def test_d_squared_is_zero(name):
    G = CORPUS[name]
    M = random_module(G, 2, random.Random(3))
    for i in range(2):
        A = boundary_matrix(G, M, i + 1).astype(object)
        B = boundary_matrix(G, M, i).astype(object)
        assert not np.any(A.dot(B))


@settings(max_examples=40)
@given(st.integers(1, 6), st.integers(1, 2), st.sampled_from([0, 2, 3, 4, 6]),
       st.integers(0, 2), st.integers(0, 10**6))
def test_standard_complex_matches_exact_subquotient(n, rank, m, i, seed):
    S = random_cyclic_action(n, rank, random.Random(seed))
    M = cyclic_module(n, S, m)
    G = M.group
    A = boundary_matrix(G, M, i)
    B = boundary_matrix(G, M, i - 1) if i else None
    free, tors = subquotient_invariants(A, B, m, ncols=G.order**i * rank)
    assert cohomology(G, M, i) == AbelianInvariants(free, tuple(tors))


@settings(max_examples=60)
@given(st.integers(1, 8), st.integers(1, 3), st.sampled_from([0, 2, 3, 4, 5, 8, 9, 12]),
       st.integers(0, 2), st.integers(0, 10**6))
def test_cyclic_fast_path_property(n, rank, m, i, seed):
    S = random_cyclic_action(n, rank, random.Random(seed))
    M = cyclic_module(n, S, m)
    assert cyclic_cohomology(n, S, m, i) == cohomology(M.group, M, i)


@settings(max_examples=30)
@given(st.sampled_from(sorted(CORPUS)), st.integers(0, 10**6), st.sampled_from([0, 2, 3, 4]))
def test_cohomology_killed_by_group_order(name, seed, m):
    G = CORPUS[name]
    M = random_module(G, 2, random.Random(seed), m)
    for i in (1, 2):
        assert G.order % cohomology(G, M, i).exponent == 0
