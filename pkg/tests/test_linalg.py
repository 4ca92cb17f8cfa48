import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hbmcg.linalg import (
    AbelianGroup, MembershipError, Ring, ZZ, cokernel_of_columns, cokernel_structure,
    det_bareiss, exact_matmul, hnf, homology_group, int_matrix, invariant_factors,
    kernel_basis, row_lattice, snf, subquotient,
)


def matrices(max_dim=5, bound=20):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def leibniz_det(M):
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        p = 1
        for i in range(n):
            p *= M[i][perm[i]]
        total += (-1) ** inv * p
    return total


def determinantal_invariants(A):
    """Invariant factors from gcds of k x k minors (independent oracle)."""
    m, n = len(A), len(A[0])
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, leibniz_det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def is_unimodular(U):
    return abs(det_bareiss(U.tolist())) == 1


# --- examples ----------------------------------------------------------------

def test_hnf_examples():
    H, U = hnf(np.eye(3, dtype=int))
    assert (H == np.eye(3)).all() and (U == np.eye(3)).all()
    H, U = hnf(int_matrix([[2, 4], [6, 8]]))
    assert H.tolist() == [[2, 0], [0, 4]]
    assert (U @ int_matrix([[2, 4], [6, 8]]) == H).all()
    H, U = hnf(np.zeros((2, 2), dtype=int))
    assert not H.any() and (U == np.eye(2)).all()


def test_snf_examples():
    D, _, _ = snf(int_matrix([[4, 0], [0, 2]]))
    assert D.tolist() == [[2, 0], [0, 4]]
    D, U, V = snf(int_matrix([[2, 4], [6, 8]]))
    assert D.tolist() == [[2, 0], [0, 4]]
    D, U, V = snf(np.zeros((0, 0), dtype=int))
    assert D.shape == (0, 0)


def test_kernel_examples():
    assert kernel_basis(np.eye(2, dtype=int)).shape == (2, 0)
    assert kernel_basis(int_matrix([[2]]), "Z/4").tolist() == [[2]]
    assert kernel_basis(int_matrix([[1, -1]])).tolist() == [[1], [1]]


def test_cokernel_examples():
    assert cokernel_structure(2 * np.eye(2, dtype=int)).torsion == (2, 2)
    assert cokernel_structure(np.zeros((3, 0), dtype=int)).free_rank == 3
    assert cokernel_structure(int_matrix([[2, 4], [6, 8]])).torsion == (2, 4)
    assert cokernel_structure(int_matrix([[3]]), "Z/6") == AbelianGroup(0, (3,))


def test_subquotient_examples():
    I = np.eye(2, dtype=int)
    assert subquotient(I, 2 * I).torsion == (2, 2)
    assert subquotient(int_matrix([[1], [1]]), np.zeros((2, 0), dtype=int)).free_rank == 1
    assert subquotient(I, int_matrix([[2, 0], [0, 4]])).torsion == (2, 4)
    with pytest.raises(MembershipError):
        subquotient(int_matrix([[1], [1]]), int_matrix([[1], [0]]))


def test_abelian_group_canonical_form():
    G = AbelianGroup.from_diagonal([6, 4, 0, 1])
    assert G == AbelianGroup(1, (2, 12))
    assert str(G) == "Z + Z/2 + Z/12"
    assert G.hom_to_cyclic(4) == AbelianGroup(0, (2, 4, 4))
    assert AbelianGroup(0, (2, 4)).hom_to_cyclic(8) == AbelianGroup(0, (2, 4))
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 2))


def test_ring_parse():
    assert Ring.parse("Z") == ZZ
    assert Ring.parse("Z/4").modulus == 4
    assert str(Ring.parse(8)) == "Z/8"
    with pytest.raises(ValueError):
        Ring.parse("Z/1")


def test_exact_matmul_falls_back_to_python_ints():
    A = np.array([[1 << 40]], dtype=np.int64)
    C = exact_matmul(A, A)
    assert int(C[0, 0]) == 1 << 80


def test_det_bareiss():
    assert det_bareiss([[2, 4], [6, 8]]) == -8
    assert det_bareiss([[0, 1], [1, 0]]) == -1
    assert det_bareiss([[1, 2], [2, 4]]) == 0


# --- properties --------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(matrices())
def test_hnf_properties(rows):
    A = int_matrix(rows)
    H, U = hnf(A)
    assert (exact_matmul(U, A) == H).all()
    assert is_unimodular(U)
    last = -1
    for r in H.tolist():
        nz = [j for j, v in enumerate(r) if v]
        if not nz:
            continue
        p = nz[0]
        assert p > last and r[p] > 0
        for above in H.tolist()[: H.tolist().index(r)]:
            assert 0 <= above[p] < r[p]
        last = p


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=4, bound=9))
def test_snf_matches_minor_gcds(rows):
    A = int_matrix(rows)
    D, U, V = snf(A)
    assert (exact_matmul(exact_matmul(U, A), V) == D).all()
    assert is_unimodular(U) and is_unimodular(V)
    diag = [int(D[i, i]) for i in range(min(D.shape))]
    off = [(i, j) for i in range(D.shape[0]) for j in range(D.shape[1]) if i != j]
    assert all(D[i, j] == 0 for i, j in off)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert nz == determinantal_invariants(rows)
    assert invariant_factors(A) == nz


@settings(max_examples=100, deadline=None)
@given(matrices(), st.sampled_from([None, 2, 3, 4, 8]))
def test_kernel_is_exact(rows, n):
    A = int_matrix(rows)
    ring = Ring(n) if n else ZZ
    K = kernel_basis(A, ring)
    prod = exact_matmul(A, K)
    if n:
        assert not (prod % n).any()
    else:
        assert not prod.any()
        # rank-nullity over Q
        rank = len([d for d in invariant_factors(A)])
        assert K.shape[1] == A.shape[1] - rank


def test_kernel_mod_n_is_complete():
    rng = random.Random(5)
    for _ in range(40):
        m, k, n = rng.randint(1, 3), rng.randint(1, 3), rng.choice([2, 4, 6])
        A = int_matrix([[rng.randint(-5, 5) for _ in range(k)] for _ in range(m)])
        K = kernel_basis(A, Ring(n))
        spanned = {(0,) * k}
        while True:
            grown = spanned | {tuple(int(x) for x in (np.array(v) + K[:, j]) % n)
                               for v in spanned for j in range(K.shape[1])}
            if grown == spanned:
                break
            spanned = grown
        brute = {v for v in itertools.product(range(n), repeat=k)
                 if not (A @ np.array(v) % n).any()}
        assert spanned == brute


def test_row_lattice_mod_n_contains_n():
    basis = row_lattice([[2, 3]], 2, modulus=4)
    assert cokernel_structure(int_matrix(basis).T) == AbelianGroup(0, (4,))


def test_modular_cokernel_agrees_with_exact():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 5)
        cols = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(rng.randint(n, 3 * n + 2))]
        exact = cokernel_structure(int_matrix(cols).T)
        assert cokernel_of_columns(cols, n) == exact


def test_homology_group_over_z_and_mod_n():
    # Z --2--> Z --0--> 0
    assert homology_group([[0]], [[2]], 1) == AbelianGroup(0, (2,))
    assert homology_group([[0]], [[2]], 1, "Z/4") == AbelianGroup(0, (2,))
    with pytest.raises(MembershipError):
        homology_group([[1]], [[1]], 1)
