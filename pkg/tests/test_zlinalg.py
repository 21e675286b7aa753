import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import det_fraction, is_hnf
from riesz import zlinalg

entries = st.integers(min_value=-9, max_value=9)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=1, max_size=max_rows)
    )


def test_hnf_example():
    H, U = zlinalg.hnf([[2, 4], [6, 8]])
    assert H == [[2, 0], [0, 4]]
    assert zlinalg.matmul(U, [[2, 4], [6, 8]]) == H


def test_kernel_examples():
    assert zlinalg.kernel_int([[2, -1]]) == [[1, 2]]
    assert zlinalg.kernel_int([[1, 1]]) == [[1, -1]]
    assert zlinalg.kernel_int(zlinalg.identity(3)) == []


def test_member_examples():
    L = [[1, 0], [0, 2]]
    assert zlinalg.member_with_witness(L, [2, 2]) == [2, 1]
    assert zlinalg.member_with_witness(L, [1, 1]) is None


def test_lattice_sum_examples():
    assert zlinalg.lattice_sum_eq([[2, 0]], [[0, 3]], [[2, 0], [0, 3]], 2)
    assert not zlinalg.lattice_sum_eq([[2, 0]], [[0, 3]], [[1, 0], [0, 1]], 2)


def _random_unimodular(rng, n):
    U = zlinalg.identity(n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            U[i] = [-x for x in U[i]]
            continue
        k = rng.randint(-2, 2)
        U[i] = [a + k * b for a, b in zip(U[i], U[j])]
    return U


@settings(max_examples=1000)
@given(matrices(), st.integers(0, 10 ** 6))
def test_hnf_canonical(A, seed):
    ncols = len(A[0])
    H, U = zlinalg.hnf(A, ncols)
    assert is_hnf(H, ncols)
    assert zlinalg.matmul(U, A) == H
    assert abs(det_fraction(U)) == 1
    # same lattice, different generators, same form
    V = _random_unimodular(random.Random(seed), len(A))
    H2, _ = zlinalg.hnf(zlinalg.matmul(V, A), ncols)
    assert H2 == H


@settings(max_examples=1000)
@given(matrices())
def test_kernel_exact_and_complete(A):
    ncols = len(A[0])
    K = zlinalg.kernel_int(A, ncols)
    for k in K:
        assert all(sum(a * x for a, x in zip(row, k)) == 0 for row in A)
    assert len(K) == ncols - zlinalg.rank_rat(A)
    # saturated: the kernel lattice contains every integer solution it spans
    if K:
        H, _ = zlinalg.hnf(K, ncols)
        pivots = [next(j for j in range(ncols) if row[j]) for row in H if any(row)]
        assert len(pivots) == len(K)


@settings(max_examples=1000)
@given(matrices(), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_member_witness_exact(L, coeffs):
    ncols = len(L[0])
    target = [sum(c * row[j] for c, row in zip(coeffs, L)) for j in range(ncols)]
    w = zlinalg.member_with_witness(L, target)
    assert w is not None
    assert [sum(c * row[j] for c, row in zip(w, L)) for j in range(ncols)] == target
    shifted = list(target)
    shifted[0] += 1
    w2 = zlinalg.member_with_witness(L, shifted)
    if w2 is not None:
        assert [sum(c * row[j] for c, row in zip(w2, L)) for j in range(ncols)] == shifted


@settings(max_examples=300)
@given(matrices(3, 3))
def test_det_int_matches_fraction_det(A):
    n = len(A[0])
    M = (A + [[0] * n] * n)[:n]
    assert zlinalg.det_int(M) == det_fraction(M)


def test_lattice_basis_of_rationals():
    B = zlinalg.lattice_basis([[Fraction(1, 2), 0], [0, Fraction(1, 3)], [Fraction(1, 2), Fraction(1, 3)]], 2)
    assert B == [[Fraction(1, 2), 0], [0, Fraction(1, 3)]]
