from fractions import Fraction
from itertools import combinations
from math import gcd

from hypothesis import given, settings, strategies as st

from effectkit.linalg import (identity, integer_inverse, invariant_factors, matmul, nullspace,
                              rank, rational_inverse, smith_normal_form, solve_affine)


def det(M):
    """Cofactor expansion; fine for the tiny matrices used here."""
    if not M:
        return 1
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(len(M)))


def determinantal_divisors(A):
    m, n = len(A), len(A[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g)
    return out


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_normal_form_matches_determinantal_divisors(A):
    D, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(A), len(A[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    # d_1 ... d_k = gcd of k x k minors
    dd = determinantal_divisors(A)
    prods, acc = [], 1
    for d in nonzero:
        acc *= d
        prods.append(acc)
    assert prods == dd


def test_smith_small_example():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_and_nullspace(A):
    n = len(A[0])
    N = nullspace(A, n)
    assert len(N) == n - rank(A)
    for v in N:
        assert all(sum(Fraction(a) * x for a, x in zip(row, v)) == 0 for row in A)


def test_inverses():
    A = [[2, 1], [1, 1]]
    assert matmul(A, integer_inverse(A)) == identity(2)
    assert rational_inverse([[1, 2], [2, 4]]) is None
    inv = rational_inverse([[2, 0], [0, 4]])
    assert inv == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]


def test_solve_affine_inconsistent_and_parametrized():
    assert solve_affine([[1, 1], [1, 1]], [1, 2], 2) is None
    x0, N = solve_affine([[1, 1]], [1], 2)
    for t in (Fraction(0), Fraction(3), Fraction(-2, 5)):
        x = [x0[i] + N[i][0] * t for i in range(2)]
        assert x[0] + x[1] == 1
