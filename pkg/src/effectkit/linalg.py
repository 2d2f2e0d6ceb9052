"""Exact integer and rational linear algebra.

Matrices are lists of lists of ``int`` or ``Fraction``.  Nothing here
touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def primitive(v: Sequence[int]) -> Tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Smith normal form ``U @ A @ V == D`` over the integers.

    Returns ``(D, U, V)`` with ``U`` (m x m) and ``V`` (n x n) unimodular and
    ``D`` diagonal with nonnegative entries, each dividing the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if not dirty:
                # divisibility of the rest of the block by the pivot
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move a smaller remainder into pivot position
            best = None
            for i in range(t, m):
                if D[i][t] and (best is None or abs(D[i][t]) < abs(best[2])):
                    best = (i, t, D[i][t])
            for j in range(t, n):
                if D[t][j] and abs(D[t][j]) < abs(best[2]):
                    best = (t, j, D[t][j])
            swap_rows(t, best[0])
            swap_cols(t, best[1])
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def invariant_factors(A) -> List[int]:
    D, _, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def rational_inverse(A):
    """Exact inverse of a square matrix, or ``None`` if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def integer_inverse(A) -> Matrix:
    inv = rational_inverse(A)
    if inv is None or any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def row_echelon(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows) -> int:
    return len(row_echelon(rows)[1]) if rows else 0


def solve_affine(A_eq, b_eq, nvars: int):
    """Parametrize ``{x : A_eq x = b_eq}`` as ``x = x0 + N t``.

    Returns ``(x0, N)`` where ``N`` is an nvars x d list of columns-as-rows
    (``N[i][j]`` is the coefficient of parameter j in variable i), or
    ``None`` when the system is inconsistent.
    """
    aug = [list(row) + [b] for row, b in zip(A_eq, b_eq)]
    R, pivots = row_echelon(aug) if aug else ([], [])
    if nvars in pivots:
        return None
    free = [c for c in range(nvars) if c not in pivots]
    x0 = [Fraction(0)] * nvars
    N = [[Fraction(0)] * len(free) for _ in range(nvars)]
    for row, pc in zip(R, pivots):
        x0[pc] = row[nvars]
        for j, fc in enumerate(free):
            N[pc][j] = -row[fc]
    for j, fc in enumerate(free):
        N[fc][j] = Fraction(1)
    return x0, N


def nullspace(rows, ncols: int):
    """Rational basis of ``{x : rows x = 0}`` as a list of vectors."""
    sol = solve_affine(rows, [0] * len(rows), ncols)
    x0, N = sol
    return [[N[i][j] for i in range(ncols)] for j in range(len(N[0]) if N else 0)]
