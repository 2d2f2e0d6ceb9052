from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from effectkit.linalg import rational_inverse
from effectkit.polyhedra import (UnboundedPolyhedron, cone_rays, integer_points, is_vertex,
                                 polytope_vertices)


def brute_vertices(A, b, n):
    """Vertex oracle: solve every n-subset of constraints as equalities."""
    out = set()
    for rows in combinations(range(len(A)), n):
        M = [A[i] for i in rows]
        inv = rational_inverse(M)
        if inv is None:
            continue
        x = tuple(sum(inv[i][j] * b[rows[j]] for j in range(n)) for i in range(n))
        if all(sum(Fraction(a) * v for a, v in zip(A[i], x)) >= b[i] for i in range(len(A))):
            out.add(x)
    return sorted(out)


def box_rows(n, lo, hi):
    A, b = [], []
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        A += [e, [-x for x in e]]
        b += [lo, -hi]
    return A, b


cuts = st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                          st.integers(-4, 2)), max_size=4)


@settings(max_examples=80, deadline=None)
@given(cuts)
def test_vertices_of_cut_cubes_match_brute_force(extra):
    A, b = box_rows(3, -2, 2)
    for row, rhs in extra:
        A.append(row)
        b.append(rhs)
    got = polytope_vertices(A, b, [], [], 3)
    assert got == brute_vertices(A, b, 3)
    for v in got:
        assert is_vertex(v, A, b, [], 3)


def test_square_and_simplex():
    A, b = box_rows(2, 0, 1)
    assert polytope_vertices(A, b, [], [], 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    simplex = polytope_vertices([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 0], [[1, 1, 1]], [1], 3)
    assert simplex == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_empty_and_unbounded():
    assert polytope_vertices([[1], [-1]], [2, -1], [], [], 1) == []
    with pytest.raises(UnboundedPolyhedron):
        polytope_vertices([[1, 0], [0, 1]], [0, 0], [], [], 2)


def test_cone_rays_of_orthant_and_halfplane():
    rays, lin = cone_rays([[1, 0], [0, 1]], 2)
    assert rays == [(0, 1), (1, 0)] and lin == []
    rays, lin = cone_rays([[1, 0]], 2)
    assert rays == [(1, 0)] and len(lin) == 1


def test_integer_points_of_triangle():
    verts = [(Fraction(0), Fraction(0)), (Fraction(2), Fraction(0)), (Fraction(0), Fraction(2))]
    pts = integer_points(verts, lambda p: p[0] >= 0 and p[1] >= 0 and p[0] + p[1] <= 2)
    assert len(pts) == 6
