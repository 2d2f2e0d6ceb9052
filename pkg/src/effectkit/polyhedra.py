"""Double-description vertex and ray enumeration over the integers/rationals.

The cone ``{y : A y >= 0}`` is built one inequality at a time, in the order
given, starting from the whole space.  Rays are kept as primitive integer
vectors; a ray's zero set is a bitmask over the inequalities seen so far.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import floor, ceil, lcm
from typing import List, Sequence, Tuple

from .linalg import primitive, solve_affine


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _integer_row(row) -> List[int]:
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row]


def cone_rays(A: Sequence[Sequence[int]], dim: int):
    """Extreme rays and a lineality basis of ``{y in Q^dim : A y >= 0}``.

    Returns ``(rays, lineality)``; both are lists of primitive integer tuples.
    Rays come back sorted so the result does not depend on internal order.
    """
    rows = [_integer_row(a) for a in A]
    lineality = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: List[Tuple[int, ...]] = []
    zeros: List[int] = []

    for k, a in enumerate(rows):
        bit = 1 << k
        pivot = next((i for i, l in enumerate(lineality) if _dot(a, l)), None)
        if pivot is not None:
            l0 = lineality.pop(pivot)
            s0 = _dot(a, l0)
            if s0 < 0:
                l0, s0 = tuple(-x for x in l0), -s0
            lineality = [primitive([s0 * x - _dot(a, l) * y for x, y in zip(l, l0)])
                         for l in lineality]
            new_rays = []
            for r in rays:
                sr = _dot(a, r)
                new_rays.append(primitive([s0 * x - sr * y for x, y in zip(r, l0)]))
            rays = new_rays
            zeros = [z | bit for z in zeros]
            rays.append(l0)
            zeros.append(bit - 1)  # tight on every earlier inequality
            continue

        vals = [_dot(a, r) for r in rays]
        plus = [i for i, v in enumerate(vals) if v > 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        if not minus:
            zeros = [z | bit if v == 0 else z for z, v in zip(zeros, vals)]
            continue
        keep = [i for i, v in enumerate(vals) if v >= 0]
        new_rays = [rays[i] for i in keep]
        new_zeros = [zeros[i] | bit if vals[i] == 0 else zeros[i] for i in keep]
        for i in plus:
            for j in minus:
                common = zeros[i] & zeros[j]
                adjacent = True
                for h in range(len(rays)):
                    if h != i and h != j and zeros[h] & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vi, vj = vals[i], vals[j]
                ray = primitive([vi * y - vj * x for x, y in zip(rays[i], rays[j])])
                new_rays.append(ray)
                new_zeros.append(common | bit)
        rays, zeros = new_rays, new_zeros
    return sorted(set(rays)), sorted(lineality)


class UnboundedPolyhedron(ValueError):
    pass


def polytope_vertices(A_ineq, b_ineq, A_eq, b_eq, nvars: int) -> List[Tuple[Fraction, ...]]:
    """Vertices of ``{x : A_ineq x >= b_ineq, A_eq x = b_eq}`` (exact).

    Raises :class:`UnboundedPolyhedron` if the set is not a polytope.  An
    empty set gives an empty list.
    """
    sol = solve_affine(A_eq, b_eq, nvars)
    if sol is None:
        return []
    x0, N = sol
    d = len(N[0]) if N else 0
    # y = (t, s): s * (A x0 - b) + (A N) t >= 0, s >= 0
    hom = [[0] * d + [1]]
    for row, b in zip(A_ineq, b_ineq):
        coeffs = [sum(Fraction(row[i]) * N[i][j] for i in range(nvars)) for j in range(d)]
        const = sum(Fraction(row[i]) * x0[i] for i in range(nvars)) - b
        hom.append(coeffs + [const])
    if d == 0:
        feasible = all(h[-1] >= 0 for h in hom[1:])
        return [tuple(x0)] if feasible else []
    rays, lin = cone_rays(hom, d + 1)
    if lin:
        raise UnboundedPolyhedron("polyhedron contains a line")
    out = set()
    for r in rays:
        s = r[-1]
        if s == 0:
            raise UnboundedPolyhedron("polyhedron has a recession direction")
        t = [Fraction(x, s) for x in r[:-1]]
        out.add(tuple(x0[i] + sum(N[i][j] * t[j] for j in range(d)) for i in range(nvars)))
    return sorted(out)


def is_vertex(point, A_ineq, b_ineq, A_eq, nvars: int) -> bool:
    """A feasible point is a vertex iff its tight constraints have full rank."""
    from .linalg import rank
    tight = [list(row) for row in A_eq]
    tight += [list(row) for row, b in zip(A_ineq, b_ineq) if _dot(row, point) == b]
    return rank(tight) == nvars


def integer_points(vertices: Sequence[Sequence[Fraction]], inside) -> List[Tuple[int, ...]]:
    """Integer points of a polytope, given its vertices and a membership test."""
    if not vertices:
        return []
    dim = len(vertices[0])
    lo = [ceil(min(v[i] for v in vertices)) for i in range(dim)]
    hi = [floor(max(v[i] for v in vertices)) for i in range(dim)]
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return [p for p in itertools.product(*ranges) if inside(p)]
