"""Probability measures on finite effect algebras, in exact rationals."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .core import EffectAlgebraTable, derive_order, require_valid
from .errors import CapExceeded, PreconditionError, cap
from .linalg import row_echelon
from .polyhedra import is_vertex, polytope_vertices, _integer_row

MEASURE_CAP = 32  # number of variables (elements) handed to vertex enumeration


@dataclass(frozen=True)
class RationalMeasure:
    """A map ``E -> Q`` stored as one value per element."""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    def __len__(self):
        return len(self.values)

    def additivity_violation(self, t: EffectAlgebraTable):
        """First pair ``(x, y)`` with ``π(x ⊕ y) != π(x) + π(y)``, or ``None``."""
        if len(self.values) != t.n:
            return ("length", len(self.values))
        for x, y in product(range(t.n), repeat=2):
            c = t.osum[x][y]
            if c is not None and self.values[c] != self.values[x] + self.values[y]:
                return (x, y)
        return None

    def is_probability(self, t: EffectAlgebraTable) -> bool:
        return (self.additivity_violation(t) is None
                and all(v >= 0 for v in self.values) and self.values[t.unit] == 1)

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass
class ProbabilityPolytope:
    """H-representation of Π(E) over element-indexed variables.

    ``equalities`` holds independent integer rows ``(coeffs, rhs)`` after
    elimination; nonnegativity of every variable is implicit.  ``vertices``
    is filled by :func:`extreme_points`.
    """

    table: EffectAlgebraTable
    equalities: List[Tuple[Tuple[int, ...], int]]
    vertices: Optional[List[RationalMeasure]] = field(default=None)

    @property
    def n(self) -> int:
        return self.table.n

    @property
    def is_empty(self) -> bool:
        return not extreme_points(self)

    def contains(self, values: Sequence) -> bool:
        vals = [Fraction(v) for v in values]
        if len(vals) != self.n or any(v < 0 for v in vals):
            return False
        return all(sum(a * v for a, v in zip(row, vals)) == b for row, b in self.equalities)


def _raw_equalities(t: EffectAlgebraTable):
    n = t.n
    rows = []
    for x in range(n):
        for y in range(x, n):
            c = t.osum[x][y]
            if c is None:
                continue
            row = [0] * n
            row[x] += 1
            row[y] += 1
            row[c] -= 1
            if any(row):
                rows.append((row, 0))
    norm = [0] * n
    norm[t.unit] = 1
    rows.append((norm, 1))
    return rows


def probability_polytope(t: EffectAlgebraTable) -> ProbabilityPolytope:
    """Assemble Π(E): additivity on each defined cell, ``π(u) = 1``, ``π >= 0``.

    Redundant equalities are removed by exact Gaussian elimination; the
    surviving rows are scaled back to integers.
    """
    require_valid(t)
    raw = _raw_equalities(t)
    reduced, pivots = row_echelon([list(r) + [b] for r, b in raw])
    n = t.n
    eqs = []
    for row in reduced:
        ints = _integer_row(row)
        eqs.append((tuple(ints[:n]), ints[n]))
    return ProbabilityPolytope(t, eqs)


def extreme_points(P: ProbabilityPolytope) -> List[RationalMeasure]:
    """Exact vertex list of Π(E), each vertex re-verified as extreme.

    Vertices come back in lexicographic order of their value vectors.
    """
    if P.vertices is not None:
        return P.vertices
    n = P.n
    limit = cap(MEASURE_CAP)
    if n > limit:
        raise CapExceeded(f"{n} measure variables exceed cap {limit}")
    A_ineq = [[int(i == j) for j in range(n)] for i in range(n)]
    b_ineq = [0] * n
    A_eq = [list(r) for r, _ in P.equalities]
    b_eq = [b for _, b in P.equalities]
    verts = polytope_vertices(A_ineq, b_ineq, A_eq, b_eq, n)
    out = []
    for v in verts:
        if not P.contains(v) or not is_vertex(v, A_ineq, b_ineq, A_eq, n):
            raise AssertionError(f"vertex enumeration returned a non-vertex {v}")
        out.append(RationalMeasure(v))
    P.vertices = out
    return out


def is_order_determining(t: EffectAlgebraTable, measures: Sequence) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Does ``π(x) <= π(y)`` for every π in the family force ``x <= y``?

    Returns ``(verdict, witness)``; the witness is a pair ``(x, y)`` with
    all measures agreeing ``π(x) <= π(y)`` although ``x`` is not below ``y``.
    """
    family = [m if isinstance(m, RationalMeasure) else RationalMeasure(m) for m in measures]
    for m in family:
        bad = m.additivity_violation(t)
        if bad is not None:
            raise PreconditionError(f"measure {m} is not additive at {bad}")
    o = derive_order(t)
    for x, y in product(range(t.n), repeat=2):
        if not o.leq[x][y] and all(m(x) <= m(y) for m in family):
            return False, (x, y)
    return True, None


def kvalued_measure_check(t: EffectAlgebraTable, phi: Sequence[int]) -> bool:
    """Is the integer-valued map ``phi`` additive over every defined orthosum?"""
    require_valid(t)
    if len(phi) != t.n:
        return False
    return all(phi[c] == phi[x] + phi[y]
               for x, y in product(range(t.n), repeat=2)
               if (c := t.osum[x][y]) is not None)
