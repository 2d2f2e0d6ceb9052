"""Universal groups of finite effect algebras and finitely presented unital groups.

A :class:`GroupPresentation` is ``Z^rank`` (plus reported torsion) with a
positive cone given as the additive semigroup generated by ``cone_gens``
and a distinguished unit.  Cone membership is decided by a bounded search
over nonnegative integer combinations, using a strictly positive linear
functional on the cone to bound the search.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core import EffectAlgebraTable, classify, derive_order, require_valid, validate_axioms
from .errors import CapExceeded, FormatError, IntervalError, PreconditionError, cap
from .linalg import (integer_inverse, invariant_factors, rank, rational_inverse,
                     smith_normal_form, transpose)
from .polyhedra import UnboundedPolyhedron, cone_rays, integer_points, polytope_vertices

Vector = Tuple[int, ...]

INTERVAL_CAP = 4096
BOX_CAP = 20_000
SEMIGROUP_CAP = 400_000


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _add(a, b) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _scale(k, a) -> Vector:
    return tuple(k * x for x in a)


@dataclass(frozen=True)
class GroupPresentation:
    """``Z^rank`` with cone generated by ``cone_gens`` and unit ``unit``.

    When the presentation is the universal group of an algebra, ``images[x]``
    is the canonical image of element ``x`` and ``source`` is the algebra.
    """

    rank: int
    unit: Vector
    cone_gens: Tuple[Vector, ...]
    torsion: Tuple[int, ...] = ()
    images: Optional[Tuple[Vector, ...]] = None
    label: str = ""
    torsion_images: Optional[Tuple[Vector, ...]] = field(default=None, compare=False)
    source: Optional[EffectAlgebraTable] = field(default=None, compare=False, repr=False)
    relations: Tuple[Vector, ...] = field(default=(), compare=False, repr=False)
    smith: Optional[tuple] = field(default=None, compare=False, repr=False)
    image_labels: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        r = self.rank
        unit = tuple(int(x) for x in self.unit)
        gens = tuple(sorted({tuple(int(x) for x in g) for g in self.cone_gens}))
        if r < 0 or len(unit) != r or any(len(g) != r for g in gens):
            raise FormatError("presentation vectors do not match the rank")
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "cone_gens", gens)
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.images is not None:
            object.__setattr__(self, "images", tuple(tuple(v) for v in self.images))
            if any(len(v) != r for v in self.images):
                raise FormatError("image vectors do not match the rank")
            if not self.image_labels:
                labels = (self.source.labels if self.source is not None
                          else tuple(f"e{i}" for i in range(len(self.images))))
                object.__setattr__(self, "image_labels", tuple(labels))

    @property
    def zero(self) -> Vector:
        return (0,) * self.rank


def pointwise(m: int, unit=None, label: str = "") -> GroupPresentation:
    """``Z^m`` ordered coordinatewise."""
    unit = tuple(unit) if unit is not None else (1,) * m
    gens = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
    return GroupPresentation(m, unit, gens, label=label or f"Z^{m}")


def integers(unit: int = 1) -> GroupPresentation:
    return pointwise(1, (unit,), label="Z")


# --------------------------------------------------------------------------
# the positive cone as a semigroup

class Cone:
    """The semigroup generated by a finite set of integer vectors.

    ``weight`` is an integer functional that is strictly positive on every
    nonzero generator (the sum of the extreme rays of the dual cone), so the
    points of weight at most ``W`` form a finite set that can be listed.
    """

    def __init__(self, gens: Sequence[Vector], dim: int):
        self.dim = dim
        self.gens = sorted({tuple(g) for g in gens if any(g)})
        rays, lin = cone_rays(self.gens, dim) if self.gens else ([], [
            tuple(int(i == j) for j in range(dim)) for i in range(dim)])
        self.dual_rays = rays
        self.dual_lineality = lin
        w = [0] * dim
        for r in rays:
            w = [a + b for a, b in zip(w, r)]
        self.weight = tuple(w)
        self.pointed = all(_dot(self.weight, g) > 0 for g in self.gens)
        self._limit = -1
        self._points: set = set()

    def require_pointed(self):
        if not self.pointed:
            raise PreconditionError("cone meets its negative in a nonzero element")

    def w(self, g) -> int:
        return _dot(self.weight, g)

    def points_upto(self, W: int) -> set:
        """All semigroup elements of weight at most ``W``."""
        self.require_pointed()
        if W <= self._limit:
            return self._points
        zero = (0,) * self.dim
        pts = {zero}
        stack = [zero]
        limit = cap(SEMIGROUP_CAP)
        gw = [(g, self.w(g)) for g in self.gens]
        while stack:
            p = stack.pop()
            wp = self.w(p)
            for g, wg in gw:
                if wp + wg <= W:
                    q = _add(p, g)
                    if q not in pts:
                        pts.add(q)
                        stack.append(q)
            if len(pts) > limit:
                raise CapExceeded(f"more than {limit} cone points below weight {W}")
        self._points, self._limit = pts, W
        return pts

    def contains(self, g) -> bool:
        g = tuple(g)
        if not any(g):
            return True
        wg = self.w(g)
        if wg <= 0:
            return False
        return g in self.points_upto(max(wg, self._limit))

    def interior(self, g) -> bool:
        """Is ``g`` in the interior of the rational cone spanned by the generators?"""
        return not self.dual_lineality and all(_dot(f, g) > 0 for f in self.dual_rays)

    def facets(self) -> List[Vector]:
        """Inequalities ``f . x >= 0`` cutting out the rational cone."""
        out = list(self.dual_rays)
        for l in self.dual_lineality:
            out += [tuple(l), tuple(-x for x in l)]
        return out


@lru_cache(maxsize=256)
def cone_of(P: GroupPresentation) -> Cone:
    return Cone(P.cone_gens, P.rank)


def leq(P: GroupPresentation, g, h) -> bool:
    return cone_of(P).contains(_sub(h, g))


# --------------------------------------------------------------------------
# universal group

def _relation_rows(t: EffectAlgebraTable) -> List[Vector]:
    n = t.n
    rows = set()
    z = [0] * n
    z[t.zero] = 1
    rows.add(tuple(z))
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
                rows.add(tuple(row))
    return sorted(rows)


def _saturated(vectors) -> bool:
    return all(d == 1 for d in invariant_factors([list(v) for v in vectors]))


def _nice_basis(t: EffectAlgebraTable, images: List[Vector], r: int):
    """Pick elements whose images form a Z-basis, preferring low elements."""
    o = derive_order(t)
    order = sorted(range(t.n), key=lambda x: (sum(o.leq[y][x] for y in range(t.n)), x))
    chosen: List[Vector] = []
    for x in order:
        v = images[x]
        if not any(v):
            continue
        trial = chosen + [v]
        if rank(trial) == len(trial) and _saturated(trial):
            chosen = trial
            if len(chosen) == r:
                return chosen
    return None


@lru_cache(maxsize=256)
def universal_group(t: EffectAlgebraTable) -> GroupPresentation:
    """Free abelian group on E modulo ``x + y = x ⊕ y`` and ``0 = 0``.

    The quotient is read off a Smith normal form of the relation matrix.
    Free coordinates are then changed, when possible, so that a set of
    low-lying elements maps to the standard basis.
    """
    require_valid(t)
    n = t.n
    rows = _relation_rows(t)
    A = transpose([list(r) for r in rows])  # n x m; image = relation span
    D, U, V = smith_normal_form(A)
    diag = [D[i][i] if i < len(D[0]) else 0 for i in range(n)]
    free = [i for i in range(n) if diag[i] == 0]
    tors = [i for i in range(n) if diag[i] > 1]
    r = len(free)
    images = [tuple(U[i][x] for i in free) for x in range(n)]
    timages = [tuple(U[i][x] % diag[i] for i in tors) for x in range(n)]
    basis = _nice_basis(t, images, r) if r else []
    if basis:
        Binv = integer_inverse([list(b) for b in basis])
        images = [tuple(_dot(v, [Binv[i][j] for i in range(r)]) for j in range(r))
                  for v in images]
    unit = images[t.unit]
    gens = [v for v in images if any(v)]
    return GroupPresentation(
        rank=r, unit=unit, cone_gens=tuple(gens), torsion=tuple(diag[i] for i in tors),
        images=tuple(images), label=f"G({t.name})" if t.name else "G",
        torsion_images=tuple(timages), source=t, relations=tuple(rows),
        smith=(tuple(map(tuple, D)), tuple(map(tuple, U)), tuple(map(tuple, V))))


def extend_measure(P: GroupPresentation, phi: Sequence[int]) -> Optional[Vector]:
    """The homomorphism ``Z^rank -> Z`` extending an integer measure on the source.

    Returns the coefficient vector ``a`` with ``a . images[x] = phi[x]``,
    or ``None`` if no integral extension exists (for example, when
    ``phi`` is not additive).  Uniqueness holds because the images span.
    """
    if P.images is None:
        raise PreconditionError("presentation does not come from an algebra")
    r = P.rank
    rows = [list(v) for v in P.images]
    # pick r independent images and solve, then check every element
    chosen = []
    for x, v in enumerate(rows):
        if rank([rows[c] for c in chosen] + [v]) > len(chosen):
            chosen.append(x)
        if len(chosen) == r:
            break
    if len(chosen) < r:
        return None
    inv = rational_inverse([rows[c] for c in chosen])
    a = [sum(inv[i][j] * phi[chosen[j]] for j in range(r)) for i in range(r)]
    if any(Fraction(x).denominator != 1 for x in a):
        return None
    a = tuple(int(x) for x in a)
    if any(_dot(a, v) != phi[x] for x, v in enumerate(rows)):
        return None
    return a


# --------------------------------------------------------------------------
# the unit interval

def interval_points(P: GroupPresentation, top: Optional[Vector] = None) -> List[Vector]:
    """Elements ``g`` with ``0 <= g <= top`` (default: the unit), sorted by weight."""
    top = P.unit if top is None else tuple(top)
    C = cone_of(P)
    C.require_pointed()
    if not C.contains(top):
        raise IntervalError(f"{top} is not in the positive cone")
    pts = C.points_upto(C.w(top))
    out = sorted((g for g in pts if C.contains(_sub(top, g))), key=lambda g: (C.w(g), g))
    limit = cap(INTERVAL_CAP)
    if len(out) > limit:
        raise CapExceeded(f"interval has {len(out)} elements (cap {limit})")
    return out


def _vec_label(v: Vector) -> str:
    return str(v[0]) if len(v) == 1 else "(" + ",".join(map(str, v)) + ")"


def interval_of(P: GroupPresentation) -> EffectAlgebraTable:
    """The effect algebra ``G+[0,u]`` with ``p ⊕ q = p + q`` whenever ``p + q <= u``."""
    pts = interval_points(P)
    pos = {g: i for i, g in enumerate(pts)}
    n = len(pts)
    osum = [[pos.get(_add(a, b)) for b in pts] for a in pts]
    labels = [_vec_label(g) for g in pts]
    if P.images is not None:
        for x in reversed(range(len(P.images))):
            if P.images[x] in pos:
                labels[pos[P.images[x]]] = P.image_labels[x]
    if len(set(labels)) != n:
        labels = [_vec_label(g) for g in pts]
    t = EffectAlgebraTable(n, pos[P.zero], pos[P.unit], osum,
                           f"[0,u] in {P.label}" if P.label else "interval", tuple(labels))
    res = validate_axioms(t)
    if not res.ok:
        raise AssertionError(f"interval fails axioms {res.axioms()}")
    o = derive_order(t)
    if any(pts[o.supp[i]] != _sub(P.unit, pts[i]) for i in range(n)):
        raise AssertionError("supplement is not g -> u - g")
    return t


def interval_vectors(P: GroupPresentation) -> List[Vector]:
    """Vectors of the elements of :func:`interval_of`, in the same order."""
    return interval_points(P)


def is_interval_realization(t: EffectAlgebraTable) -> Tuple[bool, Optional[List[int]]]:
    """Is the canonical map ``E -> G+[0,u]`` of the universal group an isomorphism?

    Returns ``(verdict, mapping)``; ``mapping[x]`` is the index of ``x``'s
    image in :func:`interval_of` of the universal group.
    """
    P = universal_group(t)
    if P.torsion and any(any(v) for v in P.torsion_images):
        return False, None
    try:
        E = interval_of(P)
    except (IntervalError, PreconditionError):
        return False, None
    pts = interval_points(P)
    pos = {g: i for i, g in enumerate(pts)}
    f = [pos.get(v) for v in P.images]
    if None in f or len(set(f)) != t.n or E.n != t.n:
        return False, None
    for x, y in product(range(t.n), repeat=2):
        c = t.osum[x][y]
        d = E.osum[f[x]][f[y]]
        if (c is None) != (d is None) or (c is not None and f[c] != d):
            return False, None
    return True, f


# --------------------------------------------------------------------------
# bounded boxes

class Box:
    """The elements ``-k u <= g <= k u`` with the order induced from the cone."""

    def __init__(self, P: GroupPresentation, k: int):
        if k < 1:
            raise PreconditionError("box bound must be at least 1")
        self.P, self.k = P, k
        C = cone_of(P)
        C.require_pointed()
        ku = _scale(k, P.unit)
        top = _scale(2 * k, P.unit)
        if not C.contains(top):
            raise IntervalError("unit is not in the positive cone")
        pts = C.points_upto(C.w(top))
        shifted = [g for g in pts if C.contains(_sub(top, g))]
        limit = cap(BOX_CAP)
        if len(shifted) > limit:
            raise CapExceeded(f"box has {len(shifted)} elements (cap {limit})")
        self.points = sorted((_sub(g, ku) for g in shifted), key=lambda g: (C.w(g), g))
        self.index = {g: i for i, g in enumerate(self.points)}
        self.zero = self.index[P.zero]
        self.weights = np.array([C.w(g) for g in self.points], dtype=np.int64)
        self.cone = C
        self._leq = None

    def __len__(self):
        return len(self.points)

    @property
    def leq(self) -> np.ndarray:
        """``leq[i, j]`` iff ``points[i] <= points[j]``."""
        if self._leq is None:
            X = np.array(self.points, dtype=np.int64).reshape(len(self.points), self.P.rank)
            C = self.cone
            top = _scale(2 * self.k, self.P.unit)
            cone_pts = [g for g in C.points_upto(C.w(top))]
            R = int(np.abs(X).max()) * 2 + 1 if X.size else 1
            R = max(R, max((abs(c) for g in cone_pts for c in g), default=0) + 1)
            base = 2 * R + 1
            radix = base ** np.arange(self.P.rank, dtype=np.int64)

            def encode(V):
                return ((V + R) * radix).sum(axis=-1)

            diffs = X[None, :, :] - X[:, None, :]
            codes = encode(diffs)
            cone_codes = encode(np.array(cone_pts, dtype=np.int64).reshape(-1, self.P.rank))
            self._leq = np.isin(codes, cone_codes)
        return self._leq

    def _extreme(self, mask: np.ndarray, upper: bool) -> Optional[int]:
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            return None
        w = self.weights[idx]
        cand = idx[np.argmin(w)] if upper else idx[np.argmax(w)]
        L = self.leq
        ok = L[cand, idx].all() if upper else L[idx, cand].all()
        return int(cand) if ok else None

    def join(self, i: int, j: int) -> Optional[int]:
        """Least upper bound of two box elements among box elements."""
        L = self.leq
        return self._extreme(L[i, :] & L[j, :], upper=True)

    def meet(self, i: int, j: int) -> Optional[int]:
        L = self.leq
        return self._extreme(L[:, i] & L[:, j], upper=False)

    def positive_part(self, g) -> Optional[Vector]:
        """``g ∨ 0`` when ``g`` is in the box and the join exists there."""
        i = self.index.get(tuple(g))
        if i is None:
            return None
        j = self.join(i, self.zero)
        return None if j is None else self.points[j]


@lru_cache(maxsize=64)
def box(P: GroupPresentation, k: int) -> Box:
    return Box(P, k)


# --------------------------------------------------------------------------
# group predicates

@dataclass(frozen=True)
class GroupPredicates:
    """Predicates of a presentation.  Interpolation, lattice order and total
    order are verified on the k-box only; a ``False`` there is a genuine
    counterexample, a ``True`` means "no counterexample up to k"."""

    is_order_unit: bool
    is_generative: bool
    has_interpolation: bool
    is_lattice_ordered: bool
    is_totally_ordered: bool
    is_archimedean: Optional[bool]
    k: int
    witnesses: Dict[str, tuple] = field(default_factory=dict, compare=False)

    BOUNDED = ("has_interpolation", "is_lattice_ordered", "is_totally_ordered")


def is_order_unit(P: GroupPresentation, v=None) -> bool:
    """Exact: the cone spans ``Z^rank`` as a group and ``v`` is interior."""
    v = P.unit if v is None else tuple(v)
    C = cone_of(P)
    if P.rank == 0:
        return True
    if not C.gens or not _saturated(C.gens) or rank(C.gens) != P.rank:
        return False
    return C.interior(v) and C.contains(v)


def is_generative(P: GroupPresentation) -> bool:
    """Does the unit interval generate the cone as a semigroup?"""
    E = [g for g in interval_points(P) if any(g)]
    sub = Cone(E, P.rank)
    return all(sub.contains(c) for c in cone_of(P).gens)


def interpolation_witness(B: Box) -> Optional[tuple]:
    """Translate so that ``d = 0``: for each ``c`` the common lower bounds of
    ``c`` and ``0`` must have a greatest element."""
    L = B.leq
    for c in range(len(B)):
        mask = L[:, c] & L[:, B.zero]
        if B._extreme(mask, upper=False) is None:
            # two distinct maximal lower bounds have no common upper bound below c, 0
            idx = np.flatnonzero(mask)
            sub = L[np.ix_(idx, idx)]
            maximal = [int(idx[i]) for i in range(len(idx)) if sub[i, :].sum() == 1]
            a, b = maximal[0], maximal[1]
            return (B.points[a], B.points[b], B.points[c], B.P.zero)
    return None


def lattice_witness(B: Box) -> Optional[Vector]:
    """An element ``g`` of the box for which ``g ∨ 0`` does not exist."""
    for i in range(len(B)):
        if B.join(i, B.zero) is None:
            return B.points[i]
    return None


def archimedean_witness(P: GroupPresentation) -> Optional[Vector]:
    """A lattice point of the rational cone that is missing from the semigroup.

    Any such point lies in ``{x : 0 <= f.x <= f.σ}`` where ``σ`` is the sum
    of the primitive extreme rays, so it suffices to scan that polytope.
    """
    C = cone_of(P)
    facets = C.facets()
    if not facets:
        return None
    rays, lin = cone_rays(facets, P.rank)
    if lin:
        raise PreconditionError("cone is not pointed")
    sigma = [0] * P.rank
    for r in rays:
        sigma = [a + b for a, b in zip(sigma, r)]
    A = [list(f) for f in facets] + [[-x for x in f] for f in facets]
    b = [0] * len(facets) + [-_dot(f, sigma) for f in facets]
    verts = polytope_vertices(A, b, [], [], P.rank)

    def inside(p):
        return all(_dot(row, p) >= bb for row, bb in zip(A, b))

    for p in integer_points(verts, inside):
        if not C.contains(p):
            return p
    return None


def group_predicates(P: GroupPresentation, k: int = 2) -> GroupPredicates:
    ou = is_order_unit(P)
    gen = is_generative(P)
    B = box(P, k)
    wit = {}
    iw = interpolation_witness(B)
    lw = lattice_witness(B)
    tw = next((g for i, g in enumerate(B.points)
               if not B.leq[i, B.zero] and not B.leq[B.zero, i]), None)
    for name, w in (("has_interpolation", iw), ("is_lattice_ordered", lw),
                    ("is_totally_ordered", tw)):
        if w is not None:
            wit[name] = w
    arch = None
    if ou:
        aw = archimedean_witness(P)
        arch = aw is None
        if aw is not None:
            wit["is_archimedean"] = aw
    return GroupPredicates(ou, gen, iw is None, lw is None, tw is None, arch, k, wit)


# --------------------------------------------------------------------------
# states

@dataclass(frozen=True)
class StateVector:
    """A state as a functional on ``Z^rank``: ``ω(g) = values . g``."""

    values: Tuple[Fraction, ...]

    def __call__(self, g) -> Fraction:
        return sum((a * x for a, x in zip(self.values, g)), Fraction(0))


@dataclass(frozen=True)
class StateSpace:
    vertices: Tuple[StateVector, ...]


def states_of(P: GroupPresentation) -> StateSpace:
    """Extreme points of ``{ω : ω >= 0 on the cone, ω(u) = 1}``.

    For a universal group of an algebra the restriction ``ω ↦ ω ∘ images``
    is checked to be a bijection onto the extreme probability measures.
    """
    C = cone_of(P)
    A = [list(g) for g in C.gens]
    try:
        verts = polytope_vertices(A, [0] * len(A), [list(P.unit)], [1], P.rank)
    except UnboundedPolyhedron:
        raise PreconditionError("state space is unbounded: unit is not an order unit") from None
    space = StateSpace(tuple(StateVector(v) for v in verts))
    if P.source is not None and P.images is not None:
        from .measures import extreme_points, probability_polytope
        restricted = sorted(tuple(s(v) for v in P.images) for s in space.vertices)
        measures = sorted(m.values for m in extreme_points(probability_polytope(P.source)))
        if restricted != measures:
            raise AssertionError("extreme states do not restrict to extreme measures")
    return space


# --------------------------------------------------------------------------
# function groups

def _atoms(B: EffectAlgebraTable) -> List[int]:
    o = derive_order(B)
    nonzero = [x for x in range(B.n) if x != B.zero]
    return [x for x in nonzero
            if not any(y != x and o.leq[y][x] for y in nonzero)]


def function_group(B: EffectAlgebraTable, A: Optional[GroupPresentation] = None,
                   u=1) -> GroupPresentation:
    """Functions from the atoms of a finite Boolean algebra into ``A``, ordered pointwise.

    ``u`` is either a single unit (used at every atom) or one unit per atom;
    a unit for a rank-1 ``A`` may be given as a plain integer.
    """
    if not classify(B).is_boolean_ea:
        raise PreconditionError(f"{B.name!r} is not a Boolean effect algebra")
    A = A or integers()
    atoms = _atoms(B)
    m, r = len(atoms), A.rank

    def as_vec(x):
        return (int(x),) if isinstance(x, (int, np.integer)) else tuple(x)

    if isinstance(u, (int, np.integer)) or (len(u) == r and not isinstance(u[0], (tuple, list))
                                            and r > 1):
        units = [as_vec(u)] * m
    else:
        units = [as_vec(x) for x in u]
    if len(units) != m or any(len(v) != r for v in units):
        raise FormatError("unit assignment does not match the atoms")
    for v in units:
        if not is_order_unit(A, v):
            raise PreconditionError(f"{v} is not an order unit of {A.label}")
    gens = []
    for i in range(m):
        for g in A.cone_gens:
            vec = [0] * (m * r)
            vec[i * r:(i + 1) * r] = g
            gens.append(tuple(vec))
    unit = tuple(x for v in units for x in v)
    label = f"F({B.name},{A.label},{'/'.join(_vec_label(v) for v in units)})"
    return GroupPresentation(m * r, unit, tuple(gens), label=label)


# --------------------------------------------------------------------------
# the correspondences between algebra and group

@dataclass
class CorrespondenceReport:
    k: int
    rows: List[Tuple[str, bool, bool, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(agree for *_, agree in self.rows)

    def add(self, name, algebra_side, group_side, agree=None):
        if agree is None:
            agree = algebra_side == group_side
        self.rows.append((name, algebra_side, group_side, agree))


def unit_is_smallest_order_unit(P: GroupPresentation, k: int) -> Tuple[bool, Optional[Vector]]:
    """Every order unit in the k-box lies above ``u``?  Returns a witness otherwise."""
    B = box(P, k)
    C = cone_of(P)
    u = B.index[P.unit]
    for i, g in enumerate(B.points):
        if C.interior(g) and is_order_unit(P, g) and not B.leq[u, i]:
            return False, g
    return True, None


def correspondence_checks(t: EffectAlgebraTable, k: int = 3) -> CorrespondenceReport:
    """Evaluate both sides of each algebra/group correspondence and compare."""
    ok, _ = is_interval_realization(t)
    if not ok:
        raise PreconditionError(f"{t.name!r} is not realized as a unit interval")
    P = universal_group(t)
    gp = group_predicates(P, k)
    c = classify(t)
    o = derive_order(t)
    rep = CorrespondenceReport(k)
    rep.add("mv-effect <-> lattice-ordered", c.is_mv_effect, gp.is_lattice_ordered)
    rep.add("riesz <-> interpolation", c.has_riesz, gp.has_interpolation)
    smallest, _ = unit_is_smallest_order_unit(P, k)
    rep.add("boolean <-> interpolation and smallest unit", c.is_boolean_ea,
            gp.has_interpolation and smallest)
    chain = all(o.leq[x][y] or o.leq[y][x] for x, y in product(range(t.n), repeat=2))
    rep.add("chain -> totally ordered", chain, gp.is_totally_ordered,
            (not chain) or gp.is_totally_ordered)
    return rep
