"""Finite effect algebras: tables, axioms, derived order and classification."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import FormatError, PreconditionError

Cell = Optional[int]


@dataclass(frozen=True)
class EffectAlgebraTable:
    """A finite carrier ``0..n-1`` with a partial orthosum table.

    ``osum[x][y]`` is the index of ``x ⊕ y`` or ``None`` when the sum is
    undefined.  ``zero`` and ``unit`` are named explicitly; element 0 of the
    carrier need not be the zero.  ``name`` and ``labels`` are cosmetic and
    excluded from equality and hashing.
    """

    n: int
    zero: int
    unit: int
    osum: Tuple[Tuple[Cell, ...], ...]
    name: str = field(default="", compare=False)
    labels: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "osum", tuple(tuple(row) for row in self.osum))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(_default_labels(self)))

    @classmethod
    def from_sums(cls, elements: Sequence[str], zero: str, unit: str,
                  sums: Iterable[Tuple[str, str, str]], name: str = "",
                  implied_zero: bool = True) -> "EffectAlgebraTable":
        """Build a table from named sums ``a + b = c`` with symmetric closure.

        With ``implied_zero`` every ``x + zero = x`` is added.  Conflicting
        definitions raise :class:`FormatError`.
        """
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise FormatError("duplicate element names")
        n = len(elements)
        table: List[List[Cell]] = [[None] * n for _ in range(n)]

        def put(a, b, c):
            for x, y in ((a, b), (b, a)):
                old = table[x][y]
                if old is not None and old != c:
                    raise FormatError(
                        f"conflicting sums for {elements[x]} + {elements[y]}: "
                        f"{elements[old]} vs {elements[c]}")
                table[x][y] = c

        try:
            z = index[zero]
            index[unit]
            triples = [(index[a], index[b], index[c]) for a, b, c in sums]
        except KeyError as exc:
            raise FormatError(f"unknown element {exc.args[0]!r}") from None
        for a, b, c in triples:
            put(a, b, c)
        if implied_zero:
            for x in range(n):
                if table[x][z] is None:
                    put(x, z, x)
        return cls(n, z, index[unit], tuple(map(tuple, table)), name, tuple(elements))

    @property
    def elements(self) -> range:
        return range(self.n)

    def sum(self, x: int, y: int) -> Cell:
        return self.osum[x][y]

    def orthogonal(self, x: int, y: int) -> bool:
        return self.osum[x][y] is not None

    def label(self, x: int) -> str:
        return self.labels[x]

    def relabel(self, perm: Sequence[int], name: Optional[str] = None) -> "EffectAlgebraTable":
        """Return the isomorphic table with element ``x`` renamed ``perm[x]``."""
        n = self.n
        inv = [0] * n
        for x, px in enumerate(perm):
            inv[px] = x
        osum = tuple(
            tuple(None if self.osum[inv[i]][inv[j]] is None else perm[self.osum[inv[i]][inv[j]]]
                  for j in range(n))
            for i in range(n))
        labels = tuple(self.labels[inv[i]] for i in range(n))
        return EffectAlgebraTable(n, perm[self.zero], perm[self.unit], osum,
                                  self.name if name is None else name, labels)


def _default_labels(t: EffectAlgebraTable) -> List[str]:
    out = []
    for x in range(t.n):
        if x == t.zero:
            out.append("0")
        elif x == t.unit:
            out.append("u")
        else:
            out.append(f"e{x}")
    return out


# --------------------------------------------------------------------------
# axioms

@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Tuple[int, ...]
    message: str = ""


@dataclass(frozen=True)
class ValidationResult:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def axioms(self) -> List[str]:
        return sorted({v.axiom for v in self.violations})


def check_format(t: EffectAlgebraTable) -> None:
    """Raise :class:`FormatError` unless ``t`` is structurally well-formed."""
    n = t.n
    if n < 1:
        raise FormatError("empty carrier")
    if not (0 <= t.zero < n and 0 <= t.unit < n):
        raise FormatError("zero/unit out of range")
    if len(t.osum) != n or any(len(row) != n for row in t.osum):
        raise FormatError(f"orthosum table is not {n}x{n}")
    for x, row in enumerate(t.osum):
        for y, c in enumerate(row):
            if c is not None and not (isinstance(c, int) and 0 <= c < n):
                raise FormatError(f"entry ({x},{y}) = {c!r} out of range")


@lru_cache(maxsize=4096)
def validate_axioms(t: EffectAlgebraTable) -> ValidationResult:
    """Check commutativity, guarded associativity, supplements and zero-unit."""
    check_format(t)
    n, s, u, z = t.n, t.osum, t.unit, t.zero
    out: List[Violation] = []
    if z == u:
        out.append(Violation("degenerate", (z,), "zero equals unit"))
    for x, y in product(range(n), repeat=2):
        if s[x][y] is not None and s[y][x] != s[x][y]:
            out.append(Violation("i", (x, y), "x+y defined but y+x differs or is undefined"))
    for x, y, w in product(range(n), repeat=3):
        a = s[x][y]
        if a is None:
            continue
        b = s[a][w]
        if b is None:
            continue
        c = s[y][w]
        if c is None:
            out.append(Violation("ii", (x, y, w), "(x+y)+z defined but y+z undefined"))
        elif s[x][c] != b:
            out.append(Violation("ii", (x, y, w), "(x+y)+z != x+(y+z)"))
    for x in range(n):
        sup = [y for y in range(n) if s[x][y] == u]
        if len(sup) != 1:
            out.append(Violation("iii", (x,) + tuple(sup),
                                 f"{len(sup)} supplements instead of exactly one"))
    for x in range(n):
        if s[x][u] is not None and x != z:
            out.append(Violation("iv", (x,), "x+u defined with x != 0"))
    return ValidationResult(tuple(out))


def require_valid(t: EffectAlgebraTable) -> None:
    res = validate_axioms(t)
    if not res.ok:
        raise PreconditionError(f"table {t.name!r} fails axioms {res.axioms()}")


# --------------------------------------------------------------------------
# order structure

@dataclass(frozen=True)
class OrderStructure:
    leq: Tuple[Tuple[bool, ...], ...]
    supp: Tuple[int, ...]
    meet: Tuple[Tuple[Cell, ...], ...]
    join: Tuple[Tuple[Cell, ...], ...]
    diff: Tuple[Tuple[Cell, ...], ...]  # diff[y][x] = y ⊖ x when x <= y

    @property
    def n(self) -> int:
        return len(self.supp)

    def below(self, y: int) -> List[int]:
        return [x for x in range(self.n) if self.leq[x][y]]

    def above(self, x: int) -> List[int]:
        return [y for y in range(self.n) if self.leq[x][y]]


def _bounds(leq, n):
    meet = [[None] * n for _ in range(n)]
    join = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            lower = [w for w in range(n) if leq[w][x] and leq[w][y]]
            glb = next((w for w in lower if all(leq[v][w] for v in lower)), None)
            upper = [w for w in range(n) if leq[x][w] and leq[y][w]]
            lub = next((w for w in upper if all(leq[w][v] for v in upper)), None)
            meet[x][y] = meet[y][x] = glb
            join[x][y] = join[y][x] = lub
    return meet, join


@lru_cache(maxsize=4096)
def derive_order(t: EffectAlgebraTable) -> OrderStructure:
    """Order ``x <= y iff x ⊕ z = y for some z``, supplements, meets, joins."""
    require_valid(t)
    n, s = t.n, t.osum
    leq = [[False] * n for _ in range(n)]
    diff = [[None] * n for _ in range(n)]
    for x in range(n):
        for w in range(n):
            y = s[x][w]
            if y is not None:
                leq[x][y] = True
                diff[y][x] = w
    supp = [next(y for y in range(n) if s[x][y] == t.unit) for x in range(n)]
    meet, join = _bounds(leq, n)
    freeze = lambda m: tuple(map(tuple, m))  # noqa: E731
    return OrderStructure(freeze(leq), tuple(supp), freeze(meet), freeze(join), freeze(diff))


# --------------------------------------------------------------------------
# predicates

def is_principal(t: EffectAlgebraTable, p: int) -> bool:
    o = derive_order(t)
    down = o.below(p)
    for x in down:
        for y in down:
            c = t.osum[x][y]
            if c is not None and not o.leq[c][p]:
                return False
    return True


def splits_over(t: EffectAlgebraTable, x: int, y: int, z: int) -> bool:
    """Is ``x = x1 ⊕ x2`` for some ``x1 <= y`` and ``x2 <= z``?"""
    o = derive_order(t)
    for x1 in o.below(y):
        x2 = o.diff[x][x1]
        if x2 is not None and o.leq[x2][z]:
            return True
    return False


def has_riesz(t: EffectAlgebraTable) -> bool:
    return riesz_witness(t) is None


def riesz_witness(t: EffectAlgebraTable):
    o = derive_order(t)
    n = t.n
    for y in range(n):
        for z in range(n):
            s = t.osum[y][z]
            if s is None:
                continue
            for x in o.below(s):
                if not splits_over(t, x, y, z):
                    return (x, y, z)
    return None


def is_lattice(t: EffectAlgebraTable) -> bool:
    o = derive_order(t)
    return all(c is not None for row in o.meet for c in row) and \
        all(c is not None for row in o.join for c in row)


def is_distributive(t: EffectAlgebraTable) -> bool:
    if not is_lattice(t):
        return False
    o = derive_order(t)
    m, j = o.meet, o.join
    return all(m[x][j[y][z]] == j[m[x][y]][m[x][z]]
               for x, y, z in product(range(t.n), repeat=3))


def is_orthoalgebra(t: EffectAlgebraTable) -> bool:
    o = derive_order(t)
    return all(o.meet[x][o.supp[x]] == t.zero for x in range(t.n))


def principal_elements(t: EffectAlgebraTable) -> FrozenSet[int]:
    return frozenset(p for p in range(t.n) if is_principal(t, p))


def _center_raw(t: EffectAlgebraTable) -> FrozenSet[int]:
    o = derive_order(t)
    principal = principal_elements(t)
    out = set()
    for z in range(t.n):
        zs = o.supp[z]
        if z in principal and zs in principal and \
                all(splits_over(t, x, z, zs) for x in range(t.n)):
            out.add(z)
    return frozenset(out)


def subtable(t: EffectAlgebraTable, S: Iterable[int], name: str = "") -> EffectAlgebraTable:
    """Restriction of ``⊕`` to ``S`` (which must be a subeffect algebra)."""
    keep = sorted(S)
    pos = {x: i for i, x in enumerate(keep)}
    osum = tuple(tuple(pos.get(t.osum[x][y]) if t.osum[x][y] in pos else None
                       for y in keep) for x in keep)
    return EffectAlgebraTable(len(keep), pos[t.zero], pos[t.unit], osum,
                              name or f"{t.name}|sub", tuple(t.labels[x] for x in keep))


def _is_boolean(t: EffectAlgebraTable) -> bool:
    return validate_axioms(t).ok and len(principal_elements(t)) == t.n and has_riesz(t)


@lru_cache(maxsize=4096)
def center(t: EffectAlgebraTable) -> FrozenSet[int]:
    """Central elements; the result is checked to be a Boolean subeffect algebra."""
    c = _center_raw(t)
    if not is_subeffect_algebra(t, c):
        raise AssertionError(f"center of {t.name!r} is not a subeffect algebra")
    if not _is_boolean(subtable(t, c)):
        raise AssertionError(f"center of {t.name!r} is not Boolean")
    return c


def jointly_orthogonal(t: EffectAlgebraTable, x: int, y: int, z: int) -> bool:
    s = t.osum[x][y]
    return s is not None and t.osum[s][z] is not None


def compatible(t: EffectAlgebraTable, x: int, y: int) -> bool:
    """Mackey compatibility: a common part ``z`` with jointly orthogonal rests."""
    o = derive_order(t)
    for z in range(t.n):
        x1 = o.diff[x][z]
        y1 = o.diff[y][z]
        if x1 is not None and y1 is not None and jointly_orthogonal(t, x1, y1, z):
            return True
    return False


def is_subeffect_algebra(t: EffectAlgebraTable, S: Iterable[int]) -> bool:
    S = set(S)
    if t.zero not in S or t.unit not in S:
        return False
    o = derive_order(t)
    if any(o.supp[x] not in S for x in S):
        return False
    return all(t.osum[x][y] in S for x in S for y in S if t.osum[x][y] is not None)


# --------------------------------------------------------------------------
# laws

@dataclass
class LawReport:
    failures: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    checked: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_basic_laws(t: EffectAlgebraTable) -> LawReport:
    o = derive_order(t)
    n, s, leq, sp = t.n, t.osum, o.leq, o.supp
    rep = LawReport()

    def law(name, items, pred):
        rep.checked.append(name)
        for w in items:
            if not pred(*w):
                rep.failures[name] = tuple(w)
                return

    pairs = list(product(range(n), repeat=2))
    triples = list(product(range(n), repeat=3))
    law("reflexive", [(x,) for x in range(n)], lambda x: leq[x][x])
    law("antisymmetric", pairs, lambda x, y: not (leq[x][y] and leq[y][x]) or x == y)
    law("transitive", triples, lambda x, y, z: not (leq[x][y] and leq[y][z]) or leq[x][z])
    law("bounded", [(x,) for x in range(n)], lambda x: leq[t.zero][x] and leq[x][t.unit])
    law("cancellation", triples,
        lambda x, y, z: s[x][z] is None or s[y][z] is None
        or not leq[s[x][z]][s[y][z]] or leq[x][y])
    law("orthogonal-iff-below-supplement", pairs,
        lambda x, y: (s[x][y] is not None) == leq[x][sp[y]])
    law("supplement-antitone", pairs, lambda x, y: not leq[x][y] or leq[sp[y]][sp[x]])
    law("double-supplement", [(x,) for x in range(n)], lambda x: sp[sp[x]] == x)
    law("zero-sum", [(x,) for x in range(n)], lambda x: s[x][t.zero] == x)
    law("supplement-constants", [()],
        lambda: sp[t.zero] == t.unit and sp[t.unit] == t.zero)
    law("de-morgan-meet", pairs,
        lambda x, y: o.meet[x][y] is None or o.join[sp[x]][sp[y]] == sp[o.meet[x][y]])
    law("de-morgan-join", pairs,
        lambda x, y: o.join[x][y] is None or o.meet[sp[x]][sp[y]] == sp[o.join[x][y]])
    return rep


def is_omp_traditional(t: EffectAlgebraTable) -> bool:
    """Orthomodular poset in the classical order-plus-orthocomplement sense."""
    o = derive_order(t)
    n, leq, sp, j = t.n, o.leq, o.supp, o.join
    for x in range(n):
        if j[x][sp[x]] != t.unit:
            return False
        for y in range(n):
            if leq[x][sp[y]] and j[x][y] is None:
                return False
            if leq[x][y]:
                inner = j[x][sp[y]]
                if inner is None or j[x][sp[inner]] != y:
                    return False
    return True


# --------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class ClassificationReport:
    is_orthoalgebra: bool
    is_omp: bool
    is_lattice: bool
    is_distributive: bool
    is_oml: bool
    has_riesz: bool
    is_boolean_ea: bool
    is_mv_effect: bool
    is_hmv: bool
    principal_elements: FrozenSet[int]
    center: FrozenSet[int]

    FLAGS = ("is_orthoalgebra", "is_omp", "is_lattice", "is_distributive", "is_oml",
             "has_riesz", "is_boolean_ea", "is_mv_effect", "is_hmv")

    def flags(self) -> Dict[str, bool]:
        return {k: getattr(self, k) for k in self.FLAGS}


@lru_cache(maxsize=4096)
def classify(t: EffectAlgebraTable) -> ClassificationReport:
    from .structures import derive_heyting, hmv_via_prime_map

    principal = principal_elements(t)
    omp = len(principal) == t.n
    lattice = is_lattice(t)
    riesz = has_riesz(t)
    # order-theoretic Heyting alone admits non-MV lattices; require the central prime map too
    hmv = lattice and derive_heyting(t) is not None and hmv_via_prime_map(t) is not None
    return ClassificationReport(
        is_orthoalgebra=is_orthoalgebra(t),
        is_omp=omp,
        is_lattice=lattice,
        is_distributive=is_distributive(t),
        is_oml=lattice and omp,
        has_riesz=riesz,
        is_boolean_ea=omp and riesz,
        is_mv_effect=lattice and riesz,
        is_hmv=hmv,
        principal_elements=principal,
        center=center(t),
    )
