"""MV-algebras and Heyting effect algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from itertools import product
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from .core import (EffectAlgebraTable, Violation, ValidationResult, center, classify,
                   derive_order, is_lattice, validate_axioms)
from .errors import FormatError, NotLatticeError, NotMVError


@dataclass(frozen=True)
class MVTable:
    """Total MV-sum and supplement on ``0..n-1``."""

    n: int
    zero: int
    unit: int
    mvsum: Tuple[Tuple[int, ...], ...]
    supp: Tuple[int, ...]
    name: str = field(default="", compare=False)
    labels: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mvsum", tuple(tuple(r) for r in self.mvsum))
        object.__setattr__(self, "supp", tuple(self.supp))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(
                "0" if x == self.zero else "u" if x == self.unit else f"e{x}"
                for x in range(self.n)))


def _check_mv_format(m: MVTable) -> None:
    n = m.n
    if n < 1 or not (0 <= m.zero < n and 0 <= m.unit < n):
        raise FormatError("bad carrier or constants")
    if len(m.mvsum) != n or any(len(r) != n for r in m.mvsum) or len(m.supp) != n:
        raise FormatError("MV tables have the wrong shape")
    for x, row in enumerate(m.mvsum):
        for y, c in enumerate(row):
            if not (isinstance(c, int) and 0 <= c < n):
                raise FormatError(f"mvsum entry ({x},{y}) = {c!r} out of range")
    for x, c in enumerate(m.supp):
        if not (isinstance(c, int) and 0 <= c < n):
            raise FormatError(f"supp entry {x} = {c!r} out of range")


@lru_cache(maxsize=1024)
def validate_mv(m: MVTable) -> ValidationResult:
    _check_mv_format(m)
    n, s, sp, z, u = m.n, m.mvsum, m.supp, m.zero, m.unit
    out = []

    def bad(axiom, *w):
        out.append(Violation(axiom, tuple(w)))

    if z == u:
        bad("degenerate", z)
    for p, q, r in product(range(n), repeat=3):
        if s[p][s[q][r]] != s[s[p][q]][r]:
            bad("i", p, q, r)
    for p, q in product(range(n), repeat=2):
        if s[p][q] != s[q][p]:
            bad("ii", p, q)
        if s[sp[s[p][sp[q]]]][p] != s[sp[s[q][sp[p]]]][q]:
            bad("viii", p, q)
    for p in range(n):
        if s[p][z] != p:
            bad("iii", p)
        if s[p][u] != u:
            bad("iv", p)
        if sp[sp[p]] != p:
            bad("v", p)
        if s[p][sp[p]] != u:
            bad("vii", p)
    if sp[z] != u:
        bad("vi", z)
    return ValidationResult(tuple(out))


def mv_to_ea(m: MVTable) -> EffectAlgebraTable:
    """Restrict the MV-sum to orthogonal pairs (``p <= q⊥``)."""
    res = validate_mv(m)
    if not res.ok:
        raise NotMVError(f"MV table {m.name!r} fails axioms {res.axioms()}")
    n, s, sp = m.n, m.mvsum, m.supp
    # p <= q⊥ in MV terms: p⊥ +̂ q⊥ = u
    osum = [[s[p][q] if s[sp[p]][sp[q]] == m.unit else None for q in range(n)]
            for p in range(n)]
    t = EffectAlgebraTable(n, m.zero, m.unit, osum, m.name, m.labels)
    if not validate_axioms(t).ok:
        raise AssertionError("MV translation does not give an effect algebra")
    o = derive_order(t)
    for p, q in product(range(n), repeat=2):
        if o.leq[p][q] != (s[sp[p]][q] == m.unit):
            raise AssertionError(f"order mismatch at {(p, q)}")
        if o.join[p][q] != s[sp[s[p][sp[q]]]][p]:
            raise AssertionError(f"join law fails at {(p, q)}")
    if not classify(t).is_mv_effect:
        raise AssertionError("MV translation is not an MV-effect algebra")
    return t


def ea_to_mv(t: EffectAlgebraTable) -> MVTable:
    """``p +̂ q := p ⊕ (p⊥ ∧ q)`` on an MV-effect algebra."""
    if not classify(t).is_mv_effect:
        raise NotMVError(f"{t.name!r} is not an MV-effect algebra")
    o = derive_order(t)
    mvsum = [[t.osum[p][o.meet[o.supp[p]][q]] for q in range(t.n)] for p in range(t.n)]
    m = MVTable(t.n, t.zero, t.unit, mvsum, o.supp, t.name, t.labels)
    if not validate_mv(m).ok:
        raise AssertionError("translated table fails the MV axioms")
    return m


def mv_criterion(t: EffectAlgebraTable) -> bool:
    """On a lattice-ordered algebra: ``p ∧ q = 0`` always forces ``p ⊥ q``."""
    if not is_lattice(t):
        raise NotLatticeError(f"{t.name!r} is not lattice ordered")
    o = derive_order(t)
    return all(t.osum[p][q] is not None
               for p, q in product(range(t.n), repeat=2) if o.meet[p][q] == t.zero)


def mv_center(m: MVTable) -> FrozenSet[int]:
    """Center computed three independent ways, which must agree."""
    t = mv_to_ea(m)
    o = derive_order(t)
    by_definition = center(t)
    by_meet = frozenset(c for c in range(m.n) if o.meet[c][o.supp[c]] == m.zero)
    by_idempotence = frozenset(c for c in range(m.n) if m.mvsum[c][c] == c)
    if not by_definition == by_meet == by_idempotence:
        raise AssertionError(
            f"center descriptions disagree: {sorted(by_definition)} / "
            f"{sorted(by_meet)} / {sorted(by_idempotence)}")
    return by_definition


# --------------------------------------------------------------------------
# Heyting layer

@dataclass(frozen=True)
class HeytingStructure:
    cond: Tuple[Tuple[int, ...], ...]
    neg: Tuple[int, ...]
    heyting_center: FrozenSet[int]


def join_all(t: EffectAlgebraTable, xs) -> int:
    o = derive_order(t)
    return reduce(lambda a, b: o.join[a][b], xs, t.zero)


@lru_cache(maxsize=1024)
def derive_heyting(t: EffectAlgebraTable) -> Optional[HeytingStructure]:
    """Heyting conditional as the join of ``{p : p ∧ q <= r}``, then verified.

    Returns ``None`` if the candidate fails the adjunction anywhere.
    """
    if not is_lattice(t):
        raise NotLatticeError(f"{t.name!r} is not lattice ordered")
    o = derive_order(t)
    n, leq, meet = t.n, o.leq, o.meet
    cond = [[join_all(t, [p for p in range(n) if leq[meet[p][q]][r]]) for r in range(n)]
            for q in range(n)]
    for p, q, r in product(range(n), repeat=3):
        if leq[meet[p][q]][r] != leq[p][cond[q][r]]:
            return None
    neg = tuple(cond[p][t.zero] for p in range(n))
    hc = frozenset(neg)
    if hc != frozenset(c for c in range(n) if neg[neg[c]] == c):
        raise AssertionError("Heyting center descriptions disagree")
    return HeytingStructure(tuple(map(tuple, cond)), neg, hc)


@dataclass
class ClauseReport:
    """Clause name -> witness tuple for failures; empty means all passed."""

    failures: Dict[str, Tuple] = field(default_factory=dict)
    checked: list = field(default_factory=list)
    notes: Dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, clause: str, witness=None):
        self.checked.append(clause)
        if witness is not None:
            self.failures[clause] = witness


def check_heyting_effect_laws(t: EffectAlgebraTable,
                              h: Optional[HeytingStructure] = None) -> ClauseReport:
    """Clauses (i)-(vi) for a Heyting effect algebra: negation vs supplement and center."""
    h = h or derive_heyting(t)
    if h is None:
        raise NotMVError(f"{t.name!r} carries no Heyting conditional")
    o = derive_order(t)
    n, leq, sp = t.n, o.leq, o.supp
    c = center(t)
    neg = h.neg
    rep = ClauseReport()
    rep.record("i", next(((e,) for e in range(n) if neg[e] not in c), None))
    rep.record("ii", next(((e,) for e in range(n)
                           if not leq[neg[e]][sp[e]] or (neg[e] == sp[e]) != (e in c)), None))
    rep.record("iii", None if h.heyting_center == c else (tuple(sorted(h.heyting_center)),
                                                           tuple(sorted(c))))
    rep.record("iv", next(((e, f) for e, f in product(range(n), repeat=2)
                           if o.meet[e][f] == t.zero and t.osum[e][f] is None), None))
    rep.record("v", None if classify(t).is_mv_effect else ())
    rep.record("vi", next(((p,) for p in range(n)
                           if o.join[neg[p]][neg[neg[p]]] != t.unit), None))
    return rep


def hmv_via_prime_map(t: EffectAlgebraTable) -> Optional[Tuple[int, ...]]:
    """The map ``′: E -> C(E)`` with ``e ∧ f = 0 iff e <= f′``, if it exists."""
    if not is_lattice(t):
        raise NotLatticeError(f"{t.name!r} is not lattice ordered")
    o = derive_order(t)
    n = t.n
    c = center(t)
    prime = tuple(join_all(t, [z for z in sorted(c) if o.meet[z][f] == t.zero])
                  for f in range(n))
    if any(p not in c for p in prime):
        return None
    for e, f in product(range(n), repeat=2):
        if (o.meet[e][f] == t.zero) != o.leq[e][prime[f]]:
            return None
    return prime


def mv_from_sums(elements: Sequence[str], zero: str, unit: str, sums, supps,
                 name: str = "") -> MVTable:
    """Build an MV table from named ``a + b = c`` and ``a' = b`` entries."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = [[None] * n for _ in range(n)]
    sp = [None] * n
    try:
        for a, b, c in sums:
            for x, y in ((index[a], index[b]), (index[b], index[a])):
                if table[x][y] is not None and table[x][y] != index[c]:
                    raise FormatError(f"conflicting MV sums for {a} + {b}")
                table[x][y] = index[c]
        for a, b in supps:
            if sp[index[a]] is not None and sp[index[a]] != index[b]:
                raise FormatError(f"conflicting supplements for {a}")
            sp[index[a]] = index[b]
        z, u = index[zero], index[unit]
    except KeyError as exc:
        raise FormatError(f"unknown element {exc.args[0]!r}") from None
    missing = [(elements[x], elements[y]) for x in range(n) for y in range(n)
               if table[x][y] is None]
    if missing:
        raise FormatError(f"mvsum is not total: missing {missing[0][0]} + {missing[0][1]}")
    if any(s is None for s in sp):
        raise FormatError("supp is not total")
    return MVTable(n, z, u, table, sp, name, tuple(elements))
