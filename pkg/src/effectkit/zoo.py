"""Named constructions of finite effect algebras."""
from __future__ import annotations

import dataclasses
import itertools
import re
import string
from typing import Callable, List, Sequence

from .core import EffectAlgebraTable, validate_axioms
from .errors import CapExceeded, FormatError, cap

ZOO_CAP = 256


def _check_cap(n: int) -> None:
    limit = cap(ZOO_CAP)
    if n > limit:
        raise CapExceeded(f"construction would have {n} elements (cap {limit})")


def _finish(t: EffectAlgebraTable) -> EffectAlgebraTable:
    res = validate_axioms(t)
    if not res.ok:
        raise AssertionError(f"construction {t.name} fails axioms {res.axioms()}")
    return t


def boolean(k: int) -> EffectAlgebraTable:
    """The Boolean algebra of subsets of a k-element set; ``a ⊕ b = a ∪ b`` iff disjoint."""
    n = 1 << k
    _check_cap(n)
    names = string.ascii_lowercase
    labels = []
    for m in range(n):
        if m == 0:
            labels.append("0")
        elif m == n - 1:
            labels.append("u")
        else:
            labels.append("".join(names[i] for i in range(k) if m >> i & 1))
    osum = [[(a | b) if not a & b else None for b in range(n)] for a in range(n)]
    return _finish(EffectAlgebraTable(n, 0, n - 1, osum, f"boolean({k})", tuple(labels)))


def chain(m: int) -> EffectAlgebraTable:
    """Łukasiewicz chain ``{0, 1/m, ..., 1}`` with truncation-free addition."""
    if m < 1:
        raise FormatError("chain length must be positive")
    n = m + 1
    _check_cap(n)
    labels = ["0"] + [f"{i}/{m}" for i in range(1, m)] + ["u"]
    if m == 2:
        labels[1] = "h"
    osum = [[i + j if i + j <= m else None for j in range(n)] for i in range(n)]
    return _finish(EffectAlgebraTable(n, 0, m, osum, f"chain({m})", tuple(labels)))


def horizontal_sum(*parts: EffectAlgebraTable, name: str = "") -> EffectAlgebraTable:
    """Glue algebras along their common zero and unit."""
    n = 2 + sum(p.n - 2 for p in parts)
    _check_cap(n)
    labels = ["0", "u"]
    maps = []
    for k, p in enumerate(parts):
        m = {p.zero: 0, p.unit: 1}
        for x in p.elements:
            if x not in m:
                m[x] = len(labels)
                labels.append(p.labels[x] if len(parts) == 1 else f"{p.labels[x]}{k + 1}")
        maps.append(m)
    osum = [[None] * n for _ in range(n)]
    for p, m in zip(parts, maps):
        for x in p.elements:
            for y in p.elements:
                c = p.osum[x][y]
                if c is not None:
                    osum[m[x]][m[y]] = m[c]
    if len(set(labels)) != len(labels):
        labels = ["0", "u"] + [f"e{i}" for i in range(2, n)]
    return _finish(EffectAlgebraTable(n, 0, 1, osum, name or "hsum", tuple(labels)))


def mo(k: int) -> EffectAlgebraTable:
    """Horizontal sum of k four-element Boolean blocks (MO_k)."""
    n = 2 + 2 * k
    _check_cap(n)
    labels = ["0", "u"]
    for i in range(k):
        c = string.ascii_lowercase[i]
        labels += [c, c + "c"]
    osum = [[None] * n for _ in range(n)]
    for x in range(n):
        osum[x][0] = osum[0][x] = x
    for i in range(k):
        a, b = 2 + 2 * i, 3 + 2 * i
        osum[a][b] = osum[b][a] = 1
    return _finish(EffectAlgebraTable(n, 0, 1, osum, f"mo({k})", tuple(labels)))


def product(t1: EffectAlgebraTable, t2: EffectAlgebraTable) -> EffectAlgebraTable:
    """Cartesian product with componentwise orthosum."""
    n = t1.n * t2.n
    _check_cap(n)
    pairs = list(itertools.product(t1.elements, t2.elements))
    pos = {p: i for i, p in enumerate(pairs)}
    osum = []
    for a1, a2 in pairs:
        row = []
        for b1, b2 in pairs:
            c1, c2 = t1.osum[a1][b1], t2.osum[a2][b2]
            row.append(None if c1 is None or c2 is None else pos[(c1, c2)])
        osum.append(row)
    labels = tuple(f"({t1.labels[a]},{t2.labels[b]})" for a, b in pairs)
    return _finish(EffectAlgebraTable(n, pos[(t1.zero, t2.zero)], pos[(t1.unit, t2.unit)],
                                      osum, f"product({t1.name},{t2.name})", labels))


def idempotents(elements: Sequence, add: Callable, mul: Callable, zero, one,
                name: str = "idempotents") -> EffectAlgebraTable:
    """Idempotents of a finite ring: ``e ⊕ f = e + f`` iff ``ef = fe = 0``."""
    idem = [e for e in elements if mul(e, e) == e]
    _check_cap(len(idem))
    pos = {e: i for i, e in enumerate(idem)}
    osum = [[pos[add(e, f)] if mul(e, f) == zero and mul(f, e) == zero else None
             for f in idem] for e in idem]
    labels = tuple("0" if e == zero else "u" if e == one else f"p{i}"
                   for i, e in enumerate(idem))
    return _finish(EffectAlgebraTable(len(idem), pos[zero], pos[one], osum, name, labels))


def zmod_idempotents(m: int) -> EffectAlgebraTable:
    """Idempotents of the ring Z/m."""
    return idempotents(range(m), lambda a, b: (a + b) % m, lambda a, b: (a * b) % m,
                       0, 1 % m, name=f"zmod({m})")


def matrix_idempotents(k: int, p: int) -> EffectAlgebraTable:
    """Idempotents of the ring of k x k matrices over Z/p."""
    if p ** (k * k) > 1 << 16:
        raise CapExceeded("matrix ring too large to scan")
    mats = [tuple(tuple(v[i * k:(i + 1) * k]) for i in range(k))
            for v in itertools.product(range(p), repeat=k * k)]

    def add(a, b):
        return tuple(tuple((a[i][j] + b[i][j]) % p for j in range(k)) for i in range(k))

    def mul(a, b):
        return tuple(tuple(sum(a[i][r] * b[r][j] for r in range(k)) % p for j in range(k))
                     for i in range(k))

    zero = tuple(tuple(0 for _ in range(k)) for _ in range(k))
    one = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    return idempotents(mats, add, mul, zero, one, name=f"matring({k},{p})")


_TOKEN = re.compile(r"\s*([A-Za-z_]+|\d+|[(),])")


def zoo(spec: str) -> EffectAlgebraTable:
    """Build an algebra from a spec string such as ``product(chain(2),boolean(1))``.

    Generators: ``boolean(k)``, ``chain(m)``, ``mo(k)``, ``product(a,b)``,
    ``hsum(a,b,...)``, ``zmod(m)``, ``matring(k,p)``.
    """
    tokens = _TOKEN.findall(spec)
    if "".join(tokens) != re.sub(r"\s+", "", spec):
        raise FormatError(f"cannot parse zoo spec {spec!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise FormatError(f"bad zoo spec {spec!r}: expected {expected or 'token'}")
        pos += 1
        return tok

    def expr():
        name = take()
        take("(")
        args: List = []
        while peek() != ")":
            if peek() is not None and peek().isdigit():
                args.append(int(take()))
            else:
                args.append(expr())
            if peek() == ",":
                take(",")
        take(")")
        ints = [a for a in args if isinstance(a, int)]
        tabs = [a for a in args if not isinstance(a, int)]
        if name == "boolean" and ints and not tabs:
            return boolean(ints[0])
        if name == "chain" and ints and not tabs:
            return chain(ints[0])
        if name == "mo" and ints and not tabs:
            return mo(ints[0])
        if name == "product" and len(tabs) == 2 and not ints:
            return product(*tabs)
        if name == "hsum" and tabs and not ints:
            return horizontal_sum(*tabs)
        if name == "zmod" and len(ints) == 1:
            return zmod_idempotents(ints[0])
        if name == "matring" and len(ints) == 2:
            return matrix_idempotents(*ints)
        raise FormatError(f"unknown zoo generator {name}{tuple(args)!r}")

    t = expr()
    if pos != len(tokens):
        raise FormatError(f"trailing input in zoo spec {spec!r}")
    return dataclasses.replace(t, name=re.sub(r"\s+", "", spec))
