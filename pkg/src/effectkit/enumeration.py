"""Enumeration of finite effect algebras up to isomorphism.

Tables are normalised to ``zero = 0`` and ``unit = n - 1``.  The canonical
form of a table is the lexicographically least encoding over all relabelings
of the middle elements that respect a refined invariant ordering.
"""
from __future__ import annotations

import itertools
import math
import string
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, List, Optional, Tuple

from .core import EffectAlgebraTable, derive_order, validate_axioms
from .errors import CapExceeded, cap

ENUMERATE_CAP = 6
PERMUTATION_CAP = 200_000

_UNSET = -2


def _encode(t: EffectAlgebraTable) -> Tuple[int, ...]:
    return tuple(-1 if c is None else c for row in t.osum for c in row)


def _invariants(t: EffectAlgebraTable) -> List[Tuple]:
    o = derive_order(t)
    base = []
    for x in range(t.n):
        defined = sum(c is not None for c in t.osum[x])
        below = sum(o.leq[y][x] for y in range(t.n))
        base.append((x != t.zero, x == t.unit, below, defined, o.supp[x] == x))
    # one round of refinement: multiset of neighbour invariants
    refined = []
    for x in range(t.n):
        sums = sorted(base[c] for c in t.osum[x] if c is not None)
        refined.append(base[x] + (tuple(sums), base[o.supp[x]]))
    return refined


def canonical_form(t: EffectAlgebraTable) -> EffectAlgebraTable:
    """Canonical representative of the isomorphism class of ``t``."""
    inv = _invariants(t)
    order = sorted(range(t.n), key=lambda x: inv[x])
    blocks = [list(g) for _, g in itertools.groupby(order, key=lambda x: inv[x])]
    count = math.prod(math.factorial(len(b)) for b in blocks)
    if count > PERMUTATION_CAP:
        raise CapExceeded(f"canonical form needs {count} relabelings")
    best = None
    best_perm = None
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        seq = [x for block in choice for x in block]
        perm = [0] * t.n
        for pos, x in enumerate(seq):
            perm[x] = pos
        code = _encode(t.relabel(perm))
        if best is None or code < best:
            best, best_perm = code, perm
    return t.relabel(best_perm)


def canonical_key(t: EffectAlgebraTable) -> Tuple[int, ...]:
    c = canonical_form(t)
    return (c.n,) + _encode(c)


def find_isomorphism(t1: EffectAlgebraTable, t2: EffectAlgebraTable) -> Optional[List[int]]:
    """Backtracking search for ``f`` with ``f(x ⊕ y) = f(x) ⊕ f(y)`` exactly."""
    if t1.n != t2.n:
        return None
    n = t1.n
    f = [-1] * n
    used = [False] * n
    f[t1.zero], f[t1.unit] = t2.zero, t2.unit
    if t1.zero == t1.unit or t2.zero == t2.unit:
        return None
    used[t2.zero] = used[t2.unit] = True
    rest = [x for x in range(n) if f[x] < 0]

    def consistent():
        for x in range(n):
            if f[x] < 0:
                continue
            for y in range(n):
                if f[y] < 0:
                    continue
                c1, c2 = t1.osum[x][y], t2.osum[f[x]][f[y]]
                if (c1 is None) != (c2 is None):
                    return False
                if c1 is not None and f[c1] >= 0 and f[c1] != c2:
                    return False
        return True

    def go(i):
        if i == len(rest):
            return True
        x = rest[i]
        for y in range(n):
            if not used[y]:
                f[x], used[y] = y, True
                if consistent() and go(i + 1):
                    return True
                f[x], used[y] = -1, False
        return False

    return list(f) if consistent() and go(0) else None


def _labels(n: int) -> Tuple[str, ...]:
    return ("0",) + tuple(string.ascii_lowercase[i] for i in range(n - 2)) + ("u",)


def _assoc_ok(s: List[List[int]], n: int) -> bool:
    for x in range(n):
        for y in range(n):
            a = s[x][y]
            if a < 0:
                continue
            for w in range(n):
                b = s[a][w]
                if b < 0:
                    continue
                c = s[y][w]
                if c == _UNSET:
                    continue
                if c == -1:
                    return False
                d = s[x][c]
                if d == _UNSET:
                    continue
                if d != b:
                    return False
    return True


def _search(n: int, fixed: int, first: Optional[int]) -> List[Tuple[int, ...]]:
    """All valid tables of size n with ``fixed`` self-supplementary middle elements.

    ``first`` optionally pins the value of the first free cell (for sharding).
    Returns canonical keys.
    """
    m = n - 2
    u = n - 1
    mid = list(range(1, n - 1))
    supp = {0: u, u: 0}
    for i in range(fixed):
        supp[mid[i]] = mid[i]
    for i in range(fixed, m, 2):
        supp[mid[i]], supp[mid[i + 1]] = mid[i + 1], mid[i]
    s = [[_UNSET] * n for _ in range(n)]
    for x in range(n):
        s[x][0] = s[0][x] = x
        if x != 0:
            s[x][u] = s[u][x] = -1
    for x in mid:
        s[x][supp[x]] = u
    cells = [(x, y) for x in mid for y in mid if x <= y and y != supp[x]]
    for x, y in cells:
        s[x][y] = s[y][x] = _UNSET
    found = set()

    def options(x, y):
        yield -1
        for w in mid:
            if w != x and w != y:
                yield w

    def go(i):
        if i == len(cells):
            t = EffectAlgebraTable(n, 0, u, [[None if c < 0 else c for c in row] for row in s])
            if validate_axioms(t).ok:
                found.add(canonical_key(t))
            return
        x, y = cells[i]
        opts = list(options(x, y))
        if i == 0 and first is not None:
            opts = [first] if first in opts else []
        for v in opts:
            s[x][y] = s[y][x] = v
            if _assoc_ok(s, n):
                go(i + 1)
        s[x][y] = s[y][x] = _UNSET

    go(0)
    return sorted(found)


def _shards(n: int) -> List[Tuple[int, int, Optional[int]]]:
    m = n - 2
    out = []
    for fixed in range(m, -1, -1):
        if (m - fixed) % 2:
            continue
        if m >= 2:
            out += [(n, fixed, v) for v in [-1] + list(range(1, n - 1))]
        else:
            out.append((n, fixed, None))
    return out


def _run_shard(args):
    return _search(*args)


def _from_key(key: Tuple[int, ...], idx: int) -> EffectAlgebraTable:
    n = key[0]
    flat = key[1:]
    osum = [[None if flat[i * n + j] < 0 else flat[i * n + j] for j in range(n)]
            for i in range(n)]
    return EffectAlgebraTable(n, 0, n - 1, osum, f"ea{n}_{idx}", _labels(n))


def enumerate_size(n: int, workers: int = 1) -> List[EffectAlgebraTable]:
    """One table per isomorphism class of effect algebras with exactly n elements."""
    if n < 2:
        return []
    shards = _shards(n)
    keys = set()
    if workers > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_shard, shards):
                keys.update(part)
    else:
        for sh in shards:
            keys.update(_run_shard(sh))
    return [_from_key(k, i) for i, k in enumerate(sorted(keys))]


def enumerate_all(n_max: int, workers: int = 1) -> Iterator[EffectAlgebraTable]:
    """All effect algebras with at most ``n_max`` elements, one per isomorphism class."""
    limit = cap(ENUMERATE_CAP)
    if n_max > limit:
        raise CapExceeded(f"enumeration size {n_max} exceeds cap {limit}")
    for n in range(2, n_max + 1):
        yield from enumerate_size(n, workers)


def naive_enumerate(n: int) -> List[EffectAlgebraTable]:
    """Brute force: every symmetric table on n elements, validated, deduplicated
    by explicit isomorphism search.  Only feasible for n <= 5."""
    if n < 2:
        return []
    u = n - 1
    cells = [(x, y) for x in range(1, n - 1) for y in range(x, n - 1)]
    reps: List[EffectAlgebraTable] = []
    for values in itertools.product([None] + list(range(1, n)), repeat=len(cells)):
        s = [[None] * n for _ in range(n)]
        for x in range(n):
            s[x][0] = s[0][x] = x
        for (x, y), v in zip(cells, values):
            s[x][y] = s[y][x] = v
        t = EffectAlgebraTable(n, 0, u, s)
        if not validate_axioms(t).ok:
            continue
        if not any(find_isomorphism(t, r) is not None for r in reps):
            reps.append(t)
    return reps
