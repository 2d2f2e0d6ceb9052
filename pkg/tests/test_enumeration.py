"""Enumeration up to isomorphism, checked against a brute-force oracle."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from effectkit.core import classify, validate_axioms
from effectkit.enumeration import (canonical_form, canonical_key, enumerate_all, enumerate_size,
                                   find_isomorphism, naive_enumerate)
from effectkit.errors import CapExceeded
from effectkit.zoo import zoo

from conftest import ZOO_SPECS

GOLDEN_COUNTS = {2: 1, 3: 1, 4: 3, 5: 4, 6: 10}
SMALL_SPECS = [s for s in ZOO_SPECS if zoo(s).n <= 8]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_matches_unpruned_oracle(n):
    fast = enumerate_size(n)
    slow = naive_enumerate(n)
    assert len(fast) == len(slow)
    assert sorted(canonical_key(t) for t in fast) == sorted(canonical_key(t) for t in slow)


def test_golden_counts():
    assert {n: len(enumerate_size(n)) for n in GOLDEN_COUNTS} == GOLDEN_COUNTS


def test_enumerated_tables_are_valid_and_pairwise_non_isomorphic():
    tables = list(enumerate_all(6))
    assert all(validate_axioms(t).ok for t in tables)
    keys = [canonical_key(t) for t in tables]
    assert len(set(keys)) == len(keys)
    for i, a in enumerate(tables):
        for b in tables[i + 1:]:
            if a.n == b.n:
                assert find_isomorphism(a, b) is None


def test_known_algebras_are_found():
    keys = {canonical_key(t) for t in enumerate_all(6)}
    for spec in ["chain(1)", "chain(4)", "boolean(2)", "mo(2)", "product(chain(2),chain(1))",
                 "hsum(chain(2),chain(2))", "chain(5)"]:
        assert canonical_key(zoo(spec)) in keys, spec


def test_workers_do_not_change_output():
    assert [canonical_key(t) for t in enumerate_size(6, workers=3)] == \
        [canonical_key(t) for t in enumerate_size(6)]


def test_cap_is_enforced(monkeypatch):
    monkeypatch.setenv("EFFECTKIT_CAP", "4")
    with pytest.raises(CapExceeded):
        list(enumerate_all(5))


def test_canonical_form_respects_cap():
    with pytest.raises(CapExceeded):
        canonical_form(zoo("boolean(4)"))


def test_boolean_census_entries():
    for t in enumerate_all(6):
        c = classify(t)
        if c.is_boolean_ea:
            assert t.n in (2, 4)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SMALL_SPECS), st.integers(0, 2**32 - 1))
def test_canonical_key_is_relabelling_invariant(spec, seed):
    t = zoo(spec)
    perm = list(range(t.n))
    random.Random(seed).shuffle(perm)
    s = t.relabel(perm)
    assert canonical_key(s) == canonical_key(t)
    f = find_isomorphism(t, s)
    assert f is not None
    assert all(f[t.osum[x][y]] == s.osum[f[x]][f[y]]
               for x in range(t.n) for y in range(t.n) if t.osum[x][y] is not None)
    assert canonical_form(s) == canonical_form(t)
