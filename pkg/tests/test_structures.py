"""MV-algebras, the EA/MV translation, and the Heyting layer."""
from itertools import product

import pytest

from effectkit.core import classify, derive_order, is_lattice
from effectkit.errors import NotLatticeError, NotMVError
from effectkit.formats import parse_file
from effectkit.structures import (MVTable, check_heyting_effect_laws, derive_heyting, ea_to_mv,
                                  hmv_via_prime_map, mv_center, mv_criterion, mv_to_ea,
                                  validate_mv)
from effectkit.zoo import zoo

from conftest import FIXTURES, corpus


def mv_fixtures():
    out = [parse_file(FIXTURES / "c3.mv").payload]
    out += [ea_to_mv(t) for t in corpus() if classify(t).is_mv_effect]
    return out


def test_c3_mv_fixture_validates():
    m = parse_file(FIXTURES / "c3.mv").payload
    assert validate_mv(m).ok
    t = mv_to_ea(m)
    assert t.osum[1][1] == 2 and t.osum[2][2] is None


def test_broken_mv_table_reports_axiom():
    m = parse_file(FIXTURES / "c3.mv").payload
    supp = list(m.supp)
    supp[1], supp[2] = 1, 2   # 1/3' = 1/3 breaks involution and x + x' = u
    bad = MVTable(m.n, m.zero, m.unit, m.mvsum, supp)
    res = validate_mv(bad)
    assert not res.ok and {"vii"} <= set(res.axioms())
    with pytest.raises(NotMVError):
        mv_to_ea(bad)


def test_round_trips_are_identities():
    for m in mv_fixtures():
        assert ea_to_mv(mv_to_ea(m)) == m
    for t in corpus():
        if classify(t).is_mv_effect:
            assert mv_to_ea(ea_to_mv(t)) == t, t.name


def test_join_formula_matches_derived_join():
    for m in mv_fixtures():
        t = mv_to_ea(m)
        o = derive_order(t)
        s, sp = m.mvsum, m.supp
        for p, q in product(range(m.n), repeat=2):
            assert s[sp[s[p][sp[q]]]][p] == o.join[p][q]


def test_ea_to_mv_rejects_non_mv():
    with pytest.raises(NotMVError):
        ea_to_mv(zoo("mo(2)"))


def test_mv_criterion_agrees_with_classification():
    seen = 0
    for t in corpus():
        if is_lattice(t):
            c = classify(t)
            assert mv_criterion(t) == (c.has_riesz and c.is_lattice), t.name
            seen += 1
    assert seen > 10
    with pytest.raises(NotLatticeError):
        mv_criterion(_non_lattice())


def _non_lattice():
    for t in corpus():
        if not is_lattice(t):
            return t
    pytest.skip("corpus has no non-lattice algebra")


def test_three_center_descriptions_agree():
    for m in mv_fixtures():
        c = mv_center(m)
        assert m.zero in c and m.unit in c


def test_chain_center_is_trivial():
    m = ea_to_mv(zoo("chain(4)"))
    assert mv_center(m) == frozenset({m.zero, m.unit})


def test_heyting_on_boolean_is_material_implication():
    t = zoo("boolean(2)")
    h = derive_heyting(t)
    o = derive_order(t)
    for q, r in product(range(4), repeat=2):
        assert h.cond[q][r] == o.join[o.supp[q]][r]
    assert check_heyting_effect_laws(t).ok


def test_heyting_on_chain_is_goedel():
    t = zoo("chain(3)")
    h = derive_heyting(t)
    o = derive_order(t)
    for q, r in product(range(t.n), repeat=2):
        assert h.cond[q][r] == (t.unit if o.leq[q][r] else r)
    assert h.heyting_center == frozenset({t.zero, t.unit})


def test_prime_map_and_hmv_flag_agree():
    for t in corpus():
        if not is_lattice(t):
            continue
        prime = hmv_via_prime_map(t)
        assert (prime is not None) == classify(t).is_hmv, t.name
        if prime is not None and derive_heyting(t) is not None:
            assert check_heyting_effect_laws(t).ok, t.name


def test_mo2_prime_map():
    t = zoo("mo(2)")
    assert hmv_via_prime_map(t) is None
    assert not classify(t).is_hmv


def test_heyting_order_without_central_prime_map():
    """{0, h, k, u} with h + h = k + k = u is a Boolean lattice as a poset, so it
    carries a Heyting conditional, but h' = k is not central: not HMV."""
    t = zoo("hsum(chain(2),chain(2))")
    assert derive_heyting(t) is not None
    assert hmv_via_prime_map(t) is None
    assert not classify(t).is_hmv and not classify(t).is_mv_effect
