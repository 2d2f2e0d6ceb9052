"""Retractions, compressions, projections, Rickart maps, and the HMV harness."""
import time
from itertools import combinations_with_replacement, product

import pytest
from hypothesis import given, settings, strategies as st

from effectkit.compress import (Endomorphism, Verdict, check_interpolation_compressions,
                                compatibility, cpc, enumerate_retractions, find_projections,
                                general_comparability, hmv_equivalence_harness, is_compression,
                                is_quasicomplement_pair, is_retraction, is_unigroup, rickart_map)
from effectkit.core import is_subeffect_algebra
from effectkit.errors import PreconditionError
from effectkit.formats import parse_file
from effectkit.unigroup import (function_group, integers, interval_of, interval_points,
                                pointwise, universal_group)
from effectkit.zoo import zoo

from conftest import FIXTURES


def function_groups():
    """function_group(B, Z, u) for Boolean B with at most 3 atoms, unit entries <= 3."""
    out = []
    for m in (1, 2, 3):
        B = zoo(f"boolean({m})")
        for u in combinations_with_replacement((1, 2, 3), m):
            out.append(function_group(B, u=list(u)))
    return out


def test_verdict_rendering():
    assert str(Verdict(True)) == "true"
    assert str(Verdict(True, bounded=True, k=3)) == "true (up to k=3)"
    assert str(Verdict(False, witness=(1,))) == "false" and not Verdict(False)


def test_endomorphism_algebra():
    J = Endomorphism.diag(1, 0)
    assert J((3, 4)) == (3, 0)
    assert (J @ J) == J
    assert (Endomorphism.identity(2) @ J) == J
    assert Endomorphism.zero(2)((5, 5)) == (0, 0)


def test_coordinate_retractions_on_z2():
    Z2 = pointwise(2)
    assert is_retraction(Z2, Endomorphism.diag(1, 0))
    assert is_compression(Z2, Endomorphism.diag(1, 0))
    assert not is_retraction(Z2, Endomorphism.diag(2, 0))
    assert is_quasicomplement_pair(Z2, Endomorphism.diag(1, 0), Endomorphism.diag(0, 1))
    assert not is_quasicomplement_pair(Z2, Endomorphism.diag(1, 0), Endomorphism.diag(1, 0))


def test_projections_of_small_groups():
    assert find_projections(pointwise(2)).projections == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert find_projections(integers(2)).projections == [(0,), (2,)]
    R = find_projections(parse_file(FIXTURES / "nonlattice.grp").payload)
    assert R.projections == [(0, 0), (2, 2)]


def test_mo2_universal_group_is_not_compressible():
    P = universal_group(zoo("mo(2)"))
    R = find_projections(P)
    assert not R.is_compressible
    assert R.is_compressible.witness == ("focus with several retractions", (0, 0, 1))
    rep = hmv_equivalence_harness(zoo("mo(2)"))
    assert rep.agree and not any(rep.conditions.values())
    with pytest.raises(PreconditionError):
        compatibility(P, (0, 0, 1), (0, 0, 1))


def test_rickart_maps():
    Z = integers(2)
    rick = rickart_map(Z, 2)
    assert rick.mapping[(1,)] == (0,) and rick.mapping[(0,)] == (2,)
    Z2 = pointwise(2)
    rick = rickart_map(Z2, 2)
    assert rick.mapping[(1, 0)] == (0, 1) and rick.mapping[(2, 0)] == (0, 1)


def test_gc_fails_on_nonlattice_cone():
    P = parse_file(FIXTURES / "nonlattice.grp").payload
    gc = general_comparability(P, 2)
    assert not gc and gc.witness == (-1, 1)


def test_gc_holds_on_pointwise():
    gc = general_comparability(pointwise(3, (1, 2, 3)), 2)
    assert gc and str(gc) == "true (up to k=2)"


def test_projection_compositions_and_compatibility():
    for P in function_groups():
        R = find_projections(P, 2)
        projs = R.projections
        for p, q in product(projs, repeat=2):
            Jp, Jq = R.compression(p), R.compression(q)
            meet = tuple(min(a, b) for a, b in zip(p, q))
            assert Jp @ Jq == Jq @ Jp == R.compression(meet)
            assert compatibility(P, q, p)
        rep = cpc(P, P.unit, 2)
        assert rep.projections == projs


def test_projections_form_a_boolean_subalgebra():
    for P in function_groups():
        R = find_projections(P, 2)
        E = interval_of(P)
        pts = interval_points(P)
        S = {pts.index(p) for p in R.projections}
        assert is_subeffect_algebra(E, S)
    P = universal_group(zoo("product(chain(2),chain(3))"))
    R = find_projections(P, 2)
    assert len(R.projections) == 4


def test_retraction_enumeration_is_exact():
    rets = enumerate_retractions(pointwise(2, (2, 1)))
    for p, Js in rets.items():
        for J in Js:
            assert is_retraction(pointwise(2, (2, 1)), J)
            assert J((2, 1)) == p


@pytest.mark.parametrize("spec", ["chain(2)", "chain(4)", "boolean(2)", "boolean(3)",
                                  "product(chain(2),chain(3))", "product(chain(1),chain(2))"])
def test_interpolation_clauses_on_riesz_fixtures(spec):
    rep = check_interpolation_compressions(universal_group(zoo(spec)), 3)
    assert rep.ok, rep.failures
    assert rep.checked == ["i", "ii", "iii", "iv", "v", "vi", "vii"]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_interpolation_clauses_on_pointwise(m):
    for u in combinations_with_replacement((1, 2), m):
        rep = check_interpolation_compressions(pointwise(m, u), 3)
        assert rep.ok, (u, rep.failures)


def test_interpolation_clauses_precondition():
    with pytest.raises(PreconditionError):
        check_interpolation_compressions(parse_file(FIXTURES / "nonlattice.grp").payload)


def test_unigroup_recognition():
    assert is_unigroup(pointwise(2, (2, 3)))
    assert is_unigroup(universal_group(zoo("mo(2)")))
    assert not is_unigroup(parse_file(FIXTURES / "nonlattice.grp").payload)


def test_hmv_harness_on_function_groups():
    start = time.perf_counter()
    for P in function_groups():
        rep = hmv_equivalence_harness(P, 2)
        assert all(rep.conditions.values()), (P.label, rep.witnesses)
        assert rep.heyting_formula is True and rep.ok
    assert time.perf_counter() - start < 120


def test_harness_rejects_non_interval():
    with pytest.raises(PreconditionError):
        hmv_equivalence_harness(zoo("hsum(chain(2),chain(2))"))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_pointwise_groups_have_coordinate_projections(unit):
    P = pointwise(len(unit), unit)
    R = find_projections(P, 2)
    assert R.is_compressible
    expected = sorted(tuple(u if b else 0 for u, b in zip(unit, bits))
                      for bits in product((0, 1), repeat=len(unit)))
    assert sorted(R.projections) == expected
