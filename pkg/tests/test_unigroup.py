"""Universal groups, unit intervals, and ordered-group predicates."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from effectkit.enumeration import canonical_key
from effectkit.errors import FormatError, PreconditionError
from effectkit.formats import parse_file
from effectkit.linalg import transpose
from effectkit.measures import extreme_points, is_order_determining, probability_polytope
from effectkit.unigroup import (GroupPresentation, box, cone_of, correspondence_checks,
                                extend_measure, function_group, group_predicates, integers,
                                interval_of, is_generative, is_interval_realization,
                                is_order_unit, leq, pointwise, states_of, universal_group,
                                unit_is_smallest_order_unit)
from effectkit.zoo import zoo

from conftest import FIXTURES, corpus


def ieas():
    return [t for t in corpus() if is_interval_realization(t)[0]]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_boolean_square_is_z2():
    P = universal_group(zoo("boolean(2)"))
    assert P.rank == 2 and P.torsion == () and P.unit == (1, 1)
    t = P.source
    assert sorted(P.images[x] for x in range(4)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert t.label(P.images.index((1, 0))) in ("a", "b")


@pytest.mark.parametrize("n", range(1, 7))
def test_chains_give_integers(n):
    P = universal_group(zoo(f"chain({n})"))
    assert (P.rank, P.torsion, P.unit) == (1, (), (n,))
    assert cone_of(P).contains((1,)) and not cone_of(P).contains((-1,))


def test_smith_audit():
    """The stored factorisation really is U A V = D with a divisibility chain."""
    for t in corpus()[:40]:
        P = universal_group(t)
        D, U, V = (list(map(list, m)) for m in P.smith)
        A = transpose([list(r) for r in P.relations])
        assert matmul(matmul(U, A), V) == D
        diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
        nz = [d for d in diag if d]
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
        assert round(abs(np.linalg.det(np.array(U, dtype=float)))) == 1


def test_horizontal_sum_has_torsion():
    t = zoo("hsum(chain(2),chain(2))")
    P = universal_group(t)
    assert P.torsion == (2,)
    assert is_interval_realization(t) == (False, None)


def test_interval_round_trip_on_every_iea():
    found = ieas()
    assert len(found) > 20
    for t in found:
        E = interval_of(universal_group(t))
        assert canonical_key(E) == canonical_key(t) if t.n <= 8 else E.n == t.n


def test_mo2_is_an_interval():
    t = zoo("mo(2)")
    ok, f = is_interval_realization(t)
    assert ok and sorted(f) == list(range(t.n))
    assert universal_group(t).rank == 3


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["boolean(2)", "boolean(3)", "mo(2)", "chain(4)",
                        "product(chain(2),chain(3))", "mo(3)"]),
       st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_integer_measures_extend_uniquely(spec, coeffs):
    t = zoo(spec)
    P = universal_group(t)
    a = tuple(coeffs[:P.rank])
    phi = [sum(x * y for x, y in zip(a, v)) for v in P.images]
    assert extend_measure(P, phi) == a


def test_non_additive_map_does_not_extend():
    P = universal_group(zoo("chain(3)"))
    assert extend_measure(P, [0, 1, 1, 3]) is None


def test_order_unit_and_generativity():
    assert is_order_unit(integers(3)) and is_generative(integers(3))
    assert not is_order_unit(pointwise(2), (1, 0))
    P = parse_file(FIXTURES / "nonlattice.grp").payload
    assert not is_order_unit(P)
    gp = group_predicates(P, 2)
    assert not gp.is_order_unit and gp.is_archimedean is None
    assert not gp.has_interpolation and not gp.is_lattice_ordered


def test_pointwise_predicates():
    gp = group_predicates(pointwise(2, (2, 3)), 2)
    assert gp.is_order_unit and gp.is_generative and gp.has_interpolation
    assert gp.is_lattice_ordered and not gp.is_totally_ordered and gp.is_archimedean


def test_non_archimedean_semigroup():
    P = GroupPresentation(1, (2,), ((2,), (3,)), label="Z<2,3>")
    gp = group_predicates(P, 2)
    assert gp.is_archimedean is False
    assert gp.witnesses["is_archimedean"] == (1,)
    # 2 and 3 have minimal upper bounds 5 and 6: outside the k=2 box, inside k=3
    assert gp.is_lattice_ordered
    gp = group_predicates(P, 3)
    assert not gp.is_lattice_ordered and not gp.has_interpolation


def test_box_lattice_operations_on_z2():
    B = box(pointwise(2), 1)
    i, j = B.index[(1, -1)], B.index[(-1, 1)]
    assert B.points[B.join(i, j)] == (1, 1)
    assert B.points[B.meet(i, j)] == (-1, -1)
    assert B.positive_part((1, -1)) == (1, 0)


def test_leq_is_cone_membership():
    P = universal_group(zoo("chain(3)"))
    assert leq(P, (1,), (3,)) and not leq(P, (2,), (1,))


def test_states_match_measures():
    for spec in ["boolean(3)", "mo(2)", "chain(3)", "product(chain(2),chain(2))"]:
        P = universal_group(zoo(spec))
        space = states_of(P)
        assert all(s(P.unit) == 1 for s in space.vertices)
    with pytest.raises(PreconditionError):
        states_of(pointwise(2, (1, 0)))


def test_archimedean_groups_have_order_determining_measures():
    for t in ieas():
        if t.n > 16:
            continue
        P = universal_group(t)
        gp = group_predicates(P, 2)
        if gp.is_archimedean:
            ok, w = is_order_determining(t, extreme_points(probability_polytope(t)))
            assert ok, (t.name, w)


def test_function_groups():
    B2 = zoo("boolean(2)")
    F = function_group(B2, u=2)
    assert F.rank == 2 and F.unit == (2, 2)
    assert canonical_key(interval_of(F)) == canonical_key(zoo("product(chain(2),chain(2))"))
    F = function_group(B2, u=[1, 3])
    assert interval_of(F).n == 8
    with pytest.raises(PreconditionError):
        function_group(zoo("mo(2)"))
    with pytest.raises(FormatError):
        function_group(B2, u=[1, 2, 3])


def test_smallest_order_unit():
    assert unit_is_smallest_order_unit(universal_group(zoo("boolean(2)")), 3)[0]
    ok, w = unit_is_smallest_order_unit(integers(2), 3)
    assert not ok and w == (1,)


def test_correspondences_on_corpus():
    for t in ieas():
        rep = correspondence_checks(t, 3)
        assert rep.ok, (t.name, rep.rows)
