from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ijobstruct.rh_oracle import (
    GroupTable,
    Signature,
    exists_action,
    has_generating_vector,
    rh_genus,
    signatures_for_genus,
    signatures_for_genus_range,
)
from oracles import rh_genus_fraction


def test_cyclic_table():
    g = GroupTable.cyclic(6)
    assert g.size == 6
    assert g.orders == (1, 6, 3, 2, 3, 6)
    assert g.inverse == (0, 5, 4, 3, 2, 1)
    assert g.is_abelian


def test_metacyclic_table():
    g = GroupTable.metacyclic(61, 5, -3)
    assert g.size == 305
    assert sorted(set(g.orders)) == [1, 5, 61]
    assert not g.is_abelian
    # associativity spot check
    for a, b, c in ((3, 77, 150), (10, 20, 30), (301, 2, 59)):
        assert g.mul[g.mul[a][b]][c] == g.mul[a][g.mul[b][c]]


def test_metacyclic_trivial_twist_is_cyclic():
    g = GroupTable.metacyclic(3, 5, 1)
    assert g.is_abelian
    assert max(g.orders) == 15


def test_rh_genus_matches_fraction_oracle():
    for order, h, periods in (
        (7, 0, (7, 7, 7)),
        (5, 0, (5, 5, 5)),
        (305, 0, (5, 5, 5)),
        (10, 0, (2, 5, 10)),
        (15, 1, (5,)),
    ):
        expected = rh_genus_fraction(order, h, periods)
        got = rh_genus(order, Signature(h, periods))
        if expected.denominator == 1:
            assert got == expected
        else:
            assert got is None


def test_signatures_klein_curve_group():
    sigs = signatures_for_genus_range(GroupTable.cyclic(7), 3)
    assert (3, Signature(0, (7, 7, 7))) in sigs
    # RH identity: 2*3 - 2 = 7*(-2) + 7*(3*6/7)
    assert 2 * 3 - 2 == 7 * (-2) + 3 * (7 - 1)


def test_signatures_zmod5():
    sigs = signatures_for_genus_range(GroupTable.cyclic(5), 2)
    assert (2, Signature(0, (5, 5, 5))) in sigs


def test_signatures_empty_for_order_305():
    group = GroupTable.metacyclic(61, 5, -3)
    assert signatures_for_genus_range(group, 30) == []
    # the minimal candidate (0; 5,5,5) already lands at genus 62
    assert rh_genus(305, Signature(0, (5, 5, 5))) == 62
    assert -610 + 3 * 244 == 122 and 122 // 2 + 1 == 62


def test_signature_validation():
    with pytest.raises(ValueError):
        Signature(-1, ())
    with pytest.raises(ValueError):
        Signature(0, (1, 7))
    assert Signature(0, (7, 5, 7)).periods == (5, 7, 7)


def test_generating_vector_klein_curve():
    g = GroupTable.cyclic(7)
    assert has_generating_vector(g, Signature(0, (7, 7, 7)))
    assert (1 + 2 + 4) % 7 == 0  # the classical witness
    assert has_generating_vector(g, Signature(1, ()))


def test_generating_vector_zmod5():
    g = GroupTable.cyclic(5)
    assert has_generating_vector(g, Signature(0, (5, 5, 5)))
    assert (1 + 1 + 3) % 5 == 0


def test_no_vector_when_product_cannot_close():
    # two branch points of coprime orders cannot multiply to the identity
    g = GroupTable.cyclic(15)
    assert not has_generating_vector(g, Signature(0, (3, 5)))
    # and a single branch point never closes
    assert not has_generating_vector(g, Signature(0, (15,)))


def test_generation_required():
    # products of order-2 elements stay in the proper subgroup of Z/4
    g = GroupTable.cyclic(4)
    assert not has_generating_vector(g, Signature(0, (2, 2)))
    assert not has_generating_vector(g, Signature(0, (2, 2, 2, 2)))
    assert has_generating_vector(g, Signature(0, (2, 4, 4)))


@settings(max_examples=30, deadline=None)
@given(st.permutations([3, 5, 15, 15]))
def test_vector_search_invariant_under_period_order(perm):
    g = GroupTable.cyclic(15)
    base = has_generating_vector(g, Signature(0, (3, 5, 15, 15)))
    assert has_generating_vector(g, Signature(0, tuple(perm))) == base


def test_exists_action_examples():
    assert exists_action(GroupTable.cyclic(7), 3)  # the Klein quartic curve
    assert exists_action(GroupTable.cyclic(5), 2)
    # golden value frozen from the first oracle run: (0; 15,15,15) works
    assert exists_action(GroupTable.cyclic(15), 7) is True
    assert has_generating_vector(GroupTable.cyclic(15), Signature(0, (15, 15, 15)))


def test_order_305_acts_nowhere_below_genus_31():
    group = GroupTable.metacyclic(61, 5, -3)
    for genus in range(2, 31):
        assert not exists_action(group, genus)


def test_wiman_bound_desk_scale():
    # no odd cyclic group of order m > 4g + 2 acts on genus g
    for genus in range(2, 9):
        for m in range(4 * genus + 3, 4 * genus + 26, 2):
            assert not exists_action(GroupTable.cyclic(m), genus), (m, genus)


def test_wiman_bound_attained():
    assert exists_action(GroupTable.cyclic(10), 2)
    assert exists_action(GroupTable.cyclic(14), 3)


def test_schweizer_bound_desk_scale():
    # odd metacyclic of order 55 > 9(g-1) for g <= 7 acts on none of them
    group = GroupTable.metacyclic(11, 5, 3)
    assert pow(3, 5, 11) == 1
    for genus in range(4, 8):
        assert 55 > 9 * (genus - 1)
        assert not exists_action(group, genus)


def test_order_21_group_sanity():
    # the smallest odd nonabelian metacyclic group; Schweizer allows it
    # from genus 4 on, and it genuinely acts in small genus
    group = GroupTable.metacyclic(7, 3, 2)
    values = [g for g in range(2, 11) if exists_action(group, g)]
    assert values, "order-21 group should act somewhere at desk scale"
    for g in values:
        assert 21 <= 9 * (g - 1) or g < 4
