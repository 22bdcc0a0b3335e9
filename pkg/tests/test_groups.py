import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nimforge.groups import (
    FactorTooSmall,
    GroupError,
    NoIdentity,
    NoInverse,
    NotASubgroup,
    NotAbelian,
    NotAssociative,
    NotASquare,
    OrderTooLarge,
    abelian_group,
    conjugacy_classes_of_subgroups,
    coset_space,
    direct_product,
    divisors,
    doubled_subgroup,
    enumerate_subgroups,
    exact_sqrt,
    group_from_json,
    group_from_table,
    parse_group,
    quotient,
    subgroup,
    symmetric_group,
    two_torsion_count,
)

from conftest import SMALL_ABELIAN, group


def brute_subgroups(g):
    """Every closed subset containing 0, by exhaustive search."""
    out = []
    for mask in range(1 << g.order):
        s = [x for x in g.elements if mask >> x & 1]
        if 0 not in s:
            continue
        ss = set(s)
        if all(g.mul(a, b) in ss for a in s for b in s):
            out.append(tuple(s))
    return sorted(out, key=lambda m: (len(m), m))


def test_parse_shorthand_and_labels():
    g = parse_group("Z2xZ2")
    assert g.order == 4
    assert [g.label(x) for x in g.elements] == ["(0,0)", "(1,0)", "(0,1)", "(1,1)"]
    assert g.element_index((1, 1)) == 3
    assert parse_group("Z1").order == 1
    assert parse_group("z4").label(3) == "3"
    with pytest.raises(GroupError):
        parse_group("S3")


def test_factor_validation():
    with pytest.raises(FactorTooSmall):
        abelian_group([0])
    with pytest.raises(OrderTooLarge):
        abelian_group([16, 16])


def test_table_validation_errors():
    with pytest.raises(NoIdentity):
        group_from_table([[1, 0], [0, 1]])
    with pytest.raises(NoInverse):
        group_from_table([[0, 1, 2], [1, 1, 1], [2, 1, 0]])
    # a Latin square with identity that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        group_from_table(bad)


def test_subgroup_counts_known_groups():
    assert len(enumerate_subgroups(parse_group("Z2xZ2"))) == 5
    assert len(enumerate_subgroups(parse_group("Z8"))) == 4
    assert len(enumerate_subgroups(parse_group("Z2xZ4"))) == 8
    assert len(enumerate_subgroups(parse_group("Z2xZ2xZ2"))) == 16


def test_canonical_order_of_klein_subgroups(v4):
    subs = [h.members for h in enumerate_subgroups(v4)]
    assert subs == [(0,), (0, 1), (0, 2), (0, 3), (0, 1, 2, 3)]


@pytest.mark.parametrize("factors", SMALL_ABELIAN)
def test_subgroups_match_exhaustive_search(factors):
    g = group(factors)
    assert [h.members for h in enumerate_subgroups(g)] == brute_subgroups(g)


def test_symmetric_group_subgroup_classes():
    s3 = symmetric_group(3)
    assert not s3.is_abelian
    assert len(enumerate_subgroups(s3)) == 6
    classes = conjugacy_classes_of_subgroups(s3)
    assert sorted(len(c) for c in classes) == [1, 1, 1, 3]


def test_coset_space_action_is_transitive_and_sized():
    g = parse_group("Z4")
    h = subgroup(g, [0, 2])
    cs = coset_space(g, h)
    assert cs.cosets == ((0, 2), (1, 3))
    assert cs.action[1].tolist() == [1, 0]
    assert cs.stabilizer(0) == (0, 2)
    with pytest.raises(NotASubgroup):
        coset_space(g, type(h)((0, 1), g))


def test_doubled_quotient_and_torsion():
    g = parse_group("Z2xZ4")
    two = doubled_subgroup(g)
    assert two.order == 2
    q, proj = quotient(g, two)
    assert q.order == 4 and two_torsion_count(q) == 4
    assert two_torsion_count(g) == 4
    with pytest.raises(NotAbelian):
        doubled_subgroup(symmetric_group(3))


def test_square_helpers():
    assert exact_sqrt(16) == 4
    with pytest.raises(NotASquare):
        exact_sqrt(8)
    assert divisors(6) == [1, 2, 3, 6]


def test_json_round_trip():
    for g in (parse_group("Z2xZ4"), symmetric_group(3)):
        h = group_from_json(g.to_json())
        assert np.array_equal(h.table, g.table)


@given(st.lists(st.integers(2, 4), min_size=1, max_size=3))
def test_direct_product_order_and_lagrange(factors):
    g = abelian_group(factors)
    assert g.order == int(np.prod(factors))
    for h in enumerate_subgroups(g):
        assert g.order % h.order == 0
        assert len(coset_space(g, h)) == g.order // h.order


@given(st.integers(2, 5), st.integers(2, 5))
def test_direct_product_of_cyclic_is_abelian(a, b):
    g = direct_product(abelian_group([a]), abelian_group([b]))
    assert g.order == a * b and g.is_abelian
    for x, y in itertools.product(g.elements, repeat=2):
        assert g.mul(x, y) == g.mul(y, x)
