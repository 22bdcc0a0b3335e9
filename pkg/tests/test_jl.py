import itertools

import numpy as np
import pytest

from nimforge.fusion import jl_ring
from nimforge.groups import enumerate_subgroups, parse_group, symmetric_group
from nimforge.jl import (
    ConditionViolated,
    JlParams,
    admissible_tuples,
    block_coefficients,
    check_jl_params,
    jl_algebra_objects,
    jl_build,
    jl_enumerate,
    jl_same_class,
    orbit_blocks,
    self_loop_readings,
)
from nimforge.nimrep import are_isomorphic, decompose_orbits, is_irreducible, nim_orbit_graph
from nimforge.oracle import SearchConfig, cross_check, enumerate_all

from conftest import jl_catalog


def subs_by_members(g):
    return {h.members: h for h in enumerate_subgroups(g)}


@pytest.fixture
def kl(v4):
    s = subs_by_members(v4)
    return {"e": s[(0,)], "F1": s[(0, 1)], "F2": s[(0, 2)], "F3": s[(0, 3)], "G": s[(0, 1, 2, 3)]}


def test_one_orbit_p3(v4):
    cat = jl_enumerate(v4, 3, orbits=1)
    dims = sorted(e.dim for e in cat.entries)
    assert dims == [1, 2, 2, 2]
    for e in cat.entries:
        x1 = e.rep.matrix("X_1")
        assert set(np.unique(x1)) == {2 if e.dim == 1 else 1}


def test_block_coefficients_trivial_whole_whole(v4, kl):
    params = JlParams(v4, 3, (kl["e"], kl["G"], kl["G"]))
    rep = jl_build(params)
    blocks = orbit_blocks(params)
    assert block_coefficients(rep, blocks, 1).tolist() == [[0, 1, 0], [0, 0, 2], [1, 0, 0]]
    assert block_coefficients(rep, blocks, 2).tolist() == [[0, 0, 1], [1, 0, 0], [0, 2, 0]]


def test_orbit_count_must_divide_p(v4, kl):
    with pytest.raises(ConditionViolated):
        check_jl_params(JlParams(v4, 3, (kl["G"], kl["G"])))


def test_square_condition_checked_for_every_shift(v4, kl):
    # |H_1|^2/|G| = 1/4 under X_2, although X_1 and X_3 are fine
    with pytest.raises(ConditionViolated, match="k=2"):
        check_jl_params(JlParams(v4, 4, (kl["e"], kl["G"])))
    check_jl_params(JlParams(v4, 4, (kl["F1"], kl["F2"])))


def test_no_five_dimensional_rep_for_p4(v4):
    ring = jl_ring(v4, 4)
    found = enumerate_all(ring, SearchConfig(max_dim=5, hints=True))
    assert 5 not in {m.dim for m in found}
    assert all(e.dim != 5 for e in jl_enumerate(v4, 4).entries)


def test_theorem_relation_splits_for_p3_all_order_two(v4):
    cat = jl_enumerate(v4, 3, orbits=3)
    assert len(cat.entries) == 13
    classes = cat.theorem_classes()
    assert len(classes) == 12
    split = cat.relation_mismatches()
    assert len(split) == 1
    key, n = split[0]
    assert n == 2  # one multiset of three distinct order-2 classes gives two rotation classes


def test_isomorphic_tuples_share_multiset_class(v4):
    cat = jl_catalog((2, 2), 3)
    # jl_same_class never separates isomorphic entries (soundness of the multiset relation)
    for a, b in itertools.combinations(cat.entries, 2):
        if a.dim == b.dim and are_isomorphic(a.rep, b.rep)[0]:
            assert jl_same_class(a.params, b.params)


def test_same_class_examples(v4, kl):
    a = JlParams(v4, 3, (kl["e"], kl["G"], kl["G"]))
    b = JlParams(v4, 3, (kl["G"], kl["e"], kl["G"]))
    assert jl_same_class(a, b)
    assert are_isomorphic(jl_build(a), jl_build(b))[0]
    c = JlParams(v4, 3, (kl["F1"], kl["F2"], kl["F3"]))
    d = JlParams(v4, 3, (kl["F1"], kl["F3"], kl["F2"]))
    assert jl_same_class(c, d)
    assert not are_isomorphic(jl_build(c), jl_build(d))[0]  # the X_1 cycle runs the other way


def test_p4_orbit_graphs(v4, kl):
    def loops(params):
        g = nim_orbit_graph(jl_build(params))
        labs = g.ring_labels
        return {i: {labs[b] for b in bs} for i, bs in g.loops().items()}

    one = JlParams(v4, 4, (kl["F1"],))
    assert loops(one) == {0: {"X_1", "X_2", "X_3"}}
    two = JlParams(v4, 4, (kl["F1"], kl["F1"]))
    assert loops(two) == {0: {"X_2"}, 1: {"X_2"}}
    four = JlParams(v4, 4, (kl["G"],) * 4)
    assert loops(four) == {}
    g = nim_orbit_graph(jl_build(four))
    edges = {(s, t, g.ring_labels[b]) for s, t, b, _ in g.edges}
    assert {(s, t) for s, t, lab in edges if lab == "X_1"} == {(0, 1), (1, 2), (2, 3), (3, 0)}
    assert {(s, t) for s, t, lab in edges if lab == "X_2"} == {(0, 2), (2, 0), (1, 3), (3, 1)}


def test_ty_z2_single_class():
    cat = jl_enumerate(parse_group("Z2"), 2)
    assert [(e.params.describe(), e.dim) for e in cat.entries] == [("({e}, Z2)", 3)]


def test_ty_z4_classes():
    cat = jl_enumerate(parse_group("Z4"), 2)
    got = sorted((e.dim, e.params.describe()) for e in cat.entries)
    assert got == [(1, "(Z4)"), (2, "(Z4, Z4)"), (2, "({0, 2})"), (4, "({0, 2}, {0, 2})"),
                   (5, "({e}, Z4)")]


def test_algebra_objects_match_self_loops(v4, kl):
    params = JlParams(v4, 4, (kl["F1"], kl["F1"]))
    rep = jl_build(params)
    closed = jl_algebra_objects(params)
    assert [str(a) for a in closed] == ["(0,0) ⊕ (1,0) ⊕ X_2"] * 2
    for j, readings in enumerate(self_loop_readings(rep, params)):
        assert all(r == closed[j] for r in readings)
    # m = p: group-like algebras only
    params = JlParams(v4, 3, (kl["e"], kl["G"], kl["G"]))
    assert all(all(b < 4 for b, _ in a.terms) for a in jl_algebra_objects(params))


def test_admissible_tuples_respect_conditions(v4):
    for p in (2, 3, 4, 6):
        for m in (d for d in range(1, p + 1) if p % d == 0):
            for tup in admissible_tuples(v4, p, m):
                check_jl_params(JlParams(v4, p, tup))


def test_non_abelian_group_ty_s3():
    s3 = symmetric_group(3)
    cat = jl_enumerate(s3, 2)
    for e in cat.entries:
        assert is_irreducible(e.rep)
        assert len(decompose_orbits(e.rep)) == e.params.m
    found = enumerate_all(jl_ring(s3, 2), SearchConfig(max_dim=6))
    small = [e.rep for e in cat.entries if e.dim <= 6]
    assert cross_check(small, found).agreement
