import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nimforge.glm import (
    ConditionViolated,
    GlmParams,
    check_glm_params,
    coefficient_equation_violations,
    compose,
    cycle_string,
    enumerate_tau0,
    glm_algebra_check,
    glm_algebra_objects,
    glm_build,
    glm_enumerate,
    glm_same_class,
    inverse,
    parse_cycles,
    sigma_action,
)
from nimforge.fusion import OddOrder
from nimforge.groups import NotAbelian, enumerate_subgroups, parse_group, symmetric_group
from nimforge.nimrep import are_isomorphic, is_irreducible

from conftest import EVEN_ABELIAN, group


@pytest.fixture
def kl(v4):
    s = {h.members: h for h in enumerate_subgroups(v4)}
    return {"e": s[(0,)], "F1": s[(0, 1)], "F2": s[(0, 2)], "F3": s[(0, 3)], "G": s[(0, 1, 2, 3)]}


def cyc(s, n):
    return parse_cycles(s, n)


def test_cycle_notation_round_trip():
    p = cyc("(1 3)(2 4)", 4)
    assert p == (2, 3, 0, 1)
    assert cycle_string(p) == "(1 3)(2 4)"
    assert cycle_string(range(3)) == "e"
    assert cyc("(12)(34)", 4) == cyc("(1 2)(3 4)", 4)
    with pytest.raises(ValueError):
        cyc("(1 2)(2 3)", 3)


def test_sigma_klein_trivial_subgroup(v4, kl):
    s = sigma_action(v4, 0, (kl["e"],))
    assert s.size == 4
    assert cycle_string(s.sigma_of(v4.element_index((1, 0)))) == "(1 2)(3 4)"
    assert cycle_string(s.sigma_of(v4.element_index((0, 1)))) == "(1 3)(2 4)"


def test_sigma_whole_group_is_trivial(v4, kl):
    s = sigma_action(v4, 0, (kl["G"],))
    assert s.size == 1 and all(p == (0,) for p in s.sigma)


def test_sigma_z4():
    z4 = parse_group("Z4")
    s = sigma_action(z4, 0, (enumerate_subgroups(z4)[0],))
    assert s.members == ((0, 2), (1, 3))
    assert s.sigma_of(1) == (1, 0) and s.sigma_of(2) == (0, 1)


def test_sigma_errors():
    with pytest.raises(NotAbelian):
        sigma_action(symmetric_group(3), 0, ())
    with pytest.raises(OddOrder):
        sigma_action(parse_group("Z3"), 0, ())


@given(st.sampled_from(EVEN_ABELIAN), st.data())
def test_sigma_invariants(factors, data):
    g = group(factors)
    subs = enumerate_subgroups(g)
    hs = tuple(data.draw(st.lists(st.sampled_from(subs), min_size=1, max_size=2)))
    s = sigma_action(g, 0, hs)
    ident = tuple(range(s.size))
    Q = s.data.quotient
    for a in range(Q.order):
        assert compose(s.sigma[a], s.sigma[a]) == ident
        for b in range(Q.order):
            assert compose(s.sigma[a], s.sigma[b]) == s.sigma[Q.mul(a, b)]
    # well defined: every representative of a class moves every point the same way
    for x in g.elements:
        assert s.sigma_of(x) == s.sigma[int(s.data.proj[x])]


def test_tau0_examples(v4, kl):
    one = sigma_action(v4, 0, (kl["F1"],))
    assert sorted(cycle_string(t) for t in enumerate_tau0(one)) == ["(1 2)", "e"]
    reg = sigma_action(v4, 0, (kl["e"],))
    assert sorted(cycle_string(t) for t in enumerate_tau0(reg)) == \
        ["(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)", "e"]
    two = sigma_action(v4, 0, (kl["e"], kl["e"]))
    taus = enumerate_tau0(two)
    assert len(taus) == 4
    assert "(1 5)(2 6)(3 7)(4 8)" in {cycle_string(t) for t in taus}


def brute_tau0(s, two_orbit):
    out = []
    for perm in itertools.permutations(range(s.size)):
        if compose(perm, perm) != s.sigma_delta:
            continue
        if any(compose(perm, p) != compose(p, perm) for p in s.sigma):
            continue
        if two_orbit and any(s.orbit_of[perm[i]] == s.orbit_of[i] for i in range(s.size)):
            continue
        out.append(perm)
    return sorted(out)


@given(st.sampled_from(EVEN_ABELIAN), st.data())
def test_tau0_matches_brute_force(factors, data):
    g = group(factors)
    subs = enumerate_subgroups(g)
    delta = data.draw(st.sampled_from(list(g.elements)))
    k = data.draw(st.sampled_from([1, 2]))
    hs = tuple(data.draw(st.sampled_from(subs)) for _ in range(k))
    s = sigma_action(g, delta, hs)
    if s.size > 8:
        return
    assert enumerate_tau0(s, two_orbit=(k == 2)) == brute_tau0(s, k == 2)


def test_build_examples(v4, kl):
    rep = glm_build(GlmParams(v4, 0, (kl["G"],), (0,)))
    assert rep.dim == 1
    assert all(rep.matrices[b].tolist() == [[1]] for b in range(4, 8))
    rep = glm_build(GlmParams(v4, 0, (kl["G"], kl["G"]), (1, 0)))
    assert rep.dim == 2
    assert all(rep.matrices[b].tolist() == [[0, 1], [1, 0]] for b in range(4, 8))
    tau = cyc("(1 5)(2 6)(3 7)(4 8)", 8)
    rep = glm_build(GlmParams(v4, 0, (kl["e"], kl["e"]), tau))
    assert rep.dim == 8 and rep.matrices[4].max() == 1
    expected = np.zeros((8, 8), dtype=int)
    expected[list(tau), range(8)] = 1
    assert np.array_equal(rep.matrices[4], expected)


def test_condition_clauses(v4, kl):
    z4 = parse_group("Z4")
    zs = enumerate_subgroups(z4)
    with pytest.raises(ConditionViolated) as err:
        check_glm_params(GlmParams(z4, 0, (zs[0],), (0, 1)))
    assert err.value.clause == "sqrt_2gamma_divides"
    with pytest.raises(ConditionViolated) as err:
        check_glm_params(GlmParams(v4, 0, (kl["G"],) * 3, (0, 1, 2)))
    assert err.value.clause == "orbit_count"
    with pytest.raises(ConditionViolated) as err:
        check_glm_params(GlmParams(v4, 0, (kl["F1"],), (0, 0)))
    assert err.value.clause == "tau0_permutation"
    with pytest.raises(ConditionViolated) as err:
        check_glm_params(GlmParams(v4, 1, (kl["F2"],), (0, 1)))
    assert err.value.clause == "tau0_squared"
    with pytest.raises(ConditionViolated) as err:
        check_glm_params(GlmParams(v4, 0, (kl["e"],), cyc("(1 2)", 4)))
    assert err.value.clause == "tau0_commutes"
    with pytest.raises(ConditionViolated) as err:
        check_glm_params(GlmParams(v4, 1, (kl["F1"], kl["F2"]), (2, 3, 0, 1)))
    assert err.value.clause == "delta_membership"
    with pytest.raises(ConditionViolated) as err:
        check_glm_params(GlmParams(v4, 0, (kl["e"], kl["F1"]), tuple(range(6))))
    assert err.value.clause == "two_torsion_equal"
    with pytest.raises(ConditionViolated) as err:
        check_glm_params(GlmParams(v4, 0, (kl["G"], kl["G"]), (0, 1)))
    assert err.value.clause == "tau0_switches"
    z2x4 = parse_group("Z2xZ4")
    s = {h.members: h for h in enumerate_subgroups(z2x4)}
    with pytest.raises(ConditionViolated) as err:
        check_glm_params(GlmParams(z2x4, 0, (s[(0,)], s[(0,)]), tuple(range(8))))
    assert err.value.clause == "coefficient_square"


def test_one_orbit_counts(v4):
    cat = glm_enumerate(v4, 0, orbits=1)
    assert cat.dim_counts() == {1: 1, 2: 6, 4: 4}
    for d in (1, 2, 3):
        cat = glm_enumerate(v4, d, orbits=1)
        order_two = [e for e in cat.entries if e.params.subgroups[0].order == 2]
        assert len(order_two) == 2
        assert {e.params.subgroups[0].members for e in order_two} == {(0, d)}


def test_two_orbit_counts_by_reading(v4):
    assert glm_enumerate(v4, 0, orbits=2).dim_counts() == {2: 1, 4: 3, 8: 1}
    assert glm_enumerate(v4, 0, orbits=2, relabeling="orbit_fixing").dim_counts() == {2: 1, 4: 3, 8: 1}
    assert glm_enumerate(v4, 0, orbits=2, relabeling="literal").dim_counts() == {2: 1, 4: 6, 8: 4}


def test_two_orbit_count_confirmed_by_oracle(v4):
    from nimforge.fusion import glm_ring
    from nimforge.nimrep import decompose_orbits
    from nimforge.oracle import SearchConfig, cross_check, enumerate_all

    found = enumerate_all(glm_ring(v4, 0), SearchConfig(max_dim=8))
    two = [m for m in found if len(decompose_orbits(m, range(4)).orbits) == 2]
    assert sorted(m.dim for m in two) == [2, 4, 4, 4, 8]
    assert cross_check([e.rep for e in glm_enumerate(v4, 0).entries], found).agreement


def test_same_class_examples(v4, kl):
    a = GlmParams(v4, 0, (kl["e"],), cyc("(1 2)(3 4)", 4))
    b = GlmParams(v4, 0, (kl["e"],), cyc("(1 3)(2 4)", 4))
    assert glm_same_class(a, a)
    for reading in ("gamma_set", "orbit_fixing", "literal"):
        assert not glm_same_class(a, b, reading)
    assert not are_isomorphic(glm_build(a), glm_build(b))[0]
    z4 = parse_group("Z4")
    h1, h2 = enumerate_subgroups(z4)[:2]
    taus = enumerate_tau0(sigma_action(z4, 0, (h1, h2)))
    c = GlmParams(z4, 0, (h1, h2), taus[0])
    # the same Γ-set with its two orbits listed the other way round
    perm = (2, 3, 0, 1)
    swapped = GlmParams(z4, 0, (h2, h1), compose(compose(perm, taus[0]), inverse(perm)))
    check_glm_params(swapped)
    assert glm_same_class(c, swapped)
    assert are_isomorphic(glm_build(c), glm_build(swapped))[0]


def test_two_orbit_translation_identifies_tau0(v4, kl):
    hs = (kl["F1"], kl["F1"])
    taus = enumerate_tau0(sigma_action(v4, 0, hs))
    assert len(taus) == 2
    a, b = (GlmParams(v4, 0, hs, t) for t in taus)
    assert not glm_same_class(a, b, "literal")
    assert glm_same_class(a, b, "gamma_set")
    assert are_isomorphic(glm_build(a), glm_build(b))[0]


def test_algebra_objects(v4, kl):
    p = GlmParams(v4, 0, (kl["G"],), (0,))
    objs = glm_algebra_objects(p)
    assert str(objs[0]) == "(0,0) ⊕ (1,0) ⊕ (0,1) ⊕ (1,1) ⊕ X_(0,0) ⊕ X_(1,0) ⊕ X_(0,1) ⊕ X_(1,1)"
    p2 = GlmParams(v4, 0, (kl["G"], kl["G"]), (1, 0))
    assert [str(a) for a in glm_algebra_objects(p2)] == ["(0,0) ⊕ (1,0) ⊕ (0,1) ⊕ (1,1)"] * 2
    check = glm_algebra_check(p, glm_build(p))
    assert not check.mismatched_points and check.aggregate_matches_some_point


def test_aggregate_can_differ_from_every_point(v4, kl):
    p = GlmParams(v4, 0, (kl["F1"],), (0, 1))  # τ0 = e
    check = glm_algebra_check(p, glm_build(p))
    assert not check.mismatched_points
    # two X terms per point, summed over both 2Γ-orbits: four
    assert sum(c for b, c in check.aggregate.terms if b >= 4) == 4
    assert not check.aggregate_matches_some_point


def test_coefficient_equations_hold(v4, kl):
    for e in glm_enumerate(v4, 0).entries:
        assert coefficient_equation_violations(e.params, e.rep) == []
        assert is_irreducible(e.rep)
