import json

import numpy as np
import pytest

from nimforge.fusion import (
    BadP,
    DimensionMismatch,
    FusionRing,
    OddOrder,
    OrderNotSquare,
    glm_ring,
    jl_ring,
    multiply,
    ring_from_descriptor,
    ring_from_json,
    ring_to_json,
    verify_axioms,
)
from nimforge.groups import parse_group, symmetric_group

from conftest import glm_cases, group, jl_cases


@pytest.mark.parametrize("factors,p", jl_cases())
def test_jl_axioms(factors, p):
    assert verify_axioms(jl_ring(group(factors), p)).passed


@pytest.mark.parametrize("factors,delta", glm_cases())
def test_glm_axioms(factors, delta):
    assert verify_axioms(glm_ring(group(factors), delta)).passed


def test_jl_structure_constants(v4):
    r = jl_ring(v4, 3)
    assert r.labels == ("(0,0)", "(1,0)", "(0,1)", "(1,1)", "X_1", "X_2")
    x1, x2 = r.index("X_1"), r.index("X_2")
    assert r.N[x1, x1].tolist() == [0, 0, 0, 0, 0, 2]      # X1 X1 = 2 X2
    assert r.N[x1, x2].tolist() == [1, 1, 1, 1, 0, 0]      # X1 X2 = sum of G
    assert r.dual[x1] == x2
    assert r.invertible == (0, 1, 2, 3)


def test_ising_ring():
    r = jl_ring(parse_group("Z2"), 2)
    x = r.index("X_1")
    assert r.N[x, x].tolist() == [1, 1, 0]
    assert r.dual[x] == x


def test_jl_errors():
    with pytest.raises(OrderNotSquare):
        jl_ring(parse_group("Z2"), 3)
    with pytest.raises(BadP):
        jl_ring(parse_group("Z2"), 1)


def test_glm_structure(v4):
    r = glm_ring(v4, v4.element_index((1, 0)))
    n = 4
    # X_a X_b is the class of delta + a + b; here 2Γ = 0 so every X is invertible
    assert set(r.invertible) == set(range(8))
    z4 = parse_group("Z4")
    r4 = glm_ring(z4, 0)
    assert r4.labels[4:] == ("X_0", "X_1")
    assert r4.N[4, 4, :4].tolist() == [1, 0, 1, 0]          # X_0 X_0 = 0 + 2
    assert r4.N[1, 4, 5] == 1                               # 1 · X_0 = X_1
    assert r4.invertible == (0, 1, 2, 3)
    assert r.N[n, n, :n].sum() == 1


def test_glm_dual_shifts_by_delta():
    z4 = parse_group("Z4")
    r = glm_ring(z4, 1)
    # X_q* = X_{-q-δ}: X_0* = X_1 when δ is odd
    assert r.dual[4] == 5 and r.dual[5] == 4


def test_glm_errors():
    with pytest.raises(OddOrder):
        glm_ring(parse_group("Z3"), 0)
    r = glm_ring(parse_group("Z3"), 0, allow_odd=True)
    assert verify_axioms(r).passed


def test_axiom_failure_has_witness():
    r = jl_ring(parse_group("Z2"), 2)
    N = r.N.copy()
    N[2, 2] = [2, 0, 0]
    bad = FusionRing(r.labels, 0, r.dual, N)
    report = verify_axioms(bad)
    assert not report.passed
    names = {name for name, _ in report.violations}
    assert "associativity" in names or "frobenius reciprocity" in names
    assert "FAIL" in str(report)


def test_non_abelian_invertibles_are_allowed():
    s3 = symmetric_group(3)
    r = jl_ring(s3, 2)
    assert verify_axioms(r).passed


def test_multiply():
    r = jl_ring(parse_group("Z2"), 2)
    x = r.basis_vector(2)
    assert r.format(multiply(r, x, x)) == "0 ⊕ 1"
    with pytest.raises(DimensionMismatch):
        multiply(r, [1, 0], x)


def test_json_round_trips(v4):
    for r in (jl_ring(v4, 3), glm_ring(v4, 3), jl_ring(symmetric_group(3), 2)):
        again = ring_from_json(json.loads(json.dumps(ring_to_json(r))))
        assert again.labels == r.labels
        assert np.array_equal(again.N, r.N)
        assert np.array_equal(again.dual, r.dual)
        desc = ring_from_descriptor(json.loads(json.dumps(r.descriptor())))
        assert np.array_equal(desc.N, r.N)
