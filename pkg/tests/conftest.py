from __future__ import annotations

import math
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from nimforge.glm import glm_enumerate
from nimforge.groups import abelian_group, parse_group, trivial_group
from nimforge.jl import jl_enumerate

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# every abelian group of order at most 8, by invariant factors
SMALL_ABELIAN = [(), (2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (2, 4), (2, 2, 2)]
EVEN_ABELIAN = [f for f in SMALL_ABELIAN if math.prod(f) % 2 == 0 and f]


def group(factors):
    return abelian_group(list(factors)) if factors else trivial_group()


def jl_cases():
    """Every (group, p) with p <= 6 for which the ring exists."""
    out = []
    for f in SMALL_ABELIAN:
        g = group(f)
        for p in range(2, 7):
            if p == 2 or int(round(g.order ** 0.5)) ** 2 == g.order:
                out.append((f, p))
    return out


def glm_cases():
    return [(f, d) for f in EVEN_ABELIAN for d in group(f).elements]


@lru_cache(maxsize=None)
def jl_catalog(factors, p):
    return jl_enumerate(group(factors), p)


@lru_cache(maxsize=None)
def glm_catalog(factors, delta, relabeling="gamma_set"):
    return glm_enumerate(group(factors), delta, relabeling=relabeling)


@pytest.fixture
def v4():
    return parse_group("Z2xZ2")


# PASS/FAIL lines recorded by the acceptance suite
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
