"""Irreducible NIM-reps over the Jordan–Larson rings ``R_{p,G}``.

A rep with ``m`` orbits is built from subgroups ``H_1..H_m``: orbit ``i`` is
``G/H_i`` and ``X_k`` sends every point of orbit ``i`` to
``√(|H_i||H_{i+k}|/|G|)`` times the sum of orbit ``i+k`` (indices mod ``m``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .fusion import FusionRing, jl_ring
from .groups import (
    FiniteGroup,
    Subgroup,
    conjugacy_classes_of_subgroups,
    coset_space,
    divisors,
    enumerate_subgroups,
    exact_sqrt,
    is_perfect_square,
)
from .nimrep import (
    AlgebraObject,
    NimRep,
    algebra_object_at,
    are_isomorphic,
    fingerprint,
    nimrep_from_matrices,
)


class ConditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class JlParams:
    group: FiniteGroup = field(compare=False, repr=False)
    p: int
    subgroups: tuple[Subgroup, ...]

    @property
    def m(self) -> int:
        return len(self.subgroups)

    def describe(self) -> str:
        return "(" + ", ".join(h.label() for h in self.subgroups) + ")"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "subgroups": [list(h.members) for h in self.subgroups]}


def check_jl_params(params: JlParams) -> None:
    g, p, hs = params.group, params.p, params.subgroups
    m = len(hs)
    if m == 0 or p % m:
        raise ConditionViolated(f"orbit count {m} does not divide p = {p}")
    for i in range(m):
        for k in range(1, p):
            j = (i + k) % m
            num = hs[i].order * hs[j].order
            if num % g.order or not is_perfect_square(num // g.order):
                raise ConditionViolated(
                    f"|H_{i + 1}||H_{j + 1}|/|G| = {num}/{g.order} is not a square integer (i={i + 1}, k={k})")


def jl_coefficient(params: JlParams, i: int, k: int) -> int:
    hs = params.subgroups
    j = (i + k) % len(hs)
    return exact_sqrt(hs[i].order * hs[j].order // params.group.order)


def jl_build(params: JlParams, ring: FusionRing | None = None) -> NimRep:
    check_jl_params(params)
    g, p = params.group, params.p
    ring = jl_ring(g, p) if ring is None else ring
    spaces = [coset_space(g, h) for h in params.subgroups]
    offsets = np.cumsum([0] + [len(s) for s in spaces])
    d = int(offsets[-1])
    mats = np.zeros((ring.rank, d, d), dtype=np.int64)
    for a in g.elements:
        for i, s in enumerate(spaces):
            o = offsets[i]
            mats[a, o + s.action[a], o + np.arange(len(s))] = 1
    m = params.m
    for k in range(1, p):
        x = ring.meta["x_index"][k]
        for i in range(m):
            j = (i + k) % m
            mats[x, offsets[j]:offsets[j + 1], offsets[i]:offsets[i + 1]] = jl_coefficient(params, i, k)
    labels = [f"m{i + 1}_{l + 1}" for i, s in enumerate(spaces) for l in range(len(s))]
    return nimrep_from_matrices(ring, mats, labels)


def orbit_blocks(params: JlParams) -> list[range]:
    sizes = [params.group.order // h.order for h in params.subgroups]
    offs = np.cumsum([0] + sizes)
    return [range(int(offs[i]), int(offs[i + 1])) for i in range(len(sizes))]


def block_coefficients(rep: NimRep, blocks: list[range], k: int) -> np.ndarray:
    """``c[i, j]`` = multiplicity of any point of orbit ``j`` in ``X_k ▷ m^i``."""
    x = rep.ring.meta["x_index"][k]
    mat = rep.matrices[x]
    c = np.zeros((len(blocks), len(blocks)), dtype=np.int64)
    for i, bi in enumerate(blocks):
        for j, bj in enumerate(blocks):
            c[i, j] = mat[bj.start, bi.start]
    return c


def _class_ids(g: FiniteGroup, subgroups: list[Subgroup]) -> dict[tuple[int, ...], int]:
    out = {}
    for cid, cls in enumerate(conjugacy_classes_of_subgroups(g, subgroups)):
        for h in cls:
            out[h.members] = cid
    return out


def jl_same_class(a: JlParams, b: JlParams) -> bool:
    """True iff some ``τ ∈ S_m`` makes ``H_i`` conjugate to ``H'_{τ(i)}`` for all ``i``."""
    if a.p != b.p or a.m != b.m:
        return False
    ids = _class_ids(a.group, enumerate_subgroups(a.group))
    return sorted(ids[h.members] for h in a.subgroups) == sorted(ids[h.members] for h in b.subgroups)


def jl_algebra_objects(params: JlParams, ring: FusionRing | None = None) -> list[AlgebraObject]:
    """Closed form per orbit: ``⊕_{h∈H_i} h ⊕_{j<ℓ} √(|H_i|²/|G|) X_{jm}`` with ``p = mℓ``."""
    check_jl_params(params)
    g, p, m = params.group, params.p, params.m
    ring = jl_ring(g, p) if ring is None else ring
    ell = p // m
    out = []
    for h in params.subgroups:
        counts = {a: 1 for a in h.members}
        if ell > 1:
            c = exact_sqrt(h.order * h.order // g.order)
            for j in range(1, ell):
                counts[ring.meta["x_index"][j * m]] = c
        out.append(AlgebraObject.from_counts(counts, ring.labels))
    return out


@dataclass
class JlEntry:
    params: JlParams
    rep: NimRep
    theorem_class: tuple[int, ...]
    members: list[JlParams] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.rep.dim


@dataclass
class JlCatalog:
    group: FiniteGroup
    p: int
    ring: FusionRing
    entries: list[JlEntry]

    def by_orbits(self, m: int) -> list[JlEntry]:
        return [e for e in self.entries if e.params.m == m]

    def theorem_classes(self, m: int | None = None) -> dict[tuple[int, ...], list[JlEntry]]:
        out: dict[tuple[int, ...], list[JlEntry]] = {}
        for e in self.entries:
            if m is None or e.params.m == m:
                out.setdefault(e.theorem_class, []).append(e)
        return out

    def relation_mismatches(self) -> list[tuple[tuple[int, ...], int]]:
        """Theorem-level classes that split into several matrix-level classes."""
        return [(k, len(v)) for k, v in self.theorem_classes().items() if len(v) > 1]


def admissible_tuples(g: FiniteGroup, p: int, m: int,
                      subgroups: list[Subgroup] | None = None) -> list[tuple[Subgroup, ...]]:
    subs = enumerate_subgroups(g) if subgroups is None else subgroups
    n = g.order
    sizes = sorted({h.order for h in subs})
    ok_pair = {(a, b) for a in sizes for b in sizes
               if (a * b) % n == 0 and is_perfect_square(a * b // n)}
    shifts = sorted({k % m for k in range(1, p)})
    out = []
    # size patterns first, then subgroup choices with those sizes
    for pattern in itertools.product(sizes, repeat=m):
        if all((pattern[i], pattern[(i + s) % m]) in ok_pair for i in range(m) for s in shifts):
            pools = [[h for h in subs if h.order == sz] for sz in pattern]
            out.extend(itertools.product(*pools))
    out.sort(key=lambda t: tuple(subs.index(h) for h in t))
    return out


def jl_enumerate(group: FiniteGroup, p: int, orbits: int | None = None) -> JlCatalog:
    """All irreducible NIM-reps of ``R_{p,G}``, one per matrix-level class.

    Ordered tuples are generated in canonical order and the first of each
    isomorphism class is kept; ``theorem_class`` records the class under the
    permute-and-conjugate relation so the two relations can be compared.
    """
    ring = jl_ring(group, p)
    subs = enumerate_subgroups(group)
    cls = _class_ids(group, subs)
    entries: list[JlEntry] = []
    ms = [m for m in divisors(p) if orbits is None or m == orbits]
    for m in ms:
        buckets: dict[tuple, list[JlEntry]] = {}
        for tup in admissible_tuples(group, p, m, subs):
            params = JlParams(group, p, tuple(tup))
            rep = jl_build(params, ring)
            tkey = tuple(sorted(cls[h.members] for h in tup))
            bucket = buckets.setdefault((tkey, fingerprint(rep)), [])
            for e in bucket:
                if are_isomorphic(e.rep, rep)[0]:
                    e.members.append(params)
                    break
            else:
                e = JlEntry(params, rep, tkey, [params])
                bucket.append(e)
                entries.append(e)
    return JlCatalog(group, p, ring, entries)


def self_loop_readings(entry_rep: NimRep, params: JlParams) -> list[list[AlgebraObject]]:
    """Self-loop reading at every point, grouped by orbit."""
    return [[algebra_object_at(entry_rep, x) for x in blk] for blk in orbit_blocks(params)]
