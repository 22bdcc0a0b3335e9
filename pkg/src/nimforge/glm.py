"""Irreducible NIM-reps over ``GLM(Γ, δ)``.

The module basis is a ``Γ``-set with one or two orbits ``Γ/H_j``.  Each orbit
splits into ``2Γ``-orbits, which get global indices ``0..n-1``: orbits of the
first ``Γ``-orbit first, each ordered by its least coset representative.  An
element ``g`` permutes these indices by ``σ_ḡ`` and ``X_ḡ`` sends the whole
``2Γ``-orbit ``i`` onto ``2Γ``-orbit ``τ₀σ_ḡ(i)`` with a constant coefficient.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .fusion import FusionRing, GlmData, OddOrder, glm_data, glm_ring
from .groups import (
    FiniteGroup,
    NotAbelian,
    Subgroup,
    coset_space,
    enumerate_subgroups,
    exact_sqrt,
    is_perfect_square,
    quotient,
    two_torsion_count,
)
from .nimrep import AlgebraObject, NimRep, algebra_object_at, are_isomorphic, fingerprint, nimrep_from_matrices

RELABELINGS = ("gamma_set", "orbit_fixing", "literal")


class ConditionViolated(ValueError):
    def __init__(self, clause: str, message: str):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


# --------------------------------------------------------------------------
# permutations


def cycle_string(perm) -> str:
    """1-based cycle notation, ``"e"`` for the identity."""
    perm = list(perm)
    seen = [False] * len(perm)
    parts = []
    for s in range(len(perm)):
        if seen[s] or perm[s] == s:
            seen[s] = True
            continue
        cyc, x = [], s
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = perm[x]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "e"


def parse_cycles(s: str, n: int) -> tuple[int, ...]:
    """Inverse of :func:`cycle_string`; also accepts ``"(12)(34)"`` when ``n < 10``."""
    perm = list(range(n))
    s = s.strip()
    if s in ("", "e", "id", "()"):
        return tuple(perm)
    for body in re.findall(r"\(([^)]*)\)", s):
        toks = body.replace(",", " ").split()
        if len(toks) == 1 and n < 10:
            toks = list(toks[0])
        pts = [int(t) - 1 for t in toks]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{s!r} is not a permutation of {n} points")
    return tuple(perm)


def compose(a, b) -> tuple[int, ...]:
    """``(a ∘ b)(x) = a(b(x))``."""
    return tuple(a[x] for x in b)


def inverse(a) -> tuple[int, ...]:
    out = [0] * len(a)
    for x, y in enumerate(a):
        out[y] = x
    return tuple(out)


def perm_order(a) -> int:
    k, cur, ident = 1, tuple(a), tuple(range(len(a)))
    while cur != ident:
        cur = compose(a, cur)
        k += 1
    return k


def cycle_type(a) -> list[int]:
    seen, out = set(), []
    for s in range(len(a)):
        if s in seen:
            continue
        n, x = 0, s
        while x not in seen:
            seen.add(x)
            x = a[x]
            n += 1
        out.append(n)
    return sorted(out)


# --------------------------------------------------------------------------
# 2Γ-orbits and σ


@dataclass(frozen=True, eq=False)
class SigmaAction:
    data: GlmData
    delta: int
    subgroups: tuple[Subgroup, ...]
    blocks: tuple[tuple[int, ...], ...]       # global indices per Γ-orbit
    members: tuple[tuple[int, ...], ...]      # coset indices per global index
    orbit_of: tuple[int, ...]                 # Γ-orbit of each global index
    sigma: tuple[tuple[int, ...], ...]        # sigma[q] over Γ/2Γ

    @property
    def size(self) -> int:
        return len(self.orbit_of)

    @property
    def delta_class(self) -> int:
        return int(self.data.proj[self.delta])

    @property
    def sigma_delta(self) -> tuple[int, ...]:
        return self.sigma[self.delta_class]

    def sigma_of(self, g: int) -> tuple[int, ...]:
        return self.sigma[int(self.data.proj[g])]

    @cached_property
    def spaces(self):
        return [coset_space(self.data.gamma, h) for h in self.subgroups]


def sigma_action(gamma: FiniteGroup, delta: int, subgroups, allow_odd: bool = False) -> SigmaAction:
    if not gamma.is_abelian:
        raise NotAbelian(f"{gamma!r} is not abelian")
    if gamma.order % 2 and not allow_odd:
        raise OddOrder(f"|Γ| = {gamma.order} is odd")
    data = glm_data(gamma)
    two = data.two_gamma.members
    blocks, members, orbit_of = [], [], []
    where = []  # per Γ-orbit: coset index -> global index
    for j, h in enumerate(subgroups):
        cs = coset_space(gamma, h)
        loc = np.full(len(cs), -1)
        block = []
        for c in range(len(cs)):
            if loc[c] >= 0:
                continue
            orb = sorted({int(cs.action[t, c]) for t in two})
            idx = len(orbit_of)
            loc[orb] = idx
            block.append(idx)
            members.append(tuple(orb))
            orbit_of.append(j)
        blocks.append(tuple(block))
        where.append((cs, loc))
    sig = []
    for q, g in enumerate(data.reps):
        perm = [0] * len(orbit_of)
        for i, mem in enumerate(members):
            cs, loc = where[orbit_of[i]]
            perm[i] = int(loc[cs.action[g, mem[0]]])
        sig.append(tuple(perm))
    return SigmaAction(data, int(delta), tuple(subgroups), tuple(blocks), tuple(members),
                       tuple(orbit_of), tuple(sig))


def delta_in_image(data: GlmData, delta: int, h: Subgroup) -> bool:
    """Whether ``δ̄`` lies in the image of ``H`` in ``Γ/2Γ``."""
    dq = data.proj[delta]
    return any(data.proj[x] == dq for x in h.members)


def enumerate_tau0(sigma: SigmaAction, two_orbit: bool | None = None) -> list[tuple[int, ...]]:
    """All ``τ₀`` with ``τ₀² = σ_δ``, commuting with every ``σ_ḡ``.

    With two ``Γ``-orbits ``τ₀`` must also send the first orbit's indices into
    the second's.  A commuting ``τ₀`` is fixed by the image of one base index
    per ``Γ``-orbit, so those images are all that is searched.
    """
    n = sigma.size
    two_orbit = len(sigma.blocks) == 2 if two_orbit is None else two_orbit
    bases = [b[0] for b in sigma.blocks]
    out = set()
    for images in itertools.product(range(n), repeat=len(bases)):
        tau = [-1] * n
        ok = True
        for b, t in zip(bases, images):
            for s in sigma.sigma:
                x, y = s[b], s[t]
                if tau[x] == -1:
                    tau[x] = y
                elif tau[x] != y:
                    ok = False
                    break
            if not ok:
                break
        if not ok or -1 in tau or len(set(tau)) != n:
            continue
        tau = tuple(tau)
        if compose(tau, tau) != sigma.sigma_delta:
            continue
        if any(compose(tau, s) != compose(s, tau) for s in sigma.sigma):
            continue
        if two_orbit and any(sigma.orbit_of[tau[i]] == sigma.orbit_of[i] for i in range(n)):
            continue
        out.add(tau)
    return sorted(out)


# --------------------------------------------------------------------------
# parameters and construction


@dataclass(frozen=True)
class GlmParams:
    gamma: FiniteGroup = field(compare=False, repr=False)
    delta: int
    subgroups: tuple[Subgroup, ...]
    tau0: tuple[int, ...]
    allow_odd: bool = field(default=False, compare=False)

    @property
    def orbit_count(self) -> int:
        return len(self.subgroups)

    def sigma(self) -> SigmaAction:
        return sigma_action(self.gamma, self.delta, self.subgroups, self.allow_odd)

    def describe(self) -> str:
        hs = ", ".join(h.label() for h in self.subgroups)
        return f"H=({hs}), τ0={cycle_string(self.tau0)}"

    def to_json(self) -> dict:
        g = self.gamma
        delta = list(g.element_tuple(self.delta)) if g.factors is not None else self.delta
        return {
            "orbit_count": self.orbit_count,
            "subgroups": [list(h.members) for h in self.subgroups],
            "delta": delta,
            "tau0": cycle_string(self.tau0),
            "orbit_pairs": [],  # filled by the catalog layer
        }


def glm_coefficient(params: GlmParams, sigma: SigmaAction | None = None) -> int:
    two = (sigma or params.sigma()).data.two_gamma
    inter = [len(set(h.members) & set(two.members)) for h in params.subgroups]
    if len(inter) == 1:
        root = exact_sqrt(two.order)
        return inter[0] // root
    return exact_sqrt(inter[0] * inter[1] // two.order)


def check_glm_params(params: GlmParams, sigma: SigmaAction | None = None) -> SigmaAction:
    sigma = sigma or params.sigma()
    data = sigma.data
    two = data.two_gamma
    hs = params.subgroups
    if len(hs) not in (1, 2):
        raise ConditionViolated("orbit_count", f"{len(hs)} Γ-orbits; irreducible reps have one or two")
    tau = tuple(params.tau0)
    n = sigma.size
    if sorted(tau) != list(range(n)):
        raise ConditionViolated("tau0_permutation", f"τ0 must permute the {n} 2Γ-orbits")
    inter = [len(set(h.members) & set(two.members)) for h in hs]
    if len(hs) == 1:
        if not is_perfect_square(two.order) or inter[0] % exact_sqrt(two.order):
            raise ConditionViolated("sqrt_2gamma_divides",
                                    f"√|2Γ| (|2Γ| = {two.order}) does not divide |H∩2Γ| = {inter[0]}")
    else:
        a, b = (delta_in_image(data, params.delta, h) for h in hs)
        if a != b:
            raise ConditionViolated("delta_membership", "δ lies in exactly one of the images of H1, H2")
        t1 = two_torsion_count(quotient(data.gamma, hs[0])[0])
        t2 = two_torsion_count(quotient(data.gamma, hs[1])[0])
        if t1 != t2:
            raise ConditionViolated("two_torsion_equal", f"|(Γ/H1)[2]| = {t1} != |(Γ/H2)[2]| = {t2}")
        num = inter[0] * inter[1]
        if num % two.order or not is_perfect_square(num // two.order):
            raise ConditionViolated("coefficient_square",
                                    f"|H1∩2Γ||H2∩2Γ|/|2Γ| = {num}/{two.order} is not a square integer")
        if any(sigma.orbit_of[tau[i]] == sigma.orbit_of[i] for i in range(n)):
            raise ConditionViolated("tau0_switches", "τ0 must exchange the two Γ-orbits")
    if compose(tau, tau) != sigma.sigma_delta:
        raise ConditionViolated("tau0_squared", "τ0² != σ_δ")
    for q, s in enumerate(sigma.sigma):
        if compose(tau, s) != compose(s, tau):
            raise ConditionViolated("tau0_commutes", f"τ0 does not commute with σ of class {data.qlabel(q)}")
    return sigma


@dataclass(frozen=True, eq=False)
class GlmLayout:
    """Module basis addressing: ``addresses[x] = (Γ-orbit, 2Γ-orbit, coset)``."""

    sigma: SigmaAction
    addresses: tuple[tuple[int, int, int], ...]
    points: tuple[tuple[int, ...], ...]  # module points in each global 2Γ-orbit

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"m[{j + 1},{i + 1},{c + 1}]" for j, i, c in self.addresses)

    def orbit_pairs(self) -> list[tuple[int, int]]:
        """``(2Γ-orbit index within its Γ-orbit, Γ-orbit)``, 1-based, per global index."""
        out = []
        for i, j in enumerate(self.sigma.orbit_of):
            out.append((self.sigma.blocks[j].index(i) + 1, j + 1))
        return out


def glm_layout(sigma: SigmaAction) -> GlmLayout:
    addresses, points, pos = [], [], 0
    for j, block in enumerate(sigma.blocks):
        for r, i in enumerate(block):
            pts = []
            for c in sigma.members[i]:
                addresses.append((j, r, c))
                pts.append(pos)
                pos += 1
            points.append(tuple(pts))
    return GlmLayout(sigma, tuple(addresses), tuple(points))


def glm_build(params: GlmParams, ring: FusionRing | None = None) -> NimRep:
    sigma = check_glm_params(params)
    ring = glm_ring(params.gamma, params.delta, params.allow_odd) if ring is None else ring
    layout = glm_layout(sigma)
    gamma = params.gamma
    d = len(layout.addresses)
    index = {(j, c): x for x, (j, _, c) in enumerate(layout.addresses)}
    mats = np.zeros((ring.rank, d, d), dtype=np.int64)
    spaces = sigma.spaces
    for a in gamma.elements:
        for x, (j, _, c) in enumerate(layout.addresses):
            mats[a, index[(j, int(spaces[j].action[a, c]))], x] = 1
    coef = glm_coefficient(params, sigma)
    n = gamma.order
    for q, s in enumerate(sigma.sigma):
        for i in range(sigma.size):
            t = params.tau0[s[i]]
            mats[n + q][np.ix_(layout.points[t], layout.points[i])] = coef
    return nimrep_from_matrices(ring, mats, layout.labels)


# --------------------------------------------------------------------------
# classification


def glm_same_class(a: GlmParams, b: GlmParams, relabeling: str = "gamma_set") -> bool:
    """Whether two parameter sets name the same class.

    ``relabeling`` selects which identifications of ``2Γ``-orbits are allowed
    before comparing ``τ₀``:

    ``"gamma_set"``
        every ``Γ``-set isomorphism (independent translation on each orbit,
        and exchanging two orbits with equal stabilizers);
    ``"orbit_fixing"``
        translations on each orbit, but no exchange of orbits with equal
        stabilizers;
    ``"literal"``
        only the reordering of orbits needed to match the subgroups.
    """
    if relabeling not in RELABELINGS:
        raise ValueError(f"relabeling must be one of {RELABELINGS}")
    if a.orbit_count != b.orbit_count or a.delta is None:
        return False
    ha = [h.members for h in a.subgroups]
    hb = [h.members for h in b.subgroups]
    if sorted(ha) != sorted(hb):
        return False
    sa, sb = a.sigma(), b.sigma()
    k = a.orbit_count
    matchings = []
    for pi in itertools.permutations(range(k)):
        if all(ha[j] == hb[pi[j]] for j in range(k)):
            matchings.append(pi)
    if relabeling == "orbit_fixing" and k == 2 and ha[0] == ha[1]:
        matchings = [(0, 1)]
    if relabeling == "literal":
        shifts = [tuple(0 for _ in range(k))]
    else:
        shifts = list(itertools.product(range(len(sa.sigma)), repeat=k))
    for pi in matchings:
        base = [0] * sa.size
        for j, block in enumerate(sa.blocks):
            for r, i in enumerate(block):
                base[i] = sb.blocks[pi[j]][r]
        for qs in shifts:
            # translate orbit j by class qs[j], then carry over
            tr = [sa.sigma[qs[sa.orbit_of[i]]][i] for i in range(sa.size)]
            phi = compose(tuple(base), tuple(tr))
            if compose(compose(phi, a.tau0), inverse(phi)) == tuple(b.tau0):
                return True
    return False


def glm_subgroup_choices(gamma: FiniteGroup, delta: int, orbits: int,
                         allow_odd: bool = False) -> list[tuple[Subgroup, ...]]:
    data = glm_data(gamma)
    two = set(data.two_gamma.members)
    subs = enumerate_subgroups(gamma)
    out = []
    if orbits == 1:
        if not is_perfect_square(len(two)):
            return []
        root = exact_sqrt(len(two))
        for h in subs:
            if len(set(h.members) & two) % root == 0:
                out.append((h,))
        return out
    tors = [two_torsion_count(quotient(gamma, h)[0]) for h in subs]
    inter = [len(set(h.members) & two) for h in subs]
    member = [delta_in_image(data, delta, h) for h in subs]
    for i, j in itertools.combinations_with_replacement(range(len(subs)), 2):
        num = inter[i] * inter[j]
        if member[i] == member[j] and tors[i] == tors[j] and num % len(two) == 0 \
                and is_perfect_square(num // len(two)):
            out.append((subs[i], subs[j]))
    return out


def glm_parameters(gamma: FiniteGroup, delta: int, orbits: int | None = None,
                   allow_odd: bool = False) -> list[GlmParams]:
    """Every parameter set allowed by the one- and two-orbit theorems, undeduplicated."""
    out = []
    for k in (1, 2):
        if orbits is not None and k != orbits:
            continue
        for hs in glm_subgroup_choices(gamma, delta, k, allow_odd):
            sig = sigma_action(gamma, delta, hs, allow_odd)
            for tau in enumerate_tau0(sig, two_orbit=(k == 2)):
                out.append(GlmParams(gamma, delta, hs, tau, allow_odd))
    return out


@dataclass
class GlmEntry:
    params: GlmParams
    rep: NimRep
    members: list[GlmParams] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.rep.dim


@dataclass
class GlmCatalog:
    gamma: FiniteGroup
    delta: int
    ring: FusionRing
    relabeling: str
    entries: list[GlmEntry]

    def by_orbits(self, k: int) -> list[GlmEntry]:
        return [e for e in self.entries if e.params.orbit_count == k]

    def dim_counts(self, k: int | None = None) -> dict[int, int]:
        out: dict[int, int] = {}
        for e in self.entries:
            if k is None or e.params.orbit_count == k:
                out[e.dim] = out.get(e.dim, 0) + 1
        return dict(sorted(out.items()))


def glm_enumerate(gamma: FiniteGroup, delta: int, orbits: int | None = None,
                  relabeling: str = "gamma_set", allow_odd: bool = False) -> GlmCatalog:
    ring = glm_ring(gamma, delta, allow_odd)
    entries: list[GlmEntry] = []
    for params in glm_parameters(gamma, delta, orbits, allow_odd):
        for e in entries:
            if glm_same_class(e.params, params, relabeling):
                e.members.append(params)
                break
        else:
            entries.append(GlmEntry(params, glm_build(params, ring), [params]))
    return GlmCatalog(gamma, delta, ring, relabeling, entries)


@dataclass
class RelationReport:
    """Pairwise comparison of a theorem-level relation with matrix isomorphism."""

    pairs: int
    agree: int
    false_merge: list[tuple[int, int]]   # relation says same, matrices differ
    false_split: list[tuple[int, int]]   # relation says different, matrices agree

    @property
    def matches(self) -> bool:
        return not self.false_merge and not self.false_split


def glm_relation_report(params: list[GlmParams], reps: list[NimRep] | None = None,
                        relabeling: str = "gamma_set") -> RelationReport:
    if reps is None:
        reps = [glm_build(p) for p in params]
    keys = [fingerprint(r) for r in reps]
    pairs = agree = 0
    merge, split = [], []
    for i, j in itertools.combinations(range(len(params)), 2):
        if reps[i].dim != reps[j].dim:
            continue
        pairs += 1
        theorem = glm_same_class(params[i], params[j], relabeling)
        matrix = keys[i] == keys[j] and are_isomorphic(reps[i], reps[j])[0]
        if theorem == matrix:
            agree += 1
        elif theorem:
            merge.append((i, j))
        else:
            split.append((i, j))
    return RelationReport(pairs, agree, merge, split)


# --------------------------------------------------------------------------
# algebra objects and checks


def glm_algebra_objects(params: GlmParams, ring: FusionRing | None = None) -> list[AlgebraObject]:
    """Closed-form algebra objects.

    One orbit: one object per ``2Γ``-orbit index ``i``, the group part ``H``
    plus ``c`` copies of each ``X_ḡ`` with ``σ_ḡ(i) = τ₀⁻¹(i)``.
    Two orbits: ``⊕_{h∈H_j} h`` for each orbit, without ``X`` terms.
    """
    sigma = check_glm_params(params)
    ring = glm_ring(params.gamma, params.delta, params.allow_odd) if ring is None else ring
    n = params.gamma.order
    if params.orbit_count == 2:
        return [AlgebraObject.from_counts({a: 1 for a in h.members}, ring.labels)
                for h in params.subgroups]
    c = glm_coefficient(params, sigma)
    tinv = inverse(params.tau0)
    out = []
    for i in range(sigma.size):
        counts = {a: 1 for a in params.subgroups[0].members}
        for q, s in enumerate(sigma.sigma):
            if s[i] == tinv[i]:
                counts[n + q] = c
        out.append(AlgebraObject.from_counts(counts, ring.labels))
    return out


def glm_aggregate_algebra(params: GlmParams, ring: FusionRing | None = None) -> AlgebraObject | None:
    """The one-orbit formula summed over every ``2Γ``-orbit index, or ``None`` for two orbits."""
    if params.orbit_count != 1:
        return None
    per = glm_algebra_objects(params, ring)
    n = params.gamma.order
    counts = {a: 1 for a in params.subgroups[0].members}
    for obj in per:
        for b, c in obj.terms:
            if b >= n:
                counts[b] = counts.get(b, 0) + c
    return AlgebraObject.from_counts(counts, per[0].ring_labels)


@dataclass
class AlgebraCheck:
    closed_form: list[AlgebraObject]
    readings: list[AlgebraObject]              # one per module point
    mismatched_points: list[int]
    aggregate: AlgebraObject | None
    aggregate_matches_some_point: bool | None


def glm_algebra_check(params: GlmParams, rep: NimRep) -> AlgebraCheck:
    sigma = params.sigma()
    layout = glm_layout(sigma)
    closed = glm_algebra_objects(params, rep.ring)
    readings = [algebra_object_at(rep, x) for x in range(rep.dim)]
    bad = []
    for i, pts in enumerate(layout.points):
        expect = closed[i] if params.orbit_count == 1 else closed[sigma.orbit_of[i]]
        bad.extend(x for x in pts if readings[x] != expect)
    agg = glm_aggregate_algebra(params, rep.ring)
    agg_ok = None if agg is None else any(r == agg for r in readings)
    return AlgebraCheck(closed, readings, bad, agg, agg_ok)


def induced_permutation(rep: NimRep, layout: GlmLayout, b: int) -> tuple[int, ...] | None:
    """Action of basis element ``b`` on ``2Γ``-orbit indices, read from its matrix.

    ``None`` if some ``2Γ``-orbit is not sent into a single one.
    """
    where = {}
    for i, pts in enumerate(layout.points):
        for x in pts:
            where[x] = i
    out = []
    for i, pts in enumerate(layout.points):
        targets = {where[int(y)] for x in pts for y in np.flatnonzero(rep.matrices[b][:, x])}
        if len(targets) != 1:
            return None
        out.append(targets.pop())
    return tuple(out)


def coefficient_equation_violations(params: GlmParams, rep: NimRep) -> list[str]:
    """Check the orbit-pair coefficient equations on a built rep.

    For every orbit pair ``(i, j)`` and class ``ḡ``:
    ``|H_j∩2Γ| = Σ c² |2Γ : H_l∩2Γ|`` over target orbit pairs, and
    ``c^ḡ_{(i,j),(k,l)} c^{-ḡ-δ}_{(k,l),(q,u)} = 0`` whenever ``(q,u) != (i,j)``.
    Coefficients are read from the matrices and must be constant on blocks.
    """
    sigma = params.sigma()
    layout = glm_layout(sigma)
    data = sigma.data
    two = set(data.two_gamma.members)
    Q = data.quotient
    n = params.gamma.order
    dq = sigma.delta_class
    inter = [len(set(h.members) & two) for h in params.subgroups]
    size = len(layout.points)
    errors = []
    coef = np.zeros((Q.order, size, size), dtype=np.int64)
    for q in range(Q.order):
        mat = rep.matrices[n + q]
        for i, src in enumerate(layout.points):
            for k, tgt in enumerate(layout.points):
                block = mat[np.ix_(tgt, src)]
                if block.min() != block.max():
                    errors.append(f"X class {q}: block ({i},{k}) not constant")
                coef[q, i, k] = block[0, 0]
    for q in range(Q.order):
        qd = Q.mul(Q.inv(q), Q.inv(dq))
        for i in range(size):
            j = sigma.orbit_of[i]
            rhs = sum(int(coef[q, i, k]) ** 2 * len(layout.points[k]) for k in range(size))
            if rhs != inter[j]:
                errors.append(f"eq (1) fails at orbit pair {i}, class {q}: {inter[j]} != {rhs}")
            for k in range(size):
                if coef[q, i, k] == 0:
                    continue
                for u in range(size):
                    if u != i and coef[qd, k, u]:
                        errors.append(f"eq (2) fails: ({i}->{k}) then ({k}->{u}), class {q}")
    return errors
