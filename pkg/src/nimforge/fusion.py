"""Fusion rings stored as dense structure-constant tables.

``N[i, j, k]`` is the multiplicity of basis element ``k`` in ``b_i b_j``.
The two constructors place the group elements first (basis index == group
element index) and the non-invertible elements after them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .groups import (
    FiniteGroup,
    GroupError,
    NotAbelian,
    Subgroup,
    doubled_subgroup,
    exact_sqrt,
    group_from_json,
    is_perfect_square,
    quotient,
)


class RingError(ValueError):
    pass


class BadP(RingError):
    pass


class OrderNotSquare(RingError):
    pass


class OddOrder(RingError):
    pass


class DimensionMismatch(RingError):
    pass


@dataclass(frozen=True, eq=False)
class FusionRing:
    labels: tuple[str, ...]
    unit: int
    dual: np.ndarray
    N: np.ndarray
    kind: str = "custom"
    meta: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.labels)

    @cached_property
    def invertible(self) -> tuple[int, ...]:
        """Basis elements ``b`` with ``b b* = 1``."""
        out = []
        for i in range(self.rank):
            row = self.N[i, self.dual[i]]
            if row[self.unit] == 1 and row.sum() == 1:
                out.append(i)
        return tuple(out)

    @cached_property
    def noninvertible(self) -> tuple[int, ...]:
        inv = set(self.invertible)
        return tuple(i for i in range(self.rank) if i not in inv)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element labelled {label!r}") from None

    def product_index(self, i: int, j: int) -> int:
        """The single basis element ``b_i b_j`` when one factor is invertible."""
        nz = np.flatnonzero(self.N[i, j])
        if len(nz) != 1 or self.N[i, j, nz[0]] != 1:
            raise RingError(f"{self.labels[i]} * {self.labels[j]} is not a basis element")
        return int(nz[0])

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.rank, dtype=np.int64)
        v[i] = 1
        return v

    def element(self, terms: dict[str, int]) -> np.ndarray:
        v = np.zeros(self.rank, dtype=np.int64)
        for lab, c in terms.items():
            v[self.index(lab)] += c
        return v

    def format(self, v) -> str:
        parts = []
        for i in np.flatnonzero(v):
            c = int(v[i])
            parts.append(self.labels[i] if c == 1 else f"{c}·{self.labels[i]}")
        return " ⊕ ".join(parts) if parts else "0"

    # group-backed rings only
    @property
    def group(self) -> FiniteGroup:
        return self.meta["group"]

    def descriptor(self) -> dict:
        """JSON-ready description from which the ring can be rebuilt."""
        if self.kind == "jl":
            return {"kind": "jl", "group": self.group.to_json(), "p": self.meta["p"]}
        if self.kind == "glm":
            d = {"kind": "glm", "group": self.group.to_json(),
                 "delta": _element_json(self.group, self.meta["delta"])}
            if self.meta.get("allow_odd"):
                d["allow_odd"] = True
            return d
        return {"kind": "custom", "ring": ring_to_json(self)}


def _element_json(g: FiniteGroup, x: int):
    return list(g.element_tuple(x)) if g.factors is not None else int(x)


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def jl_ring(g: FiniteGroup, p: int) -> FusionRing:
    """The ring with basis ``G ∪ {X_1..X_{p-1}}`` and ``X_i X_j = √|G| X_{i+j}``."""
    if p < 2:
        raise BadP(f"p must be at least 2, got {p}")
    n = g.order
    if p > 2 and not is_perfect_square(n):
        raise OrderNotSquare(f"|G| = {n} is not a perfect square (required for p = {p} > 2)")
    root = exact_sqrt(n) if is_perfect_square(n) else None
    r = n + p - 1
    N = np.zeros((r, r, r), dtype=np.int64)
    xs = [n + k - 1 for k in range(1, p)]
    for a in range(n):
        for b in range(n):
            N[a, b, g.mul(a, b)] = 1
        for x in xs:
            N[a, x, x] = 1
            N[x, a, x] = 1
    for i in range(1, p):
        for j in range(1, p):
            s = (i + j) % p
            if s == 0:
                N[xs[i - 1], xs[j - 1], :n] = 1
            else:
                N[xs[i - 1], xs[j - 1], xs[s - 1]] = root
    dual = [g.inv(a) for a in range(n)] + [xs[(p - k) - 1] for k in range(1, p)]
    labels = tuple(g.label(a) for a in range(n)) + tuple(f"X_{k}" for k in range(1, p))
    return FusionRing(labels, 0, _frozen(dual), _frozen(N), "jl",
                      {"group": g, "p": p, "x_index": {k: xs[k - 1] for k in range(1, p)}})


@dataclass(frozen=True, eq=False)
class GlmData:
    """``Γ``, ``2Γ`` and ``Γ/2Γ`` with the projection ``Γ → Γ/2Γ``."""

    gamma: FiniteGroup
    two_gamma: Subgroup
    quotient: FiniteGroup
    proj: np.ndarray

    @property
    def reps(self) -> list[int]:
        """Least element of each class, indexed by quotient element."""
        out = [-1] * self.quotient.order
        for g in self.gamma.elements:
            q = int(self.proj[g])
            if out[q] < 0:
                out[q] = g
        return out

    def qlabel(self, q: int) -> str:
        return self.gamma.label(self.reps[q])


def glm_data(gamma: FiniteGroup) -> GlmData:
    if not gamma.is_abelian:
        raise NotAbelian(f"{gamma!r} is not abelian")
    two = doubled_subgroup(gamma)
    q, proj = quotient(gamma, two)
    return GlmData(gamma, two, q, proj)


def glm_ring(gamma: FiniteGroup, delta: int, allow_odd: bool = False) -> FusionRing:
    """The ring with basis ``Γ ∪ {X_q : q ∈ Γ/2Γ}``.

    ``delta`` is an element of ``Γ``; only its class modulo ``2Γ`` matters.
    """
    if not gamma.is_abelian:
        raise NotAbelian(f"{gamma!r} is not abelian")
    if gamma.order % 2 and not allow_odd:
        raise OddOrder(f"|Γ| = {gamma.order} is odd")
    if not 0 <= delta < gamma.order:
        raise GroupError(f"delta {delta} is not an element of {gamma!r}")
    data = glm_data(gamma)
    Q, proj = data.quotient, data.proj
    n, k = gamma.order, Q.order
    r = n + k
    dq = int(proj[delta])
    N = np.zeros((r, r, r), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            N[a, b, gamma.mul(a, b)] = 1
        for q in range(k):
            t = n + Q.mul(int(proj[a]), q)
            N[a, n + q, t] = 1
            N[n + q, a, t] = 1
    for q1 in range(k):
        for q2 in range(k):
            target = Q.mul(Q.mul(dq, q1), q2)
            N[n + q1, n + q2, :n] = (proj == target).astype(np.int64)
    dual = [gamma.inv(a) for a in range(n)]
    dual += [n + Q.mul(Q.inv(q), Q.inv(dq)) for q in range(k)]
    labels = tuple(gamma.label(a) for a in range(n))
    labels += tuple(f"X_{data.qlabel(q)}" for q in range(k))
    meta = {"group": gamma, "delta": int(delta), "delta_class": dq, "glm": data,
            "allow_odd": allow_odd}
    return FusionRing(labels, 0, _frozen(dual), _frozen(N), "glm", meta)


@dataclass
class AxiomReport:
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.passed:
            return "axioms: pass"
        return "axioms: FAIL\n" + "\n".join(f"  {name}: witness {w}" for name, w in self.violations)


def verify_axioms(r: FusionRing) -> AxiomReport:
    rep = AxiomReport()
    N, u, d, n = r.N, r.unit, r.dual, r.rank
    if N.shape != (n, n, n):
        rep.violations.append(("shape", N.shape))
        return rep
    neg = np.argwhere(N < 0)
    if len(neg):
        rep.violations.append(("non-negativity", tuple(int(v) for v in neg[0])))
    eye = np.eye(n, dtype=np.int64)
    for j in range(n):
        if not np.array_equal(N[u, j], eye[j]):
            rep.violations.append(("left unit", (u, j)))
        if not np.array_equal(N[j, u], eye[j]):
            rep.violations.append(("right unit", (j, u)))
    if sorted(d.tolist()) != list(range(n)) or any(d[d[i]] != i for i in range(n)):
        rep.violations.append(("involution", tuple(d.tolist())))
        return rep
    for i in range(n):
        # (b_i b_j) b_l  vs  b_i (b_j b_l), one i-slab at a time
        lhs = np.tensordot(N[i], N, axes=([1], [0]))  # [j, l, m]
        rhs = np.tensordot(N, N[i], axes=([2], [0]))  # [j, l, m]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            j, l, m = (int(v) for v in bad[0])
            rep.violations.append(("associativity", (i, j, l, m)))
            break
    dual_ok = N[:, :, u] == (np.arange(n)[None, :] == d[:, None])
    if not dual_ok.all():
        i, j = (int(v) for v in np.argwhere(~dual_ok)[0])
        rep.violations.append(("duality", (i, j)))
    frob = N - N[d].transpose(0, 2, 1)
    if frob.any():
        i, j, k = (int(v) for v in np.argwhere(frob)[0])
        rep.violations.append(("frobenius reciprocity", (i, j, k)))
    inv = set(r.invertible)
    for a in inv:
        if int(d[a]) not in inv:
            rep.violations.append(("invertibles closed under dual", (a,)))
        for b in inv:
            nz = np.flatnonzero(N[a, b])
            if len(nz) != 1 or N[a, b, nz[0]] != 1 or int(nz[0]) not in inv:
                rep.violations.append(("invertibles closed under product", (a, b)))
    return rep


def multiply(r: FusionRing, x, y) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != (r.rank,) or y.shape != (r.rank,):
        raise DimensionMismatch(f"expected vectors of length {r.rank}, got {x.shape} and {y.shape}")
    return np.einsum("i,j,ijk->k", x, y, r.N)


def ring_to_json(r: FusionRing) -> dict:
    trip = [[int(i), int(j), int(k), int(r.N[i, j, k])] for i, j, k in np.argwhere(r.N)]
    return {"basis": list(r.labels), "unit": int(r.unit), "dual": [int(v) for v in r.dual],
            "N": trip}


def ring_from_json(data: dict | str) -> FusionRing:
    if isinstance(data, str):
        data = json.loads(data)
    if "kind" in data and data["kind"] != "custom":
        return ring_from_descriptor(data)
    if "ring" in data:
        data = data["ring"]
    labels = tuple(data["basis"])
    n = len(labels)
    N = np.zeros((n, n, n), dtype=np.int64)
    for i, j, k, v in data["N"]:
        N[i, j, k] = v
    return FusionRing(labels, int(data["unit"]), _frozen(data["dual"]), _frozen(N))


def ring_from_descriptor(desc: dict) -> FusionRing:
    kind = desc.get("kind", "custom")
    if kind == "custom":
        return ring_from_json(desc["ring"] if "ring" in desc else desc)
    g = group_from_json(desc["group"])
    if kind == "jl":
        return jl_ring(g, int(desc["p"]))
    if kind == "glm":
        delta = desc.get("delta", 0)
        delta = g.element_index(delta) if isinstance(delta, list) else int(delta)
        return glm_ring(g, delta, allow_odd=bool(desc.get("allow_odd", False)))
    raise RingError(f"unknown ring kind {kind!r}")
