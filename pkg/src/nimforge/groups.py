"""Finite groups as explicit multiplication tables.

Elements are the integers ``0 .. order-1`` with ``0`` the identity.  Abelian
groups built by :func:`abelian_group` use a little-endian mixed-radix encoding,
so in ``Z2 x Z2`` the element ``(1, 0)`` is ``1``, ``(0, 1)`` is ``2`` and
``(1, 1)`` is ``3``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 64


class GroupError(ValueError):
    pass


class NotAssociative(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    pass


class FactorTooSmall(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


class NotAbelian(GroupError):
    pass


class NotASquare(ValueError):
    pass


class OrderTooLarge(GroupError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated finite group.  Build with :func:`group_from_table`."""

    table: np.ndarray
    inverse: np.ndarray
    name: str | None = None
    factors: tuple[int, ...] | None = None

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def element_tuple(self, g: int) -> tuple[int, ...]:
        if self.factors is None:
            raise GroupError("element tuples exist only for groups built by abelian_group")
        out = []
        for n in self.factors:
            out.append(g % n)
            g //= n
        return tuple(out)

    def element_index(self, coords: Sequence[int]) -> int:
        if self.factors is None:
            raise GroupError("element tuples exist only for groups built by abelian_group")
        if len(coords) != len(self.factors):
            raise GroupError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        idx, radix = 0, 1
        for c, n in zip(coords, self.factors):
            idx += (int(c) % n) * radix
            radix *= n
        return idx

    def label(self, g: int) -> str:
        if self.factors is None:
            return f"g{g}"
        t = self.element_tuple(g)
        if len(t) == 1:
            return str(t[0])
        return "(" + ",".join(map(str, t)) + ")"

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        """Smallest subgroup containing ``gens``."""
        members = {0}
        frontier = [g for g in gens]
        gens = list(set(frontier))
        while frontier:
            x = frontier.pop()
            if x in members:
                continue
            members.add(x)
            for g in gens:
                y = int(self.table[x, g])
                if y not in members:
                    frontier.append(y)
        return frozenset(members)

    def to_json(self) -> dict:
        if self.factors is not None:
            return {"abelian": list(self.factors)}
        out: dict = {"order": self.order, "table": self.table.tolist()}
        if self.name:
            out["name"] = self.name
        return out

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"


@dataclass(frozen=True)
class Subgroup:
    members: tuple[int, ...]
    parent: FiniteGroup = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self._set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.members)

    def sort_key(self) -> tuple:
        return (len(self.members), self.members)

    def label(self) -> str:
        g = self.parent
        if len(self.members) == 1:
            return "{e}"
        if len(self.members) == g.order:
            return g.name or "G"
        return "{" + ", ".join(g.label(x) for x in self.members) + "}"


@dataclass(frozen=True, eq=False)
class CosetSpace:
    """Left cosets ``xH`` with the permutation action of the parent group.

    ``action[g, i]`` is the index of the coset ``g x H`` where ``x H`` is coset
    ``i``.  Cosets are ordered by least member, so coset 0 is ``H`` itself.
    """

    group: FiniteGroup
    subgroup: Subgroup
    cosets: tuple[tuple[int, ...], ...]
    action: np.ndarray
    coset_of: np.ndarray

    def __len__(self) -> int:
        return len(self.cosets)

    def stabilizer(self, i: int) -> tuple[int, ...]:
        return tuple(int(g) for g in np.flatnonzero(self.action[:, i] == i))


def group_from_table(table, name: str | None = None, max_order: int = MAX_ORDER,
                     factors: tuple[int, ...] | None = None) -> FiniteGroup:
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupError(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if n > max_order:
        raise OrderTooLarge(f"group order {n} exceeds the configured cap {max_order}")
    if not np.issubdtype(t.dtype, np.integer):
        raise GroupError("table entries must be integers")
    t = t.astype(np.int64)
    if t.min() < 0 or t.max() >= n:
        raise GroupError(f"table entries must lie in 0..{n - 1}")
    idx = np.arange(n)
    for x in range(n):
        if t[0, x] != x or t[x, 0] != x:
            raise NoIdentity(f"element 0 is not a two-sided identity: fails at element {x}")
    inverse = np.empty(n, dtype=np.int64)
    for g in range(n):
        hits = np.flatnonzero(t[g] == 0)
        if len(hits) != 1 or t[hits[0], g] != 0:
            raise NoInverse(f"element {g} has no two-sided inverse")
        inverse[g] = hits[0]
    lhs = t[t[:, :, None], idx[None, None, :]]
    rhs = t[idx[:, None, None], t[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(f"(a*b)*c != a*(b*c) for (a, b, c) = ({a}, {b}, {c})")
    return FiniteGroup(_frozen(t), _frozen(inverse), name, factors)


def trivial_group() -> FiniteGroup:
    return group_from_table([[0]], name="Z1")


def abelian_group(invariant_factors: Sequence[int], max_order: int = MAX_ORDER) -> FiniteGroup:
    factors = tuple(int(f) for f in invariant_factors)
    if not factors:
        raise GroupError("need at least one factor")
    for f in factors:
        if f < 2:
            raise FactorTooSmall(f"factor {f} < 2")
    n = math.prod(factors)
    if n > max_order:
        raise OrderTooLarge(f"group order {n} exceeds the configured cap {max_order}")
    coords = np.array(np.unravel_index(np.arange(n), factors[::-1], order="C"))[::-1].T
    # coords[g] lists the coordinates of g, first factor least significant
    mods = np.array(factors)
    summed = (coords[:, None, :] + coords[None, :, :]) % mods
    radix = np.cumprod((1,) + factors[:-1])
    table = (summed * radix).sum(axis=-1)
    name = "x".join(f"Z{f}" for f in factors)
    return group_from_table(table, name=name, max_order=max_order, factors=factors)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Direct product; element ``(a, b)`` is encoded as ``a + |g| * b``."""
    n, m = g.order, h.order
    a = np.arange(n * m) % n
    b = np.arange(n * m) // n
    table = g.table[a[:, None], a[None, :]] + n * h.table[b[:, None], b[None, :]]
    name = f"{g.name or 'G'}x{h.name or 'H'}"
    return group_from_table(table, name=name)


def symmetric_group(n: int) -> FiniteGroup:
    """``S_n`` on permutations in lexicographic order (identity first)."""
    from itertools import permutations

    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return group_from_table(table, name=f"S{n}")


_SHORTHAND = re.compile(r"^Z(\d+)(xZ(\d+))*$", re.IGNORECASE)


def parse_group(spec: str) -> FiniteGroup:
    """Parse shorthand such as ``"Z2xZ2"`` or ``"Z4"``; ``"Z1"`` is the trivial group."""
    s = spec.strip().replace(" ", "").replace("×", "x")
    if not _SHORTHAND.match(s):
        raise GroupError(f"cannot parse group shorthand {spec!r}; expected e.g. 'Z2xZ2'")
    factors = [int(f) for f in re.findall(r"\d+", s)]
    factors = [f for f in factors if f != 1]
    if not factors:
        return trivial_group()
    return abelian_group(factors)


def group_from_json(data: dict | str) -> FiniteGroup:
    if isinstance(data, str):
        data = json.loads(data)
    if "abelian" in data:
        if not data["abelian"]:
            return trivial_group()
        return abelian_group(data["abelian"])
    g = group_from_table(data["table"], name=data.get("name"))
    if "order" in data and data["order"] != g.order:
        raise GroupError(f"declared order {data['order']} does not match table size {g.order}")
    return g


def subgroup(g: FiniteGroup, members: Iterable[int]) -> Subgroup:
    s = sorted(set(int(x) for x in members))
    ss = set(s)
    if 0 not in ss:
        raise NotASubgroup("missing the identity")
    for a in s:
        if g.inv(a) not in ss:
            raise NotASubgroup(f"not closed under inverse at {a}")
        for b in s:
            if g.mul(a, b) not in ss:
                raise NotASubgroup(f"not closed under product at ({a}, {b})")
    return Subgroup(tuple(s), g)


def whole(g: FiniteGroup) -> Subgroup:
    return Subgroup(tuple(g.elements), g)


def enumerate_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """All subgroups in canonical order: by size, then member list."""
    found: set[frozenset[int]] = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for s in frontier:
            for x in g.elements:
                if x in s:
                    continue
                t = g.closure(set(s) | {x})
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    subs = [Subgroup(tuple(sorted(s)), g) for s in found]
    subs.sort(key=Subgroup.sort_key)
    return subs


def conjugate(g: FiniteGroup, h: Subgroup, x: int) -> Subgroup:
    xi = g.inv(x)
    return Subgroup(tuple(sorted({g.mul(g.mul(x, a), xi) for a in h.members})), g)


def conjugacy_classes_of_subgroups(g: FiniteGroup,
                                   subgroups: list[Subgroup] | None = None) -> list[list[Subgroup]]:
    subs = enumerate_subgroups(g) if subgroups is None else subgroups
    seen: set[tuple[int, ...]] = set()
    classes = []
    for h in subs:
        if h.members in seen:
            continue
        cls = {conjugate(g, h, x).members for x in g.elements}
        seen |= cls
        classes.append([Subgroup(m, g) for m in sorted(cls, key=lambda m: (len(m), m))])
    return classes


def coset_space(g: FiniteGroup, h: Subgroup) -> CosetSpace:
    try:
        subgroup(g, h.members)
    except NotASubgroup as exc:
        raise NotASubgroup(f"{h.members} is not a subgroup: {exc}") from None
    coset_of = np.full(g.order, -1, dtype=np.int64)
    cosets = []
    for x in g.elements:
        if coset_of[x] >= 0:
            continue
        c = tuple(sorted(g.mul(x, a) for a in h.members))
        coset_of[list(c)] = len(cosets)
        cosets.append(c)
    reps = np.array([c[0] for c in cosets])
    action = coset_of[g.table[:, reps]]
    return CosetSpace(g, h, tuple(cosets), _frozen(action), _frozen(coset_of))


def _require_abelian(g: FiniteGroup) -> None:
    if not g.is_abelian:
        raise NotAbelian(f"{g!r} is not abelian")


def doubled_subgroup(g: FiniteGroup) -> Subgroup:
    """The subgroup ``2G = {x + x}`` of an abelian group."""
    _require_abelian(g)
    return Subgroup(tuple(sorted({g.mul(x, x) for x in g.elements})), g)


def quotient(g: FiniteGroup, h: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """Quotient of an abelian group, on coset indices, plus the projection."""
    _require_abelian(g)
    cs = coset_space(g, h)
    reps = [c[0] for c in cs.cosets]
    table = [[int(cs.coset_of[g.mul(a, b)]) for b in reps] for a in reps]
    return group_from_table(table), cs.coset_of


def two_torsion_count(g: FiniteGroup) -> int:
    _require_abelian(g)
    return int(np.count_nonzero(g.table[np.arange(g.order), np.arange(g.order)] == 0))


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def exact_sqrt(n: int) -> int:
    if not is_perfect_square(n):
        raise NotASquare(f"{n} is not a perfect square")
    return math.isqrt(n)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]
