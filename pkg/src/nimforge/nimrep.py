"""NIM-reps as tuples of non-negative integer matrices.

Convention: ``matrices[b] @ v`` is the action of basis element ``b`` on a
coefficient vector, so ``matrices[b][y, x]`` is the multiplicity of ``m_y`` in
``b ▷ m_x``.  The NIM-graph therefore has ``matrices[b][y, x]`` edges
``x -> y`` labelled ``b``, and rigidity reads ``matrices[b*] == matrices[b].T``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .fusion import FusionRing


class NimRepError(ValueError):
    pass


class NotHomomorphism(NimRepError):
    pass


class NotRigid(NimRepError):
    pass


class UnitNotIdentity(NimRepError):
    pass


class InvertibleNotPermutation(NimRepError):
    pass


class NotASubgroup(NimRepError):
    pass


@dataclass(frozen=True, eq=False)
class NimRep:
    ring: FusionRing
    matrices: np.ndarray
    labels: tuple[str, ...]

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def matrix(self, b: int | str) -> np.ndarray:
        if isinstance(b, str):
            b = self.ring.index(b)
        return self.matrices[b]

    @cached_property
    def perms(self) -> dict[int, np.ndarray]:
        """``perms[g][x]`` is the image of ``x`` under invertible ``g``."""
        return {g: np.argmax(self.matrices[g], axis=0) for g in self.ring.invertible}

    def to_json(self) -> dict:
        return {
            "ring": self.ring.descriptor(),
            "dim": self.dim,
            "labels": list(self.labels),
            "matrices": {lab: self.matrices[i].tolist() for i, lab in enumerate(self.ring.labels)},
        }


def _check_shape(ring: FusionRing, mats: np.ndarray) -> None:
    if mats.ndim != 3 or mats.shape[0] != ring.rank or mats.shape[1] != mats.shape[2]:
        raise NimRepError(f"expected {ring.rank} square matrices of equal size, got shape {mats.shape}")
    if mats.size and mats.min() < 0:
        b, y, x = (int(v) for v in np.argwhere(mats < 0)[0])
        raise NimRepError(f"negative entry in {ring.labels[b]} at ({y}, {x})")


def nimrep_from_matrices(ring: FusionRing, matrices, labels: Sequence[str] | None = None) -> NimRep:
    """Validate a tuple of matrices as a NIM-rep of ``ring``.

    ``matrices`` is either indexable by basis index or a mapping from basis
    label to matrix.
    """
    if isinstance(matrices, Mapping):
        matrices = [matrices[lab] for lab in ring.labels]
    mats = np.array(matrices, dtype=np.int64)
    if mats.ndim == 1 and mats.size == 0:
        mats = mats.reshape(ring.rank, 0, 0)
    _check_shape(ring, mats)
    d = mats.shape[1]
    eye = np.eye(d, dtype=np.int64)
    if not np.array_equal(mats[ring.unit], eye):
        bad = np.argwhere(mats[ring.unit] != eye)[0]
        raise UnitNotIdentity(f"unit matrix differs from identity at {tuple(int(v) for v in bad)}")
    for g in ring.invertible:
        m = mats[g]
        if not (m.sum(axis=0) == 1).all() or not (m.sum(axis=1) == 1).all() or m.max(initial=0) > 1:
            raise InvertibleNotPermutation(f"matrix of {ring.labels[g]} is not a permutation matrix")
    for i in range(ring.rank):
        j = int(ring.dual[i])
        if not np.array_equal(mats[j], mats[i].T):
            y, x = (int(v) for v in np.argwhere(mats[j] != mats[i].T)[0])
            raise NotRigid(f"matrix({ring.labels[j]}) != matrix({ring.labels[i]})^T at ({y}, {x})")
    for i in range(ring.rank):
        lhs = np.einsum("ab,jbc->jac", mats[i], mats)
        rhs = np.einsum("jk,kac->jac", ring.N[i], mats)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            j, y, x = (int(v) for v in bad[0])
            raise NotHomomorphism(
                f"matrix({ring.labels[i]}) @ matrix({ring.labels[j]}) differs from the fusion rule "
                f"at entry ({y}, {x}): {lhs[j, y, x]} != {rhs[j, y, x]}")
    if labels is None:
        labels = tuple(f"m{x}" for x in range(d))
    labels = tuple(labels)
    if len(labels) != d:
        raise NimRepError(f"{len(labels)} labels for a {d}-dimensional rep")
    mats.setflags(write=False)
    return NimRep(ring, mats, labels)


def regular_nimrep(ring: FusionRing) -> NimRep:
    """The ring acting on itself by left multiplication."""
    mats = ring.N.transpose(0, 2, 1)
    return nimrep_from_matrices(ring, mats, ring.labels)


def direct_sum(a: NimRep, b: NimRep) -> NimRep:
    d1, d2 = a.dim, b.dim
    mats = np.zeros((a.ring.rank, d1 + d2, d1 + d2), dtype=np.int64)
    mats[:, :d1, :d1] = a.matrices
    mats[:, d1:, d1:] = b.matrices
    labels = tuple(f"{l}'" for l in a.labels) + tuple(f"{l}''" for l in b.labels)
    return nimrep_from_matrices(a.ring, mats, labels)


def relabel(m: NimRep, perm: Sequence[int]) -> NimRep:
    """Move basis element ``x`` to position ``perm[x]``."""
    perm = np.asarray(perm)
    inv = np.argsort(perm)
    mats = m.matrices[:, inv][:, :, inv]
    labels = tuple(m.labels[i] for i in inv)
    return nimrep_from_matrices(m.ring, mats, labels)


def _components(adj: np.ndarray) -> list[list[int]]:
    d = len(adj)
    seen = np.zeros(d, dtype=bool)
    comps = []
    for s in range(d):
        if seen[s]:
            continue
        comp, queue = [], deque([s])
        seen[s] = True
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in np.flatnonzero(adj[x] & ~seen):
                seen[y] = True
                queue.append(int(y))
        comps.append(sorted(comp))
    return comps


def components(m: NimRep) -> list[list[int]]:
    adj = m.matrices.sum(axis=0) > 0
    return _components(adj | adj.T)


def is_irreducible(m: NimRep) -> bool:
    return m.dim > 0 and len(components(m)) == 1


# --------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class OrbitDecomposition:
    """Orbits of a group of invertibles on the module basis.

    ``orbits`` are sorted by least member; ``stabilizers[i]`` is the
    stabilizer (as ring basis indices) of the least member of orbit ``i``.
    ``nested[i]``, when present, lists the inner orbits contained in orbit
    ``i`` as indices into ``inner.orbits``.
    """

    orbits: tuple[tuple[int, ...], ...]
    stabilizers: tuple[tuple[int, ...], ...]
    group: tuple[int, ...]
    inner: "OrbitDecomposition | None" = None
    nested: tuple[tuple[int, ...], ...] | None = None

    def orbit_of(self, x: int) -> int:
        for i, o in enumerate(self.orbits):
            if x in o:
                return i
        raise IndexError(x)

    def __len__(self) -> int:
        return len(self.orbits)


def _check_invertible_subgroup(ring: FusionRing, elems: Sequence[int]) -> tuple[int, ...]:
    s = set(int(e) for e in elems)
    inv = set(ring.invertible)
    if not s <= inv:
        raise NotASubgroup(f"{sorted(s - inv)} are not invertible basis elements")
    if ring.unit not in s:
        raise NotASubgroup("subgroup must contain the unit")
    for a in s:
        if int(ring.dual[a]) not in s:
            raise NotASubgroup(f"not closed under inverse at {ring.labels[a]}")
        for b in s:
            if ring.product_index(a, b) not in s:
                raise NotASubgroup(f"not closed under product at ({ring.labels[a]}, {ring.labels[b]})")
    return tuple(sorted(s))


def decompose_orbits(m: NimRep, subgroup: Iterable[int] | None = None) -> OrbitDecomposition:
    """Orbits of ``subgroup`` (default: all invertibles) acting on the basis."""
    elems = m.ring.invertible if subgroup is None else _check_invertible_subgroup(m.ring, list(subgroup))
    perms = m.perms
    label = np.full(m.dim, -1)
    orbits = []
    for x in range(m.dim):
        if label[x] >= 0:
            continue
        orb = sorted({int(perms[g][x]) for g in elems})
        label[orb] = len(orbits)
        orbits.append(tuple(orb))
    stabs = tuple(tuple(g for g in elems if perms[g][o[0]] == o[0]) for o in orbits)
    return OrbitDecomposition(tuple(orbits), stabs, tuple(elems))


def decompose_nested(m: NimRep, outer: Iterable[int], inner: Iterable[int]) -> OrbitDecomposition:
    """Outer orbits with each split into orbits of the smaller group ``inner``."""
    big = decompose_orbits(m, outer)
    small = decompose_orbits(m, inner)
    if not set(small.group) <= set(big.group):
        raise NotASubgroup("inner group must be contained in the outer group")
    nested = []
    for o in big.orbits:
        os_ = set(o)
        nested.append(tuple(i for i, s in enumerate(small.orbits) if s[0] in os_))
    return OrbitDecomposition(big.orbits, big.stabilizers, big.group, small, tuple(nested))


# --------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class NimGraph:
    nodes: tuple[str, ...]
    edges: tuple[tuple[int, int, int, int], ...]  # (source, target, ring basis index, multiplicity)
    ring_labels: tuple[str, ...]


@dataclass(frozen=True)
class NimOrbitGraph:
    nodes: tuple[str, ...]
    orbits: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, int, int], ...]  # (source orbit, target orbit, label, collapsed count)
    ring_labels: tuple[str, ...]

    def loops(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {}
        for s, t, b, _ in self.edges:
            if s == t:
                out.setdefault(s, set()).add(b)
        return out


def nim_graph(m: NimRep) -> NimGraph:
    edges = []
    for b in range(m.ring.rank):
        for y, x in np.argwhere(m.matrices[b]):
            edges.append((int(x), int(y), b, int(m.matrices[b][y, x])))
    edges.sort()
    return NimGraph(m.labels, tuple(edges), m.ring.labels)


def nim_orbit_graph(m: NimRep, subgroup: Iterable[int] | None = None) -> NimOrbitGraph:
    """Contract the edges of ``subgroup`` (default: all invertibles).

    Parallel edges with the same label between two orbits collapse to one;
    the number of collapsed NIM-graph edges is kept as the fourth field.
    """
    dec = decompose_orbits(m, subgroup)
    contracted = set(dec.group)
    which = np.empty(m.dim, dtype=np.int64)
    for i, o in enumerate(dec.orbits):
        which[list(o)] = i
    counts: dict[tuple[int, int, int], int] = {}
    for b in range(m.ring.rank):
        if b in contracted:
            continue
        for y, x in np.argwhere(m.matrices[b]):
            key = (int(which[x]), int(which[y]), b)
            counts[key] = counts.get(key, 0) + int(m.matrices[b][y, x])
    edges = tuple(sorted((s, t, b, c) for (s, t, b), c in counts.items()))
    names = tuple(f"O{i + 1}" for i in range(len(dec.orbits)))
    return NimOrbitGraph(names, dec.orbits, edges, m.ring.labels)


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_label(lab: str, mult: int) -> str:
    return lab if mult == 1 else f"{lab} (×{mult})"


def to_dot(graph: NimGraph | NimOrbitGraph, name: str = "nimrep", include_unit: bool = False,
           unit: int = 0) -> str:
    lines = [f"digraph {_dot_id(name)} {{"]
    for node in graph.nodes:
        lines.append(f"  {_dot_id(node)};")
    for s, t, b, mult in graph.edges:
        if b == unit and not include_unit and isinstance(graph, NimGraph):
            continue
        # orbit graphs keep one edge per label, so only NIM-graphs show multiplicity
        lab = _dot_label(graph.ring_labels[b], mult if isinstance(graph, NimGraph) else 1)
        lines.append(f"  {_dot_id(graph.nodes[s])} -> {_dot_id(graph.nodes[t])} [label={_dot_id(lab)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# admissibility and algebra objects


def is_admissible(m: NimRep, strict: bool = False) -> tuple[bool, int | None]:
    """Look for a basis element ``m0`` from which every basis element is reached.

    By default ``m_i`` is reached when it occurs in ``b ▷ m0`` for some basis
    element ``b``.  With ``strict=True`` it must equal ``b ▷ m0`` exactly.
    """
    mats = m.matrices
    for x0 in range(m.dim):
        cols = mats[:, :, x0]  # cols[b] = b ▷ m0
        if strict:
            hits = (cols.sum(axis=1) == 1)[:, None] & (cols == 1)
            reached = hits.any(axis=0)
        else:
            reached = (cols > 0).any(axis=0)
        if reached.all():
            return True, x0
    return False, None


@dataclass(frozen=True)
class AlgebraObject:
    """``⊕ a_i b_i`` as sorted ``(basis index, multiplicity)`` pairs."""

    terms: tuple[tuple[int, int], ...]
    ring_labels: tuple[str, ...] = field(compare=False, repr=False)

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], ring_labels: Sequence[str]) -> "AlgebraObject":
        terms = tuple(sorted((int(b), int(c)) for b, c in counts.items() if c))
        return cls(terms, tuple(ring_labels))

    def multiplicity(self, b: int) -> int:
        return dict(self.terms).get(b, 0)

    def as_dict(self) -> dict[str, int]:
        return {self.ring_labels[b]: c for b, c in self.terms}

    def __str__(self) -> str:
        return " ⊕ ".join(self.ring_labels[b] if c == 1 else f"{c}·{self.ring_labels[b]}"
                          for b, c in self.terms)


def algebra_object_at(m: NimRep, x: int) -> AlgebraObject:
    """Self-loop multiplicities at basis element ``x``."""
    if not 0 <= x < m.dim:
        raise IndexError(f"basis index {x} out of range for a {m.dim}-dimensional rep")
    diag = m.matrices[:, x, x]
    return AlgebraObject.from_counts({b: int(diag[b]) for b in range(m.ring.rank)}, m.ring.labels)


# --------------------------------------------------------------------------
# isomorphism


def _refine(mats: np.ndarray, rounds: int | None = None) -> list[int]:
    """Colour refinement on the labelled multigraph; colours are hashes."""
    d = mats.shape[1]
    diag = mats[:, np.arange(d), np.arange(d)].T
    colors = [hash(tuple(row)) for row in diag.tolist()]
    nz = [[(int(b), int(y), int(mats[b, y, x])) for b, y in zip(*np.nonzero(mats[:, :, x]))]
          for x in range(d)]
    rounds = d if rounds is None else rounds
    n_classes = len(set(colors))
    for _ in range(rounds):
        new = [hash((colors[x], tuple(sorted((b, w, colors[y]) for b, y, w in nz[x]))))
               for x in range(d)]
        k = len(set(new))
        colors = new
        if k == n_classes:
            break
        n_classes = k
    return colors


def fingerprint(m: NimRep) -> tuple:
    """Isomorphism invariant: dimension plus the multiset of refined colours."""
    return (m.dim, tuple(sorted(_refine(m.matrices))))


def are_isomorphic(m1: NimRep, m2: NimRep) -> tuple[bool, np.ndarray | None]:
    """Search for ``σ`` with ``matrix2(b)[σy, σx] == matrix1(b)[y, x]`` for all ``b``.

    Returns ``(True, σ)`` or ``(False, None)``.  Candidates are pruned by
    refined colours; permutation matrices propagate forced images.
    """
    if m1.dim != m2.dim or m1.ring.rank != m2.ring.rank:
        return False, None
    if m1.ring is not m2.ring and not np.array_equal(m1.ring.N, m2.ring.N):
        return False, None
    d = m1.dim
    if d == 0:
        return True, np.zeros(0, dtype=np.int64)
    A, B = m1.matrices, m2.matrices
    c1, c2 = _refine(A), _refine(B)
    if sorted(c1) != sorted(c2):
        return False, None
    inv = list(m1.ring.invertible)
    p1 = [np.argmax(A[g], axis=0) for g in inv]
    p2 = [np.argmax(B[g], axis=0) for g in inv]
    by_color: dict[int, list[int]] = {}
    for y in range(d):
        by_color.setdefault(c2[y], []).append(y)

    # visit order: breadth-first over the underlying graph so that assigned
    # neighbours constrain each new choice
    adj = (A.sum(axis=0) + A.sum(axis=0).T) > 0
    order = []
    seen = np.zeros(d, dtype=bool)
    for s in sorted(range(d), key=lambda x: len(by_color[c1[x]])):
        if seen[s]:
            continue
        seen[s] = True
        q = deque([s])
        while q:
            x = q.popleft()
            order.append(x)
            for y in np.flatnonzero(adj[x] & ~seen):
                seen[y] = True
                q.append(int(y))

    sigma = np.full(d, -1, dtype=np.int64)
    used = np.zeros(d, dtype=bool)

    def consistent(x: int, y: int, assigned: np.ndarray) -> bool:
        if c1[x] != c2[y] or used[y]:
            return False
        if not np.array_equal(A[:, x, x], B[:, y, y]):
            return False
        if len(assigned):
            ty = sigma[assigned]
            if not np.array_equal(A[:, assigned, x], B[:, ty, y]):
                return False
            if not np.array_equal(A[:, x, assigned], B[:, y, ty]):
                return False
        return True

    def assign(x: int, y: int, trail: list[int]) -> bool:
        stack = [(x, y)]
        while stack:
            x, y = stack.pop()
            if sigma[x] >= 0:
                if sigma[x] != y:
                    return False
                continue
            assigned = np.flatnonzero(sigma >= 0)
            if not consistent(x, y, assigned):
                return False
            sigma[x] = y
            used[y] = True
            trail.append(x)
            for a, b in zip(p1, p2):
                stack.append((int(a[x]), int(b[y])))
        return True

    def undo(trail: list[int]) -> None:
        for x in trail:
            used[sigma[x]] = False
            sigma[x] = -1

    def search(k: int) -> bool:
        while k < d and sigma[order[k]] >= 0:
            k += 1
        if k == d:
            return True
        x = order[k]
        for y in by_color[c1[x]]:
            if used[y]:
                continue
            trail: list[int] = []
            if assign(x, y, trail) and search(k + 1):
                return True
            undo(trail)
        return False

    if search(0):
        return True, sigma.copy()
    return False, None
