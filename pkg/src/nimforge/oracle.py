"""Brute-force enumeration of NIM-reps of an arbitrary fusion ring.

The invertible basis elements form a group ``G``.  A NIM-rep restricts to a
permutation action of ``G``, which up to relabeling is a multiset of coset
spaces ``G/H``.  For each such action the non-invertible matrices are solved
for as non-negative integers:

* rigidity and ``M_g M_b = M_{gb}``, ``M_b M_g = M_{bg}`` identify entries,
  leaving a set of free unknowns;
* each unknown is capped by the diagonal of ``M_{b*} M_b`` (the squared
  column mass), which is known exactly when ``b* b`` only involves
  invertibles;
* the quadratic relations ``M_a M_b = Σ N_ab^k M_k`` are checked by interval
  arithmetic after every assignment.

Nothing here uses the structure theorems for particular rings unless hints
are switched on.
"""

from __future__ import annotations

import itertools
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .fusion import FusionRing
from .groups import FiniteGroup, Subgroup, conjugacy_classes_of_subgroups, coset_space, group_from_table
from .nimrep import NimRep, are_isomorphic, fingerprint, is_irreducible, nimrep_from_matrices

THREADS_ENV = "NIMFORGE_THREADS"


class BudgetExceeded(RuntimeError):
    """Search stopped early; ``partial`` holds the classes found so far."""

    def __init__(self, message: str, partial: list[NimRep]):
        super().__init__(message)
        self.partial = partial


class EntryBoundTooSmall(ValueError):
    pass


@dataclass
class SearchConfig:
    max_dim: int
    entry_bound: int | None = None
    require_irreducible: bool = True
    time_budget: float | None = None
    hints: bool = False
    value_order: str = "ascending"        # or "descending"
    shuffle_seed: int | None = None       # permutes the unknown order
    workers: int | None = None

    def __post_init__(self):
        if self.max_dim < 0:
            raise ValueError("max_dim must be non-negative")
        if self.value_order not in ("ascending", "descending"):
            raise ValueError("value_order must be 'ascending' or 'descending'")


# --------------------------------------------------------------------------
# the invertible group and its permutation actions


def invertible_group(ring: FusionRing) -> tuple[FiniteGroup, list[int]]:
    """The group of invertible basis elements, with element ``i`` = basis index ``inv[i]``."""
    inv = [ring.unit] + [b for b in ring.invertible if b != ring.unit]
    pos = {b: i for i, b in enumerate(inv)}
    table = [[pos[ring.product_index(a, b)] for b in inv] for a in inv]
    return group_from_table(table, name="G"), inv


def gset_types(g: FiniteGroup, d: int) -> list[tuple[Subgroup, ...]]:
    """Multisets of conjugacy-class representatives whose indices sum to ``d``."""
    reps = [cls[0] for cls in conjugacy_classes_of_subgroups(g)]
    idx = [g.order // h.order for h in reps]
    out = []

    def rec(start: int, left: int, acc: list[int]):
        if left == 0:
            out.append(tuple(reps[i] for i in acc))
            return
        for i in range(start, len(reps)):
            if idx[i] <= left:
                rec(i, left - idx[i], acc + [i])

    rec(0, d, [])
    return out


def _action(g: FiniteGroup, hs: tuple[Subgroup, ...]) -> tuple[np.ndarray, list[list[int]]]:
    """``perm[e, x]`` for group element ``e``; also the point sets of each coset space."""
    blocks, cols, off = [], [], 0
    for h in hs:
        cs = coset_space(g, h)
        cols.append(cs.action + off)
        blocks.append(list(range(off, off + len(cs))))
        off += len(cs)
    perm = np.concatenate(cols, axis=1) if cols else np.zeros((g.order, 0), dtype=np.int64)
    return perm, blocks


# --------------------------------------------------------------------------
# the solver for one permutation action


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _hint_classes(ring: FusionRing, group: FiniteGroup, inv: list[int], perm: np.ndarray) -> list[int] | None:
    """Point partition from the orbit lemmas: ``G``-orbits for JL, ``2Γ``-orbits for GLM."""
    if ring.kind == "jl":
        sub = list(range(group.order))
    elif ring.kind == "glm":
        data = ring.meta["glm"]
        pos = {b: i for i, b in enumerate(inv)}
        sub = [pos[t] for t in data.two_gamma.members]
    else:
        return None
    d = perm.shape[1]
    uf = _UnionFind(d)
    for e in sub:
        for x in range(d):
            uf.union(x, int(perm[e, x]))
    return [uf.find(x) for x in range(d)]


@dataclass
class _Problem:
    d: int
    nonin: list[int]
    var_of: np.ndarray            # [len(nonin), d, d] -> var id, or -1 for a forced zero
    ub: list[int]
    eqs: list[tuple]              # (products, const, linear)
    eqs_of: list[list[int]]


def _build_problem(ring: FusionRing, group: FiniteGroup, inv: list[int], perm: np.ndarray,
                   cfg: SearchConfig) -> _Problem | None:
    d = perm.shape[1]
    nonin = list(ring.noninvertible)
    npos = {b: i for i, b in enumerate(nonin)}
    r = len(nonin)
    flat = lambda b, y, x: (b * d + y) * d + x  # noqa: E731
    uf = _UnionFind(r * d * d)
    pinv = np.argsort(perm, axis=1)
    for bi, b in enumerate(nonin):
        bd = npos[int(ring.dual[b])]
        for e, gb in enumerate(inv):
            left = npos[ring.product_index(gb, b)]
            right = npos[ring.product_index(b, gb)]
            for y in range(d):
                for x in range(d):
                    uf.union(flat(left, y, x), flat(bi, int(pinv[e, y]), x))
                    uf.union(flat(right, y, x), flat(bi, y, int(perm[e, x])))
        for y in range(d):
            for x in range(d):
                uf.union(flat(bi, y, x), flat(bd, x, y))
    if cfg.hints:
        cls = _hint_classes(ring, group, inv, perm)
        if cls is not None:
            first = {}
            for x in range(d):
                first.setdefault(cls[x], x)
            for bi in range(r):
                for y in range(d):
                    for x in range(d):
                        uf.union(flat(bi, y, x), flat(bi, first[cls[y]], first[cls[x]]))

    # entry caps from the squared column and row masses
    fixed = np.array([[int(perm[e, x]) == x for x in range(d)] for e in range(group.order)])
    cap = np.full(r * d * d, np.iinfo(np.int64).max, dtype=np.int64)
    for bi, b in enumerate(nonin):
        bd = int(ring.dual[b])
        for prod, axis in ((ring.N[bd, b], "col"), (ring.N[b, bd], "row")):
            if prod[list(ring.noninvertible)].any():
                if cfg.entry_bound is None:
                    raise EntryBoundTooSmall(
                        f"{ring.labels[b]}* {ring.labels[b]} involves non-invertibles; "
                        "no entry cap can be derived, pass entry_bound")
                continue
            mass = np.array([sum(int(prod[inv[e]]) for e in range(group.order) if fixed[e, x])
                             for x in range(d)])
            bound = np.array([math.isqrt(int(m)) for m in mass])
            if cfg.entry_bound is not None and (bound > cfg.entry_bound).any():
                raise EntryBoundTooSmall(
                    f"entry_bound {cfg.entry_bound} is below the derived cap {int(bound.max())} "
                    f"for {ring.labels[b]}; the search would be incomplete")
            for y in range(d):
                for x in range(d):
                    k = flat(bi, y, x)
                    cap[k] = min(cap[k], bound[x] if axis == "col" else bound[y])
    if cfg.entry_bound is not None:
        cap = np.minimum(cap, cfg.entry_bound)

    roots = [uf.find(k) for k in range(r * d * d)]
    root_cap: dict[int, int] = {}
    for k, rt in enumerate(roots):
        root_cap[rt] = min(root_cap.get(rt, cap[k]), int(cap[k]))
    live = sorted(rt for rt, c in root_cap.items() if c > 0)
    vid = {rt: i for i, rt in enumerate(live)}
    var_of = np.array([vid.get(rt, -1) for rt in roots], dtype=np.int64).reshape(r, d, d)
    ub = [root_cap[rt] for rt in live]

    eqs, seen = [], set()
    for ai, a in enumerate(nonin):
        for bi, b in enumerate(nonin):
            nk = ring.N[a, b]
            for y in range(d):
                for x in range(d):
                    prods = []
                    for z in range(d):
                        u, v = int(var_of[ai, y, z]), int(var_of[bi, z, x])
                        if u >= 0 and v >= 0:
                            prods.append((u, v) if u <= v else (v, u))
                    const, lin = 0, {}
                    for k in np.flatnonzero(nk):
                        c = int(nk[k])
                        if k in npos:
                            w = int(var_of[npos[k], y, x])
                            if w >= 0:
                                lin[w] = lin.get(w, 0) + c
                        else:
                            const += c * int(perm[inv.index(int(k)), x] == y)
                    key = (tuple(sorted(prods)), const, tuple(sorted(lin.items())))
                    if key in seen:
                        continue
                    seen.add(key)
                    if not prods and not lin:
                        if const != 0:
                            return None  # infeasible for every choice of unknowns
                        continue
                    eqs.append(key)
    eqs_of: list[list[int]] = [[] for _ in ub]
    for i, (prods, _, lin) in enumerate(eqs):
        for v in {v for p in prods for v in p} | {w for w, _ in lin}:
            eqs_of[v].append(i)
    return _Problem(d, nonin, var_of, ub, eqs, eqs_of)


def _feasible(eq, lo, hi) -> bool:
    prods, const, lin = eq
    llo = lhi = 0
    for u, v in prods:
        llo += lo[u] * lo[v]
        lhi += hi[u] * hi[v]
    rlo = rhi = const
    for w, c in lin:
        rlo += c * lo[w]
        rhi += c * hi[w]
    return llo <= rhi and rlo <= lhi


class _Deadline(Exception):
    pass


def _solve(prob: _Problem, cfg: SearchConfig, deadline: float | None):
    n = len(prob.ub)
    # fill column by column so column-mass equations close early
    order, seen = [], set()
    r, d, _ = prob.var_of.shape
    for x in range(d):
        for b in range(r):
            for y in range(d):
                v = int(prob.var_of[b, y, x])
                if v >= 0 and v not in seen:
                    seen.add(v)
                    order.append(v)
    if cfg.shuffle_seed is not None:
        random.Random(cfg.shuffle_seed).shuffle(order)
    lo = [0] * n
    hi = list(prob.ub)
    counter = [0]

    def rec(k: int):
        if k == n:
            yield list(lo)
            return
        counter[0] += 1
        if deadline is not None and counter[0] % 2048 == 0 and time.monotonic() > deadline:
            raise _Deadline
        v = order[k]
        top = prob.ub[v]
        values = range(top + 1) if cfg.value_order == "ascending" else range(top, -1, -1)
        for val in values:
            lo[v] = hi[v] = val
            if all(_feasible(prob.eqs[i], lo, hi) for i in prob.eqs_of[v]):
                yield from rec(k + 1)
        lo[v], hi[v] = 0, prob.ub[v]

    yield from rec(0)


def _matrices(ring: FusionRing, inv: list[int], perm: np.ndarray, prob: _Problem, vals) -> np.ndarray:
    d = prob.d
    mats = np.zeros((ring.rank, d, d), dtype=np.int64)
    for e, b in enumerate(inv):
        mats[b, perm[e], np.arange(d)] = 1
    vals = np.array(list(vals) + [0], dtype=np.int64)  # index -1 reads the trailing zero
    for bi, b in enumerate(prob.nonin):
        mats[b] = vals[prob.var_of[bi]]
    return mats


def _dedupe(reps: list[NimRep]) -> list[NimRep]:
    reps = sorted(reps, key=lambda m: (m.dim, tuple(m.matrices.ravel().tolist())))
    kept: dict[tuple, list[NimRep]] = {}
    out = []
    for m in reps:
        bucket = kept.setdefault(fingerprint(m), [])
        if any(are_isomorphic(k, m)[0] for k in bucket):
            continue
        bucket.append(m)
        out.append(m)
    return out


def _run_type(ring: FusionRing, hs: tuple[Subgroup, ...], cfg: SearchConfig,
              deadline: float | None) -> tuple[list[np.ndarray], bool]:
    group, inv = invertible_group(ring)
    hs = tuple(Subgroup(h.members, group) for h in hs)
    perm, _ = _action(group, hs)
    prob = _build_problem(ring, group, inv, perm, cfg)
    if prob is None:
        return [], True
    found = []
    complete = True
    try:
        for vals in _solve(prob, cfg, deadline):
            mats = _matrices(ring, inv, perm, prob, vals)
            rep = nimrep_from_matrices(ring, mats)
            if cfg.require_irreducible and not is_irreducible(rep):
                continue
            found.append(rep)
    except _Deadline:
        complete = False
    return [m.matrices for m in _dedupe(found)], complete


def _worker_count(cfg: SearchConfig) -> int:
    if cfg.workers is not None:
        return max(1, cfg.workers)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def enumerate_all(ring: FusionRing, cfg: SearchConfig) -> list[NimRep]:
    """Every NIM-rep of dimension ``≤ cfg.max_dim`` up to isomorphism.

    Results are ordered by dimension, then by the sorted matrix tuple, and
    carry no isomorphic duplicates.  Raises :class:`BudgetExceeded` (with the
    classes found so far) if ``cfg.time_budget`` seconds run out.
    """
    if cfg.max_dim == 0:
        return []
    group, _ = invertible_group(ring)
    tasks = [hs for d in range(1, cfg.max_dim + 1) for hs in gset_types(group, d)]
    deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
    workers = min(_worker_count(cfg), len(tasks)) or 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_type, itertools.repeat(ring), tasks,
                                    itertools.repeat(cfg), itertools.repeat(deadline)))
    else:
        results = []
        for hs in tasks:
            results.append(_run_type(ring, hs, cfg, deadline))
            if not results[-1][1]:
                break
    reps = [nimrep_from_matrices(ring, m) for mats, _ in results for m in mats]
    # different actions never give isomorphic reps, so a sort is all that is left
    reps.sort(key=lambda m: (m.dim, tuple(m.matrices.ravel().tolist())))
    if not all(ok for _, ok in results) or len(results) < len(tasks):
        raise BudgetExceeded(f"time budget of {cfg.time_budget}s exhausted", reps)
    return reps


# --------------------------------------------------------------------------
# comparison with a classifier catalog


@dataclass
class CrossCheckReport:
    matched: list[tuple[int, int]] = field(default_factory=list)
    only_classifier: list[int] = field(default_factory=list)
    only_oracle: list[int] = field(default_factory=list)
    duplicates: list[tuple[int, int]] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def agreement(self) -> bool:
        return not (self.only_classifier or self.only_oracle or self.duplicates)

    def summary(self) -> str:
        if self.agreement:
            head = f"complete agreement, {len(self.matched)} classes"
        else:
            head = (f"DISAGREEMENT: {len(self.matched)} matched, "
                    f"{len(self.only_classifier)} only in classifier, "
                    f"{len(self.only_oracle)} only in oracle, "
                    f"{len(self.duplicates)} classifier duplicates")
        return "\n".join([head] + self.notes)

    def to_json(self) -> dict:
        return {
            "matched": [list(p) for p in self.matched],
            "only_classifier": list(self.only_classifier),
            "only_oracle": list(self.only_oracle),
            "duplicates": [list(p) for p in self.duplicates],
            "counts": self.counts,
            "agreement": self.agreement,
            "notes": list(self.notes),
        }


def cross_check(catalog: list[NimRep], oracle_out: list[NimRep],
                claimed_counts: dict[str, int] | None = None) -> CrossCheckReport:
    """Match classifier reps against oracle reps by isomorphism.

    ``claimed_counts`` maps a description to a claimed number of classes; each is
    compared against the oracle count of the same name in ``counts``.
    """
    rep = CrossCheckReport()
    keys = [fingerprint(m) for m in oracle_out]
    used: dict[int, int] = {}
    for ci, m in enumerate(catalog):
        fp = fingerprint(m)
        hit = next((oi for oi, o in enumerate(oracle_out)
                    if keys[oi] == fp and are_isomorphic(m, o)[0]), None)
        if hit is None:
            rep.only_classifier.append(ci)
        elif hit in used:
            rep.duplicates.append((ci, hit))
        else:
            used[hit] = ci
            rep.matched.append((ci, hit))
    rep.only_oracle = [oi for oi in range(len(oracle_out)) if oi not in used]
    by_dim: dict[int, int] = {}
    for o in oracle_out:
        by_dim[o.dim] = by_dim.get(o.dim, 0) + 1
    rep.counts = {"classifier": len(catalog), "oracle": len(oracle_out), "matched": len(rep.matched),
                  "oracle_by_dim": {str(k): v for k, v in sorted(by_dim.items())}}
    for name, claimed in (claimed_counts or {}).items():
        rep.counts.setdefault("claims", {})[name] = claimed
        verdict = "matches" if claimed == len(oracle_out) else "does not match"
        rep.notes.append(f"claimed count {claimed} ({name}) {verdict} the oracle count {len(oracle_out)}")
    return rep
