"""Run the oracle against a saved catalog and summarise the outcome."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .catalog import catalog_reps, catalog_ring, orbit_profile
from .oracle import BudgetExceeded, CrossCheckReport, SearchConfig, cross_check, enumerate_all


@dataclass
class ProfileRow:
    profile: str
    oracle: int
    catalog: int
    theorem_classes: int | None = None
    claims: dict[str, int] = field(default_factory=dict)

    def verdicts(self) -> list[str]:
        out = []
        for name, n in self.claims.items():
            out.append(f"{name} = {n}: {'matches' if n == self.oracle else 'does not match'} "
                       f"the oracle count {self.oracle}")
        return out


@dataclass
class VerifyResult:
    report: CrossCheckReport
    profiles: list[ProfileRow]
    complete: bool
    seconds: float
    max_dim: int

    @property
    def agreement(self) -> bool:
        return self.complete and self.report.agreement

    def lines(self) -> list[str]:
        out = [f"oracle up to dim {self.max_dim}: {self.report.counts.get('oracle', 0)} classes "
               f"in {self.seconds:.2f}s" + ("" if self.complete else " (INCOMPLETE: budget exhausted)")]
        out.append(self.report.summary())
        for row in self.profiles:
            head = f"  orbits/stabilizers {row.profile}: oracle {row.oracle}, catalog {row.catalog}"
            if row.theorem_classes is not None:
                head += f", multiset relation {row.theorem_classes}"
            out.append(head)
            out.extend("    " + v for v in row.verdicts())
            if row.theorem_classes is not None and row.theorem_classes != row.oracle:
                out.append(f"    the multiset relation count {row.theorem_classes} does not match "
                           f"the oracle count {row.oracle}")
        return out

    def to_json(self) -> dict:
        return {
            "max_dim": self.max_dim,
            "complete": self.complete,
            "agreement": self.agreement,
            "cross_check": self.report.to_json(),
            "profiles": [{"profile": r.profile, "oracle": r.oracle, "catalog": r.catalog,
                          "theorem_classes": r.theorem_classes, "claims": r.claims}
                         for r in self.profiles],
        }


def verify_catalog(catalog: dict, cfg: SearchConfig,
                   claims: dict[str, dict[str, int]] | None = None) -> VerifyResult:
    """Cross-check ``catalog`` against the oracle up to ``cfg.max_dim``.

    ``claims`` maps an orbit profile (see :func:`orbit_profile`) to named
    class counts that the report compares against the oracle.
    """
    ring = catalog_ring(catalog)
    t0 = time.monotonic()
    complete = True
    try:
        found = enumerate_all(ring, cfg)
    except BudgetExceeded as exc:
        found, complete = exc.partial, False
    seconds = time.monotonic() - t0
    pairs = catalog_reps(catalog, cfg.max_dim)
    reps = [m for _, m in pairs]
    report = cross_check(reps, found)
    # translate catalog positions into class ids
    ids = [cid for cid, _ in pairs]
    report.matched = [(ids[c], o) for c, o in report.matched]
    report.only_classifier = [ids[c] for c in report.only_classifier]
    report.duplicates = [(ids[c], o) for c, o in report.duplicates]

    by_id = {e["class_id"]: e for e in catalog["entries"]}
    oracle_prof: dict[str, int] = {}
    for m in found:
        p = orbit_profile(m)
        oracle_prof[p] = oracle_prof.get(p, 0) + 1
    cat_prof: dict[str, list[int]] = {}
    for cid, m in pairs:
        cat_prof.setdefault(orbit_profile(m), []).append(cid)
    rows = []
    claims = claims or {}
    for p in sorted(set(oracle_prof) | set(cat_prof) | set(claims)):
        members = cat_prof.get(p, [])
        theorem = None
        if catalog.get("classifier") == "jl":
            theorem = len({tuple(by_id[c]["theorem_class"]) for c in members})
        rows.append(ProfileRow(p, oracle_prof.get(p, 0), len(members), theorem, dict(claims.get(p, {}))))
    return VerifyResult(report, rows, complete, seconds, cfg.max_dim)
