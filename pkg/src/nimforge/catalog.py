"""Catalog files: classified NIM-reps as plain JSON.

A catalog is a dict with keys ``format``, ``version``, ``generated``,
``ring``, ``classifier``, ``entries`` and optional ``relations`` and
``cross_check``.  Entries carry their class id, parameters, matrices,
algebra objects and admissibility witness.  :func:`dumps` is canonical, so
``dumps(loads(dumps(c))) == dumps(c)``.
"""

from __future__ import annotations

import datetime as _dt
import json
from pathlib import Path

from . import __version__
from .fusion import FusionRing, ring_from_descriptor
from .glm import (
    GlmCatalog,
    RELABELINGS,
    glm_algebra_check,
    glm_build,
    glm_layout,
    glm_parameters,
    glm_relation_report,
)
from .jl import JlCatalog, jl_algebra_objects, orbit_blocks
from .nimrep import NimRep, algebra_object_at, decompose_orbits, is_admissible, nimrep_from_matrices

FORMAT = "nimforge-catalog/1"
EPOCH = "1970-01-01T00:00:00+00:00"


class CatalogError(ValueError):
    pass


class UnknownEntry(CatalogError):
    pass


def _timestamp(reproducible: bool) -> str:
    if reproducible:
        return EPOCH
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def _matrices(rep: NimRep) -> dict:
    return {lab: rep.matrices[i].tolist() for i, lab in enumerate(rep.ring.labels)}


def _admissibility(rep: NimRep) -> dict:
    ok, witness = is_admissible(rep)
    strict_ok, strict_witness = is_admissible(rep, strict=True)
    return {"admissible": ok, "witness": witness, "strict": strict_ok, "strict_witness": strict_witness}


def _header(ring: FusionRing, classifier: str, reproducible: bool) -> dict:
    return {"format": FORMAT, "version": __version__, "generated": _timestamp(reproducible),
            "ring": ring.descriptor(), "classifier": classifier}


def jl_catalog_json(cat: JlCatalog, reproducible: bool = False) -> dict:
    g = cat.group
    order = sorted(range(len(cat.entries)), key=lambda i: (cat.entries[i].params.m, cat.entries[i].dim, i))
    entries = []
    for cid, i in enumerate(order):
        e = cat.entries[i]
        rep = e.rep
        closed = jl_algebra_objects(e.params, cat.ring)
        readings = [[str(algebra_object_at(rep, x)) for x in blk] for blk in orbit_blocks(e.params)]
        agree = all(r == str(closed[j]) for j, blk in enumerate(readings) for r in blk)
        params = e.params.to_json()
        params["subgroup_labels"] = [h.label() for h in e.params.subgroups]
        entries.append({
            "class_id": cid,
            "dim": rep.dim,
            "orbit_count": e.params.m,
            "params": params,
            "theorem_class": list(e.theorem_class),
            "members": len(e.members),
            "labels": list(rep.labels),
            "matrices": _matrices(rep),
            "algebra_objects": {"closed_form": [str(a) for a in closed],
                                "self_loop_readings": readings, "agree": agree},
            "admissibility": _admissibility(rep),
        })
    theorem: dict[str, list[int]] = {}
    for ent in entries:
        key = f"m={ent['orbit_count']}:" + ",".join(map(str, ent["theorem_class"]))
        theorem.setdefault(key, []).append(ent["class_id"])
    split = {k: v for k, v in theorem.items() if len(v) > 1}
    out = _header(cat.ring, "jl", reproducible)
    out["entries"] = entries
    out["relations"] = {
        "keyed_by": "matrix isomorphism",
        "matrix_classes": len(entries),
        "theorem_classes": len(theorem),
        "split_theorem_classes": split,
        "group": g.to_json(),
    }
    return out


def glm_catalog_json(cat: GlmCatalog, reproducible: bool = False, relation_readings: bool = True) -> dict:
    order = sorted(range(len(cat.entries)),
                   key=lambda i: (cat.entries[i].params.orbit_count, cat.entries[i].dim, i))
    entries = []
    for cid, i in enumerate(order):
        e = cat.entries[i]
        rep, p = e.rep, e.params
        check = glm_algebra_check(p, rep)
        layout = glm_layout(p.sigma())
        params = p.to_json()
        params["orbit_pairs"] = [list(t) for t in layout.orbit_pairs()]
        params["subgroup_labels"] = [h.label() for h in p.subgroups]
        alg = {"closed_form": [str(a) for a in check.closed_form],
               "self_loop_readings": [str(a) for a in check.readings],
               "agree": not check.mismatched_points}
        if check.aggregate is not None:
            alg["aggregate"] = str(check.aggregate)
            alg["aggregate_matches_some_point"] = check.aggregate_matches_some_point
        entries.append({
            "class_id": cid,
            "dim": rep.dim,
            "orbit_count": p.orbit_count,
            "params": params,
            "members": len(e.members),
            "labels": list(rep.labels),
            "matrices": _matrices(rep),
            "algebra_objects": alg,
            "admissibility": _admissibility(rep),
        })
    out = _header(cat.ring, "glm", reproducible)
    out["relabeling"] = cat.relabeling
    if cat.ring.meta.get("allow_odd") and cat.gamma.order % 2:
        out["scope"] = "odd order: outside the even-order setting, the ring is degenerate"
    out["entries"] = entries
    if relation_readings:
        params = glm_parameters(cat.gamma, cat.delta, allow_odd=cat.ring.meta.get("allow_odd", False))
        reps = [glm_build(q, cat.ring) for q in params]
        rel = {}
        for reading in RELABELINGS:
            r = glm_relation_report(params, reps, reading)
            rel[reading] = {"pairs": r.pairs, "agree": r.agree, "false_merge": len(r.false_merge),
                            "false_split": len(r.false_split), "matches_isomorphism": r.matches}
        out["relations"] = {"parameter_sets": len(params), "readings": rel}
    return out


def dumps(catalog: dict) -> str:
    return json.dumps(catalog, ensure_ascii=False, indent=1, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    data = json.loads(text)
    if not isinstance(data, dict) or data.get("format") != FORMAT:
        raise CatalogError("not a nimforge catalog")
    return data


def save(catalog: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(catalog), encoding="utf-8")


def load(path: str | Path) -> dict:
    return loads(Path(path).read_text(encoding="utf-8"))


def catalog_ring(catalog: dict) -> FusionRing:
    return ring_from_descriptor(catalog["ring"])


def entry(catalog: dict, class_id: int) -> dict:
    for e in catalog["entries"]:
        if e["class_id"] == class_id:
            return e
    raise UnknownEntry(f"no entry with class id {class_id}")


def entry_rep(catalog: dict, e: dict | int, ring: FusionRing | None = None) -> NimRep:
    if isinstance(e, int):
        e = entry(catalog, e)
    ring = catalog_ring(catalog) if ring is None else ring
    return nimrep_from_matrices(ring, e["matrices"], e["labels"])


def catalog_reps(catalog: dict, max_dim: int | None = None) -> list[tuple[int, NimRep]]:
    ring = catalog_ring(catalog)
    return [(e["class_id"], entry_rep(catalog, e, ring)) for e in catalog["entries"]
            if max_dim is None or e["dim"] <= max_dim]


def orbit_profile(rep: NimRep) -> str:
    """``"k:s1,s2,..."``: orbit count and sorted stabilizer orders of the invertible action."""
    dec = decompose_orbits(rep)
    return f"{len(dec.orbits)}:" + ",".join(str(len(s)) for s in sorted(dec.stabilizers, key=len))


def check_invariants(catalog: dict) -> list[str]:
    """Structural checks: contiguous class ids and canonical order."""
    problems = []
    ids = [e["class_id"] for e in catalog["entries"]]
    if ids != list(range(len(ids))):
        problems.append("class ids are not contiguous from 0")
    keys = [(e["orbit_count"], e["dim"]) for e in catalog["entries"]]
    if keys != sorted(keys):
        problems.append("entries are not sorted by (orbit count, dim)")
    return problems
