"""``nimforge`` command line.

Exit codes: 0 success or agreement, 1 mathematical disagreement (or an axiom
failure), 2 resource limit, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .catalog import (
    CatalogError,
    catalog_ring,
    dumps,
    entry,
    entry_rep,
    glm_catalog_json,
    jl_catalog_json,
    load,
    save,
)
from .fusion import RingError, glm_ring, jl_ring, ring_to_json, verify_axioms
from .glm import RELABELINGS, ConditionViolated as GlmConditionViolated, glm_enumerate
from .groups import FiniteGroup, GroupError, group_from_json, parse_group
from .jl import ConditionViolated as JlConditionViolated, jl_enumerate
from .nimrep import NimRepError, nim_graph, nim_orbit_graph, to_dot
from .oracle import EntryBoundTooSmall, SearchConfig
from .verification import verify_catalog

EXIT_OK, EXIT_DISAGREE, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3

BAD_INPUT = (GroupError, RingError, GlmConditionViolated, JlConditionViolated, CatalogError,
             NimRepError, EntryBoundTooSmall, OSError, ValueError, KeyError)


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# argument helpers


def _group(args) -> FiniteGroup:
    if args.table:
        data = json.loads(Path(args.table).read_text(encoding="utf-8"))
        if isinstance(data, list):
            data = {"table": data}
        return group_from_json(data)
    if not args.group:
        raise UsageError("one of --group or --table is required")
    return parse_group(args.group)


def parse_element(g: FiniteGroup, text: str) -> int:
    """``"(1,0)"``, ``"1,0"`` or a plain index."""
    s = text.strip()
    nums = [int(t) for t in re.findall(r"-?\d+", s)]
    if g.factors is not None and ("(" in s or "," in s or len(g.factors) == 1):
        if len(nums) == 1 and len(g.factors) > 1 and "(" not in s:
            return _index(g, nums[0])
        return g.element_index(nums)
    if len(nums) != 1:
        raise UsageError(f"cannot read a group element from {text!r}")
    return _index(g, nums[0])


def _index(g: FiniteGroup, i: int) -> int:
    if not 0 <= i < g.order:
        raise UsageError(f"element index {i} out of range for a group of order {g.order}")
    return i


def _ring(args):
    g = _group(args)
    if args.kind == "jl":
        if args.p is None:
            raise UsageError("--p is required for jl rings")
        return g, jl_ring(g, args.p)
    delta = parse_element(g, args.delta if args.delta is not None else "0")
    return g, glm_ring(g, delta, allow_odd=args.allow_odd)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _add_ring_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("kind", choices=["jl", "glm"])
    src = p.add_mutually_exclusive_group()
    src.add_argument("--group", help='abelian shorthand such as "Z2xZ2"')
    src.add_argument("--table", help="JSON file holding a multiplication table")
    p.add_argument("--p", type=int, help="number of non-invertibles plus one (jl)")
    p.add_argument("--delta", help='element of the group, e.g. "(1,0)" (glm)')
    p.add_argument("--allow-odd", action="store_true", help="permit odd-order groups (glm)")


# --------------------------------------------------------------------------
# commands


def cmd_ring(args) -> int:
    _, ring = _ring(args)
    report = verify_axioms(ring)
    payload = {"descriptor": ring.descriptor(), "ring": ring_to_json(ring)}
    _write(json.dumps(payload, ensure_ascii=False, indent=1) + "\n", args.out)
    print(report, file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_DISAGREE


def _summary(catalog: dict) -> str:
    counts: dict[tuple[int, int], int] = {}
    for e in catalog["entries"]:
        key = (e["orbit_count"], e["dim"])
        counts[key] = counts.get(key, 0) + 1
    lines = [f"{len(catalog['entries'])} classes"]
    for (k, d), n in sorted(counts.items()):
        lines.append(f"  orbits={k} dim={d}: {n}")
    rel = catalog.get("relations", {})
    if catalog["classifier"] == "jl" and rel.get("split_theorem_classes"):
        lines.append(f"  multiset relation: {rel['theorem_classes']} classes "
                     f"(catalog keyed by matrix isomorphism: {rel['matrix_classes']})")
    if catalog["classifier"] == "glm":
        lines.append(f"  relabeling: {catalog['relabeling']}")
        for name, r in rel.get("readings", {}).items():
            flag = "matches" if r["matches_isomorphism"] else "differs from"
            lines.append(f"  reading {name} {flag} matrix isomorphism "
                         f"(false merges {r['false_merge']}, false splits {r['false_split']})")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    g, ring = _ring(args)
    if args.kind == "jl":
        cat = jl_enumerate(g, args.p, args.orbits)
        data = jl_catalog_json(cat, args.reproducible)
    else:
        cat = glm_enumerate(g, ring.meta["delta"], args.orbits, args.relabeling, args.allow_odd)
        data = glm_catalog_json(cat, args.reproducible)
    if args.out:
        save(data, args.out)
    if args.summary:
        sys.stdout.write(_summary(data))
    elif not args.out:
        sys.stdout.write(dumps(data))
    if args.dot_dir:
        out = Path(args.dot_dir)
        out.mkdir(parents=True, exist_ok=True)
        ring = catalog_ring(data)
        for e in data["entries"]:
            rep = entry_rep(data, e, ring)
            name = f"entry{e['class_id']}"
            (out / f"{name}.dot").write_text(to_dot(nim_graph(rep), name), encoding="utf-8")
            (out / f"{name}_orbits.dot").write_text(to_dot(nim_orbit_graph(rep), name), encoding="utf-8")
    return EXIT_OK


def cmd_graph(args) -> int:
    data = load(args.catalog)
    rep = entry_rep(data, args.entry)
    name = f"entry{args.entry}"
    graph = nim_orbit_graph(rep) if args.orbit_graph else nim_graph(rep)
    _write(to_dot(graph, name, include_unit=args.include_unit, unit=rep.ring.unit), args.out)
    return EXIT_OK


def _claims(items: list[str]) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for item in items or []:
        m = re.fullmatch(r"(\d+:[\d,]+)=(\d+)(?:@(.+))?", item.strip())
        if not m:
            raise UsageError(f"cannot read claim {item!r}; expected PROFILE=COUNT[@NAME], e.g. 3:2,2,2=8")
        name = m.group(3) or f"claim {m.group(2)}"
        out.setdefault(m.group(1), {})[name] = int(m.group(2))
    return out


def cmd_verify(args) -> int:
    data = load(args.catalog)
    cfg = SearchConfig(max_dim=args.max_dim, entry_bound=args.entry_bound, hints=args.hints,
                       time_budget=args.time_budget, shuffle_seed=args.shuffle_seed)
    res = verify_catalog(data, cfg, _claims(args.claim))
    print("\n".join(res.lines()))
    if args.out:
        Path(args.out).write_text(json.dumps(res.to_json(), indent=1) + "\n", encoding="utf-8")
    if not res.complete:
        return EXIT_BUDGET
    return EXIT_OK if res.agreement else EXIT_DISAGREE


def cmd_algebras(args) -> int:
    data = load(args.catalog)
    entries = [entry(data, args.entry)] if args.entry is not None else data["entries"]
    for e in entries:
        alg = e["algebra_objects"]
        print(f"entry {e['class_id']} (orbits={e['orbit_count']}, dim={e['dim']}): "
              f"agreement {'yes' if alg['agree'] else 'NO'}")
        for i, a in enumerate(alg["closed_form"]):
            print(f"  closed form [{i + 1}]: {a}")
        readings = alg["self_loop_readings"]
        flat = [r for blk in readings for r in blk] if readings and isinstance(readings[0], list) else readings
        for lab, r in zip(e["labels"], flat):
            print(f"  self loops at {lab}: {r}")
        if "aggregate" in alg:
            flag = "matches" if alg["aggregate_matches_some_point"] else "matches no"
            print(f"  summed over 2Γ-orbits: {alg['aggregate']} ({flag} single-point reading)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nimforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"nimforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ring", help="build a fusion ring and check its axioms")
    _add_ring_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("classify", help="enumerate irreducible NIM-reps into a catalog")
    _add_ring_args(p)
    p.add_argument("--orbits", type=int, help="restrict to this many orbits of the invertibles")
    p.add_argument("--relabeling", choices=RELABELINGS, default="gamma_set",
                   help="which identifications of 2Γ-orbits count as the same class (glm)")
    p.add_argument("--summary", action="store_true", help="print counts by (orbit count, dim)")
    p.add_argument("--out", help="catalog file to write")
    p.add_argument("--reproducible", action="store_true", help="zero the timestamp")
    p.add_argument("--dot-dir", help="also write NIM-graph and orbit-graph DOT files here")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("graph", help="export a catalog entry as DOT")
    p.add_argument("--catalog", required=True)
    p.add_argument("--entry", type=int, required=True)
    p.add_argument("--orbit-graph", action="store_true", help="contract invertible edges")
    p.add_argument("--include-unit", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("verify", help="cross-check a catalog against the brute-force oracle")
    p.add_argument("--catalog", required=True)
    p.add_argument("--max-dim", type=int, required=True)
    hint = p.add_mutually_exclusive_group()
    hint.add_argument("--hints", dest="hints", action="store_true", help="use the orbit lemmas")
    hint.add_argument("--no-hints", dest="hints", action="store_false", help="fully independent search")
    p.set_defaults(hints=False)
    p.add_argument("--time-budget", type=float)
    p.add_argument("--entry-bound", type=int)
    p.add_argument("--shuffle-seed", type=int, help="search the unknowns in a shuffled order")
    p.add_argument("--claim", action="append",
                   help="PROFILE=COUNT[@NAME]: compare a stated count, e.g. 3:2,2,2=8@example")
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("algebras", help="closed-form algebra objects and self-loop readings")
    p.add_argument("--catalog", required=True)
    p.add_argument("--entry", type=int)
    p.set_defaults(func=cmd_algebras)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BAD_INPUT as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
