"""Command-line front end: ``analyze``, ``verify`` and ``catalogue``.

Exit codes: 0 success, 1 some claim refuted, 2 operational error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from pmaxclass import catalogue
from pmaxclass.claims import REFUTED, REGISTRY, SKIPPED, resolve_claims, run_suite
from pmaxclass.core import GroupError, GroupSpec, SpecError, build_group, prime_power
from pmaxclass.invariants import (
    center,
    derived_series,
    exponent,
    generator_rank,
    lower_central_series,
    lower_central_term,
    maximal_subgroups,
    upper_central_series,
)
from pmaxclass.maxclass import max_class_report, subgroup_json

LIST_LIMIT = 20
EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2


def parse_group_file(path: str | Path) -> GroupSpec:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return GroupSpec.from_json(obj)
    except SpecError as exc:
        raise SpecError(f"{path}: {exc}") from None


def parse_group_arg(arg: str) -> GroupSpec:
    """``family:name,k=v,...`` or a path to a group JSON file."""
    if not arg.startswith("family:"):
        return parse_group_file(arg)
    name, *pairs = arg[len("family:"):].split(",")
    params: dict[str, int] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise SpecError(f"expected key=value, got {pair!r}")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise SpecError(f"parameter {key.strip()!r} must be an integer, got {value!r}") from None
    return GroupSpec.from_json({"kind": "family", "name": name.strip(), "params": params})


def _primes(text: str) -> list[int]:
    try:
        ps = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise SpecError(f"--p expects a comma list of primes, got {text!r}") from None
    for p in ps:
        pp = prime_power(p)
        if pp is None or pp[1] != 1:
            raise SpecError(f"{p} is not prime")
    return ps


# ---------------------------------------------------------------- analyze


def analyze_payload(G, include_p2: bool) -> dict[str, Any]:
    report = max_class_report(G, include_p2)
    inv: dict[str, Any] = {
        "order": G.order,
        "exponent": exponent(G),
        "center_order": center(G).size,
        "derived_index": lower_central_term(G, 2).index,
        "lower_central": lower_central_series(G).sizes,
        "upper_central": upper_central_series(G).sizes,
        "derived": derived_series(G).sizes,
    }
    if G.prime_power is not None:
        inv["d"] = generator_rank(G)
        inv["maximal_subgroups"] = [subgroup_json(M) for M in maximal_subgroups(G)]
    return {"schema": 1, "report": report.to_json(), "invariants": inv}


def _analyze_text(G, payload: dict[str, Any]) -> str:
    rep, inv = payload["report"], payload["invariants"]
    lines = [
        f"group: {G.name}",
        f"order: {inv['order']}  p: {rep['p']}  m: {rep['m']}",
        f"class: {rep['class']}  exponent: {inv['exponent']}  d(G): {inv.get('d', 'n/a')}",
        f"|Z(G)|: {inv['center_order']}  |G:G'|: {inv['derived_index']}",
        f"lower central sizes: {inv['lower_central']}",
        f"upper central sizes: {inv['upper_central']}",
        f"derived series sizes: {inv['derived']}",
        f"sections |K_i:K_i+1|: {rep['sections']}",
        f"maximal class: {'yes' if rep['is_maximal_class'] else 'no'}",
    ]
    if "maximal_subgroups" in inv:
        lines.append(f"maximal subgroups ({len(inv['maximal_subgroups'])}):")
        lines += ["  " + _fmt(s) for s in _truncate_json(inv["maximal_subgroups"])]
    if rep["fundamental"]:
        lines.append(f"fundamental subgroup G_1: {_fmt(rep['fundamental'])}")
        lines.append("two-step centralizers:")
        lines += [f"  M_{i}: {_fmt(s)}" for i, s in enumerate(rep["two_step"], start=2)][:LIST_LIMIT]
    if rep["gamma1"] is not None:
        lines.append("maximal subgroups by role:")
        lines += ["  " + _fmt(s) + f"  [{s['role']}]" for s in _truncate_json(rep["gamma1"])]
    return "\n".join(lines)


def _truncate_json(items: list[dict]) -> list[dict]:
    if len(items) <= LIST_LIMIT:
        return items
    return items[:LIST_LIMIT] + [{"more": len(items) - LIST_LIMIT, "total": len(items)}]


def _fmt(s: dict) -> str:
    if "more" in s:
        return f"... ({s['more']} more, {s['total']} total)"
    return f"order {s['order']} = <{', '.join(s['generators']) or '1'}>"


def cmd_analyze(args) -> int:
    G = build_group(parse_group_arg(args.group))
    payload = analyze_payload(G, args.include_p2)
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(_analyze_text(G, payload))
    return EXIT_OK


# ---------------------------------------------------------------- verify

_MARK = {"holds": "+", "vacuous": ".", "refuted": "X", "skipped": "s"}


def _verify_text(run) -> str:
    lines = ["groups:"]
    lines += [f"  {i:3d}  {name}" for i, name in enumerate(run.groups)]
    lines.append("matrix (+ holds, . vacuous, X refuted, s skipped):")
    width = max(len(c) for c in run.claims)
    n = len(run.groups)
    for ci, cid in enumerate(run.claims):
        row = run.results[ci * n:(ci + 1) * n]
        lines.append(f"  {cid:<{width}}  " + "".join(_MARK[r.status] for r in row))
    bad = [r for r in run.results if r.status == REFUTED]
    if bad:
        lines.append("refutations:")
        for r in bad:
            lines.append(f"  {r.claim_id} on {r.group}: {r.detail}  witness={json.dumps(r.witness, sort_keys=True)}")
    skipped = sum(1 for r in run.results if r.status == SKIPPED)
    if skipped:
        lines.append(f"{skipped} cells skipped (over budget)")
    lines.append("summary: " + "  ".join(f"{k}={v}" for k, v in run.summary.items()))
    lines.append(f"wall time: {run.wall_time:.2f}s")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    claim_ids = resolve_claims(args.claims)
    if args.group:
        groups = [build_group(parse_group_arg(g)) for g in args.group]
    else:
        groups = []
        for p in _primes(args.p):
            groups += catalogue.census(p, args.max_order)
    run = run_suite(claim_ids, groups, args.include_p2)
    if args.json:
        payload = run.to_json()
        if not args.no_timing:
            payload["timing"] = {
                "wall_time": round(run.wall_time, 3),
                "cells": [{"claim": r.claim_id, "group": r.group, "elapsed": round(r.elapsed, 4)}
                          for r in run.results],
            }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(_verify_text(run))
    return EXIT_OK if run.ok else EXIT_REFUTED


# ---------------------------------------------------------------- catalogue


def cmd_catalogue(args) -> int:
    if args.p:
        entries = [d.to_json() | {"id": d.ident, "order": catalogue.family_order(d)}
                   for p in _primes(args.p) for d in catalogue.census_descriptors(p, args.max_order)]
    else:
        entries = [{"name": name, "params": list(catalogue._PARAMS[name])} for name in catalogue.FAMILY_NAMES]
    if args.json:
        print(json.dumps({"schema": 1, "families": entries}, indent=2, sort_keys=True))
    elif args.p:
        for e in entries:
            print(f"{e['order']:>6}  {e['id']}")
    else:
        for e in entries:
            print(f"{e['name']}({', '.join(e['params'])})")
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pmaxclass", description="p-group invariants and maximal-class claim checks")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="report invariants of one group")
    a.add_argument("--group", required=True, help="path to a group JSON file or family:name,k=v,...")
    a.add_argument("--json", action="store_true")
    a.add_argument("--include-p2", action="store_true", help="count groups of order p^2 as maximal class")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run claims over the catalogue census")
    v.add_argument("--claims", default="all", help="'all' or comma list of ids: " + ",".join(REGISTRY))
    v.add_argument("--p", default="2,3", help="comma list of primes for the census")
    v.add_argument("--max-order", type=int, default=81)
    v.add_argument("--group", action="append", help="check these groups instead of the census (repeatable)")
    v.add_argument("--json", action="store_true")
    v.add_argument("--no-timing", action="store_true", help="omit the timing block from JSON output")
    v.add_argument("--include-p2", action="store_true", help="count subgroups/quotients of order p^2 as maximal class")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalogue", help="list family descriptors")
    c.add_argument("--p", help="list the census for these primes instead")
    c.add_argument("--max-order", type=int, default=81)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_catalogue)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (GroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
