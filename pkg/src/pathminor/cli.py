"""Batch command line interface over JSON graph documents.

Exit codes: 0 on success (and on verification match), 1 when a
verification or audit reports a mismatch, 2 on any input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formula, oracles
from .families import EnumerationLimitError, cyclic_core, elementary_cycles, flows
from .graph import (
    GraphError,
    SourceSinkSpec,
    SpecError,
    WalkError,
    check_spec,
    parse_query,
)
from .involution import InvolutionError, cancellation_audit
from .poly import render_monomial


def _load(args) -> tuple:
    with open(args.graph, encoding="utf-8") as fh:
        g, embedded = parse_query(fh.read())
    spec = embedded
    sources = getattr(args, "sources", None)
    sinks = getattr(args, "sinks", None)
    if sources is not None or sinks is not None:
        if sources is None or sinks is None:
            raise SpecError("--sources and --sinks must be given together")
        spec = SourceSinkSpec(_split(sources), _split(sinks))
        check_spec(g, spec)
    return g, spec


def _split(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _require_spec(spec) -> SourceSinkSpec:
    if spec is None:
        raise SpecError(
            "this command needs --sources/--sinks "
            "(or 'sources'/'sinks' in the graph document)"
        )
    return spec


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _minor_lines(result: formula.RationalMinor) -> list[str]:
    canceled = (
        ", ".join(str(i) for i in result.canceled_components) or "none"
    )
    return [
        f"raw:      {result.raw()}",
        f"reduced:  {result.reduced()}",
        f"canceled components: {canceled}",
    ]


def cmd_entry(args) -> int:
    g, spec = _load(args)
    spec = _require_spec(spec)
    if spec.k != 1:
        raise SpecError("entry takes exactly one source and one sink")
    result = formula.entry(g, spec.sources[0], spec.sinks[0])
    _emit(args, result.to_dict(), _minor_lines(result))
    return 0


def cmd_minor(args) -> int:
    g, spec = _load(args)
    result = formula.minor(g, _require_spec(spec))
    _emit(args, result.to_dict(), _minor_lines(result))
    return 0


def cmd_matrix(args) -> int:
    g, _ = _load(args)
    rows = []
    lines = []
    for tail in g.vertices:
        row = []
        for head in g.vertices:
            reduced = str(formula.entry(g, tail, head).reduced())
            row.append(reduced)
            lines.append(f"m[{tail}][{head}] = {reduced}")
        rows.append(row)
    _emit(args, {"vertices": list(g.vertices), "entries": rows}, lines)
    return 0


def cmd_flows(args) -> int:
    g, spec = _load(args)
    spec = _require_spec(spec)
    found = flows(g, spec)
    payload = []
    lines = [f"{len(found)} flows"]
    for fl in found:
        paths = [
            {"start": p.start, "edges": list(p.edges)} for p in fl.system.paths
        ]
        payload.append(
            {
                "sign": fl.sign,
                "weight": render_monomial(fl.weight),
                "permutation": list(fl.system.permutation),
                "paths": paths,
                "cycles": [list(c.edges) for c in fl.cycles.cycles],
            }
        )
        path_text = "; ".join(
            f"{p.start}:{','.join(p.edges) or '(trivial)'}"
            for p in fl.system.paths
        )
        cycle_text = (
            " ".join(",".join(c.edges) for c in fl.cycles.cycles) or "none"
        )
        lines.append(
            f"sign={fl.sign:+d} weight={render_monomial(fl.weight)} "
            f"paths=[{path_text}] cycles=[{cycle_text}]"
        )
    _emit(args, {"flows": payload}, lines)
    return 0


def cmd_cycles(args) -> int:
    g, _ = _load(args)
    found = elementary_cycles(g)
    payload = [
        {
            "edges": list(c.edges),
            "vertices": list(c.vertices),
            "weight": render_monomial(c.weight),
        }
        for c in found
    ]
    lines = [f"{len(found)} elementary cycles"]
    lines.extend(
        f"{','.join(c.edges)} (vertices {','.join(c.vertices)})"
        for c in found
    )
    _emit(args, {"cycles": payload}, lines)
    return 0


def cmd_denominator(args) -> int:
    g, _ = _load(args)
    total = formula.denominator(g)
    factors = formula.component_factors(g)
    core = cyclic_core(g)
    payload = {
        "denominator": str(total),
        "factors": [str(f) for f in factors],
        "components": [list(comp) for comp in core.components],
    }
    lines = [f"denominator: {total}"]
    for idx, (factor, comp) in enumerate(zip(factors, core.components)):
        lines.append(f"factor[{idx}]: {factor}  (edges {','.join(comp)})")
    _emit(args, payload, lines)
    return 0


def cmd_verify(args) -> int:
    g, spec = _load(args)
    spec = _require_spec(spec)
    result = formula.minor(g, spec)
    series = oracles.verify_minor_series(
        g, spec, args.order, minor_result=result
    )
    mismatches = 0
    for seed in range(args.seeds):
        numeric = oracles.verify_minor_numeric(
            g, spec, seed=seed, minor_result=result
        )
        if not numeric.matched:
            mismatches += 1
    payload = {
        "series": series.to_dict(),
        "numeric": {
            "status": "match" if mismatches == 0 else "mismatch",
            "checked": args.seeds,
            "mismatches": mismatches,
        },
    }
    lines = [
        f"series: {series.status} (order {series.order})",
        f"numeric: {args.seeds - mismatches}/{args.seeds} match",
    ]
    _emit(args, payload, lines)
    return 0 if series.matched and mismatches == 0 else 1


def cmd_audit(args) -> int:
    g, spec = _load(args)
    spec = _require_spec(spec)
    report = cancellation_audit(g, spec, args.degree)
    lines = [
        f"pairs={report.pair_count} flows={report.flow_count} "
        f"orbits={report.orbit_count}",
    ]
    for d, pair_sum, flow_sum in report.degree_sums:
        mark = "ok" if pair_sum == flow_sum else "MISMATCH"
        lines.append(f"degree {d}: sum={pair_sum} flows={flow_sum} [{mark}]")
    lines.append(f"status: {'pass' if report.passed else 'fail'}")
    _emit(args, report.to_dict(), lines)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathminor",
        description="Exact minors of the weighted path matrix of a digraph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_spec: bool):
        p.add_argument("--graph", required=True, help="graph JSON document")
        if needs_spec:
            p.add_argument("--sources", help="comma-separated source vertices")
            p.add_argument("--sinks", help="comma-separated sink vertices")
        p.add_argument(
            "--json", action="store_true", help="emit JSON instead of text"
        )

    p = sub.add_parser("entry", help="one path-matrix entry")
    common(p, True)
    p.set_defaults(func=cmd_entry)

    p = sub.add_parser("minor", help="minor for ordered sources and sinks")
    common(p, True)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("matrix", help="all reduced path-matrix entries")
    common(p, False)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("flows", help="list the flows for a spec")
    common(p, True)
    p.set_defaults(func=cmd_flows)

    p = sub.add_parser("cycles", help="list the elementary cycles")
    common(p, False)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("denominator", help="denominator and its factors")
    common(p, False)
    p.set_defaults(func=cmd_denominator)

    p = sub.add_parser("verify", help="run the series and numeric oracles")
    common(p, True)
    p.add_argument("--order", type=int, default=10, help="series order")
    p.add_argument(
        "--seeds", type=int, default=20, help="numeric assignments to try"
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="cancellation audit up to a degree")
    common(p, True)
    p.add_argument("--degree", type=int, default=6, help="max weight degree")
    p.set_defaults(func=cmd_audit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        GraphError,
        SpecError,
        WalkError,
        InvolutionError,
        EnumerationLimitError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
