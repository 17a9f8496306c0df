"""Command-line front end.

Subcommands: `analyze`, `classes`, `eval`, `decompose` on graph files, and
`sg` on Cayley-table files.  Every command prints one deterministic JSON
report.  Exit codes: 0 success, 2 malformed input, 3 failed mathematical
precondition.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .errors import ParseError, PreconditionError
from .gis import approx_canonical
from .graphs import (
    closed_paths_up_to,
    cycles,
    infinite_paths_tame,
    is_no_exit,
    parse_graph,
    regular_vertices,
    sinks,
)
from .path_algebras import COHN, LEAVITT, PathAlgebra, parse_element
from .scalars import CONJUGATION, IDENTITY, Q, QI, format_scalar
from .semigroups import (
    admits_normalized_minimal,
    is_minimal_sg_trace,
    minimal_trace,
    parse_cayley,
    sim_classes,
)
from .structure import decompose, decomposition_report
from .traces import (
    faithful_trace_exists,
    parse_trace_spec,
    trace_eval,
    validate_trace_spec,
    vertex_trace_space,
)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _report(command: str, inputs: dict, result: dict, diagnostics=()) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "diagnostics": list(diagnostics),
    }


def _print(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def cmd_analyze(args) -> int:
    text = _read(args.graph)
    g = parse_graph(text)
    result = {
        "no_exit": is_no_exit(g),
        "tame": infinite_paths_tame(g),
        "sinks": list(sinks(g)),
        "regular_vertices": list(regular_vertices(g)),
        "cycles": ["/".join(c.edges) for c in cycles(g)],
        "vertex_trace_space_dim": vertex_trace_space(g, Q).dimension,
        "faithful_trace_exists": {
            "Q,identity": bool(faithful_trace_exists(g, Q, IDENTITY)),
            "Qi,conjugation": bool(faithful_trace_exists(g, QI, CONJUGATION)),
        },
    }
    _print(_report(
        "analyze",
        {"graph": {"path": args.graph, "sha256": _digest(text)}},
        result,
    ))
    return 0


def cmd_classes(args) -> int:
    text = _read(args.graph)
    g = parse_graph(text)
    words = sorted(
        {approx_canonical(g, p).edges for p in closed_paths_up_to(g, args.max_len)}
    )
    result = {
        "vertex_classes": list(g.vertices),
        "cycle_classes": ["/".join(w) for w in words],
        "cycle_star_classes": ["/".join(w) for w in words],
        "max_len": args.max_len,
    }
    _print(_report(
        "classes",
        {"graph": {"path": args.graph, "sha256": _digest(text)}},
        result,
    ))
    return 0


def cmd_eval(args) -> int:
    graph_text = _read(args.graph)
    spec_text = _read(args.spec)
    g = parse_graph(graph_text)
    spec = parse_trace_spec(spec_text, g)
    mode = LEAVITT if args.mode == "leavitt" else COHN
    if mode == LEAVITT:
        check = validate_trace_spec(g, spec)
        if not check:
            raise PreconditionError(
                "invalid spec: " + "; ".join(check.messages())
            )
    algebra = PathAlgebra(g, spec.field, spec.involution, mode)
    element = parse_element(args.expr, algebra)
    value = trace_eval(g, spec, element)
    _print(_report(
        "eval",
        {
            "graph": {"path": args.graph, "sha256": _digest(graph_text)},
            "spec": {"path": args.spec, "sha256": _digest(spec_text)},
        },
        {
            "expr": args.expr,
            "mode": args.mode,
            "field": spec.field,
            "involution": spec.involution,
            "value": format_scalar(value),
        },
    ))
    return 0


def cmd_decompose(args) -> int:
    text = _read(args.graph)
    g = parse_graph(text)
    dec = decompose(g)
    _print(_report(
        "decompose",
        {"graph": {"path": args.graph, "sha256": _digest(text)}},
        decomposition_report(dec),
    ))
    return 0


def cmd_sg(args) -> int:
    text = _read(args.cayley)
    G = parse_cayley(text)
    part = sim_classes(G)
    classes = [[G.label(i) for i in cls] for cls in part.classes]
    if args.action == "classes":
        result = {
            "classes": classes,
            "zero_class": part.zero_class_id,
            "nonzero_class_count": len(part.nonzero_class_ids),
        }
    elif args.action == "minimal":
        delta = minimal_trace(G)
        result = {
            "classes": classes,
            "zero_class": part.zero_class_id,
            "delta": {
                G.label(i): (
                    None
                    if part.class_of[i] == part.zero_class_id
                    else part.class_of[i]
                )
                for i in range(G.size)
            },
            "is_minimal": is_minimal_sg_trace(G, delta),
        }
    else:
        result = {"admits_normalized_minimal": admits_normalized_minimal(G)}
    _print(_report(
        f"sg {args.action}",
        {"cayley": {"path": args.cayley, "sha256": _digest(text)}},
        result,
    ))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpa",
        description="Exact traces on Cohn and Leavitt path algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural report for a graph file")
    p.add_argument("graph")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classes", help="closed-path classes up to a length")
    p.add_argument("graph")
    p.add_argument("--max-len", type=int, default=3)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("eval", help="evaluate a trace on an element expression")
    p.add_argument("graph")
    p.add_argument("expr")
    p.add_argument("--spec", required=True)
    p.add_argument("--mode", choices=["cohn", "leavitt"], default="leavitt")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decompose", help="matrix-block decomposition report")
    p.add_argument("graph")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("sg", help="semigroup analyses on a Cayley-table file")
    p.add_argument("cayley")
    p.add_argument("action", choices=["classes", "minimal", "normalized"])
    p.set_defaults(func=cmd_sg)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
