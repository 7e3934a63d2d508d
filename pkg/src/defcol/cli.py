"""Batch command-line front end.

Subcommands: solve, oracle, gadget, reduce, check, audit. All reports are
JSON on stdout; graphs and embeddings travel in the versioned text formats.
Exit codes: 0 success / Sat, 10 Unsat, 20 budget exhausted, 2 usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cnf import export_cnf
from .coloring import ConstraintSet, SolveOutcome, brute_force_oracle, solve
from .discharging import RULESETS, ALL_VALIDATORS, build_audit
from .embedding import dump_embedding, load_embedding
from .gadgets import GadgetResult, hub_gadget, non_1k, np_reduce, triangle_link
from .graphs import (
    Graph,
    cycles_of_length,
    dump_graph,
    girth,
    is_c4c5_free,
    load_graph,
)

EXIT_SAT = 0
EXIT_OK = 0
EXIT_UNSAT = 10
EXIT_BUDGET = 20
EXIT_ERROR = 2

BUDGET_FREE_LIMIT = 30  # above this vertex count, solve demands a budget
DEFAULT_SMALL_BUDGET = 10**9


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _load_graph_arg(args) -> Graph:
    if getattr(args, "graph", None):
        return load_graph(_read(args.graph))
    if getattr(args, "embedding", None):
        return load_embedding(_read(args.embedding)).graph
    raise CliError("either --graph or --embedding is required")


def _parse_spec(text: str) -> tuple[int, ...]:
    try:
        defects = tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise CliError(f"malformed spec {text!r}; expected e.g. 1,1") from exc
    if not defects:
        raise CliError("spec needs at least one defect bound")
    return defects


def _resolve_vertex(g: Graph, token: str):
    labels = g.labels
    for v, name in labels.items():
        if name == token:
            return v
    try:
        index = int(token)
    except ValueError:
        raise CliError(f"unknown vertex {token!r}") from None
    if not (0 <= index < g.vertex_count):
        raise CliError(f"vertex index {index} out of range")
    return g.vertices[index]


def _parse_assignments(g: Graph, pairs: list[str]) -> list[tuple[object, int]]:
    out = []
    for item in pairs:
        if "=" not in item:
            raise CliError(f"expected v=c, got {item!r}")
        vtok, ctok = item.split("=", 1)
        try:
            c = int(ctok)
        except ValueError:
            raise CliError(f"malformed color in {item!r}") from None
        out.append((_resolve_vertex(g, vtok), c))
    return out


def _constraints(g: Graph, args) -> ConstraintSet:
    forced = dict(_parse_assignments(g, args.force or []))
    forbidden: dict[object, set[int]] = {}
    for v, c in _parse_assignments(g, args.forbid or []):
        forbidden.setdefault(v, set()).add(c)
    return ConstraintSet(forced, {v: frozenset(cs) for v, cs in forbidden.items()})


def _coloring_json(g: Graph, coloring: dict | None):
    if coloring is None:
        return None
    return {str(g.index_of(v)): c for v, c in coloring.items()}


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _outcome_exit(outcome: SolveOutcome) -> int:
    if outcome.is_sat:
        return EXIT_SAT
    if outcome.is_unsat:
        return EXIT_UNSAT
    return EXIT_BUDGET


def _cmd_solve(args) -> int:
    g = _load_graph_arg(args)
    spec = _parse_spec(args.spec)
    cons = _constraints(g, args)
    if args.emit_cnf:
        doc = export_cnf(g, spec, cons)
        Path(args.emit_cnf).write_text(doc.to_dimacs())
        _emit({"format": "defcol-solve v1", "cnf": args.emit_cnf,
               "vars": doc.num_vars, "clauses": len(doc.clauses)})
        return EXIT_OK
    budget = args.budget
    if budget is None:
        if g.vertex_count > BUDGET_FREE_LIMIT:
            raise CliError(
                f"instances above {BUDGET_FREE_LIMIT} vertices require --budget"
            )
        budget = DEFAULT_SMALL_BUDGET
    outcome = solve(g, spec, cons, budget=budget)
    _emit({
        "format": "defcol-solve v1",
        "outcome": outcome.status,
        "coloring": _coloring_json(g, outcome.coloring),
        "nodes": outcome.nodes,
        "budget": budget,
    })
    return _outcome_exit(outcome)


def _cmd_oracle(args) -> int:
    g = _load_graph_arg(args)
    spec = _parse_spec(args.spec)
    cons = _constraints(g, args)
    outcome = brute_force_oracle(g, spec, cons)
    _emit({
        "format": "defcol-solve v1",
        "outcome": outcome.status,
        "coloring": _coloring_json(g, outcome.coloring),
        "nodes": outcome.nodes,
        "budget": None,
    })
    return _outcome_exit(outcome)


def _write_gadget(result: GadgetResult, prefix: str) -> dict:
    g = result.graph
    files = {}
    graph_path = f"{prefix}.graph"
    Path(graph_path).write_text(dump_graph(g))
    files["graph"] = graph_path
    if result.embedding is not None:
        emb_path = f"{prefix}.emb"
        Path(emb_path).write_text(dump_embedding(result.embedding))
        files["embedding"] = emb_path
    return {
        "format": "defcol-gadget v1",
        "files": files,
        "vertex_count": g.vertex_count,
        "edge_count": g.edge_count,
        "terminals": {name: g.index_of(v) for name, v in result.terminals.items()},
    }


def _cmd_gadget(args) -> int:
    if args.kind == "huv":
        result = triangle_link()
    elif args.kind == "s":
        result = hub_gadget(args.k)
    else:
        result = non_1k(args.k)
    _emit(_write_gadget(result, args.out))
    return EXIT_OK


def _cmd_reduce(args) -> int:
    g = load_graph(_read(args.graph))
    result = np_reduce(g, args.k)
    _emit(_write_gadget(result, args.out))
    return EXIT_OK


def _cmd_check(args) -> int:
    if args.kind == "lemmas":
        if not args.embedding:
            raise CliError("check lemmas requires --embedding")
        emb = load_embedding(_read(args.embedding))
        reports = [v(emb) for v in ALL_VALIDATORS]
        _emit({
            "format": "defcol-check v1",
            "kind": "lemmas",
            "reports": {r.name: r.to_json() for r in reports},
        })
        return EXIT_OK
    g = _load_graph_arg(args)
    if args.kind == "girth":
        value = girth(g)
        _emit({
            "format": "defcol-check v1",
            "kind": "girth",
            "girth": "infinite" if value == float("inf") else value,
        })
        return EXIT_OK
    free = is_c4c5_free(g)
    _emit({
        "format": "defcol-check v1",
        "kind": "c4c5",
        "c4c5_free": free,
        "cycles4": len(cycles_of_length(g, 4)),
        "cycles5": len(cycles_of_length(g, 5)),
    })
    return EXIT_OK


def _cmd_audit(args) -> int:
    emb = load_embedding(_read(args.embedding))
    ruleset = RULESETS[args.ruleset]
    doc = build_audit(emb, ruleset)
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        _emit({"format": "defcol-audit v1", "written": args.out})
    else:
        _emit(doc)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="defcol")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_solve_flags(p, with_budget):
        p.add_argument("--graph")
        p.add_argument("--embedding")
        p.add_argument("--spec", required=True, help="defect bounds, e.g. 1,1")
        p.add_argument("--force", action="append", metavar="V=C")
        p.add_argument("--forbid", action="append", metavar="V=C")
        if with_budget:
            p.add_argument("--budget", type=int)
            p.add_argument("--emit-cnf", metavar="OUT")

    p_solve = sub.add_parser("solve", help="exact search")
    add_solve_flags(p_solve, with_budget=True)
    p_solve.set_defaults(func=_cmd_solve)

    p_oracle = sub.add_parser("oracle", help="brute-force enumeration")
    add_solve_flags(p_oracle, with_budget=False)
    p_oracle.set_defaults(func=_cmd_oracle)

    p_gadget = sub.add_parser("gadget", help="generate a gadget graph")
    p_gadget.add_argument("kind", choices=["huv", "s", "non1k"])
    p_gadget.add_argument("--k", type=int, default=1)
    p_gadget.add_argument("--out", required=True, help="output file prefix")
    p_gadget.set_defaults(func=_cmd_gadget)

    p_reduce = sub.add_parser("reduce", help="attach defect-shifting triangles")
    p_reduce.add_argument("--graph", required=True)
    p_reduce.add_argument("--k", type=int, required=True)
    p_reduce.add_argument("--out", required=True)
    p_reduce.set_defaults(func=_cmd_reduce)

    p_check = sub.add_parser("check", help="structural checks")
    p_check.add_argument("kind", choices=["girth", "c4c5", "lemmas"])
    p_check.add_argument("--graph")
    p_check.add_argument("--embedding")
    p_check.set_defaults(func=_cmd_check)

    p_audit = sub.add_parser("audit", help="charge-accounting audit")
    p_audit.add_argument("--embedding", required=True)
    p_audit.add_argument("--ruleset", choices=sorted(RULESETS), required=True)
    p_audit.add_argument("--out")
    p_audit.set_defaults(func=_cmd_audit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError) as exc:
        print(f"defcol: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
