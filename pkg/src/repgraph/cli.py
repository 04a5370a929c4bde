"""Command-line front end. Every subcommand prints one JSON document.

Exit status: 0 success or a positive decision, 1 a negative decision,
2 bad input.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction
from typing import Sequence

from . import __version__
from .action import ModuleVector, act, check_relations, grading
from .algebra import parse_expr
from .branching import (SupportedFunction, branching_act, branching_from_rep_graph,
                        check_branching_relations, interval_branching, reconstruct_rep_graph,
                        validate_branching, verify_char2_example)
from .chen import (agreement_oracle, irrational_rep_graph, rational_rep_graph, sink_rep_graph)
from .dot import export
from .errors import (InputError, NotAdmissible, ReconstructionError, RepGraphError,
                     TruncationTooShallow)
from .field import QQ, Field
from .graph import is_covering, is_immersion
from .io import (Source, branching_from_json, branching_to_json, detect_kind, dumps,
                 graph_from_json, load_graph, load_rep, partition_from_json, rep_from_json,
                 rep_to_json, table_from_json)
from .representation import (EQUIVALENCE_DEPTH, are_equivalent, hat_projection_is_immersion, is_irreducible,
                             is_quotient_of, minimize, quotient, universal_representation,
                             validate)


def _edges(text: str) -> list[str]:
    return [t for t in (s.strip() for s in text.replace(" ", ",").split(",")) if t]


def _expr(text: str, E, field: Field):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        a = parse_expr(text, E, field)
    return a, [str(w.message) for w in caught]


# subcommands

def cmd_validate(args) -> tuple[dict, int]:
    src = Source.read(args.file)
    kind = detect_kind(src.data)
    if kind == "graph":
        E = graph_from_json(src.data, src)
        return {"kind": "graph", "ok": True, "vertices": len(E.vertices), "edges": len(E.edges)}, 0
    if kind == "rep":
        F = rep_from_json(src.data, src)
        rep = validate(F)
        return {"kind": "representation graph", **rep.to_dict()}, 0 if rep.ok else 1
    if kind == "branching":
        X = branching_from_json(src.data, src)
        rep = validate_branching(X)
        return {"kind": "branching system", **rep.to_dict()}, 0 if rep.ok else 1
    if kind == "table":
        table_from_json(src.data, src, args.field)
        return {"kind": "action table", "ok": True}, 0
    raise src.error("unrecognised document: expected a graph, representation graph, "
                    "branching system or action table")


def cmd_act(args):
    F = load_rep(args.file)
    if args.vertex not in F:
        raise InputError(f"unknown vertex {args.vertex!r}", source=args.file, field="vertex")
    a, warns = _expr(args.expr, F.base, args.field)
    x = act(ModuleVector.basis(args.field, args.vertex), a, F)
    body = {"vertex": args.vertex, "expr": str(a), "result": x.to_dict()}
    if warns:
        body["warnings"] = warns
    return body, 0


def cmd_relations(args):
    rep = check_relations(load_rep(args.file), args.field)
    return {"field": args.field.name, **rep.to_dict()}, 0 if rep.ok else 1


def cmd_simple(args):
    F = load_rep(args.file)
    try:
        ok = is_irreducible(F)
    except TruncationTooShallow as exc:
        return {"irreducible": None, "undecided": str(exc)}, 1
    return {"irreducible": ok}, 0 if ok else 1


def cmd_minimize(args):
    F = load_rep(args.file)
    M = minimize(F)
    return {"vertices": len(M.vertices), "graph": rep_to_json(M)}, 0


def cmd_equivalent(args):
    F, G = load_rep(args.first), load_rep(args.second)
    ok = are_equivalent(F, G, args.depth)
    body = {"equivalent": ok}
    if F.is_truncated or G.is_truncated:
        body["depth"] = args.depth if args.depth is not None else EQUIVALENCE_DEPTH
    return body, 0 if ok else 1


def cmd_quotient_of(args):
    m = is_quotient_of(load_rep(args.first), load_rep(args.second))
    if m is None:
        return {"quotient": False}, 1
    return {"quotient": True, "morphism": m.to_dict()}, 0


def cmd_quotient(args):
    F = load_rep(args.file)
    text = args.partition
    try:
        src = Source.read(text)
    except InputError:
        src = Source.parse(text, "--partition")
    P = partition_from_json(src.data, F, src)
    try:
        Q = quotient(F, P)
    except NotAdmissible as exc:
        return {"admissible": False, "condition": exc.condition, "witness": list(exc.witness)}, 1
    return {"admissible": True, "graph": rep_to_json(Q)}, 0


def cmd_universal(args):
    F = load_rep(args.file)
    if args.root not in F:
        raise InputError(f"unknown vertex {args.root!r}", source=args.file, field="root")
    T = universal_representation(F, args.root, args.depth)
    G = T.graph
    return {"root": T.root, "vertices": len(G.vertices), "edges": len(G.edges),
            "frontier": [v for v in G.vertices if v in G.frontier],
            "projection_is_immersion": hat_projection_is_immersion(G),
            "graph": rep_to_json(G, base=False)}, 0


def cmd_cover_check(args):
    F, G = load_graph(args.first), load_graph(args.second)
    src = Source.read(args.map)
    m = src.data
    if not isinstance(m, dict) or not isinstance(m.get("vertices"), dict) or not isinstance(m.get("edges"), dict):
        raise src.error("map must have 'vertices' and 'edges' objects", field="vertices")
    try:
        cov = is_covering(F, G, m["vertices"], m["edges"])
        imm = is_immersion(F, G, m["vertices"], m["edges"])
    except RepGraphError as exc:
        raise InputError(str(exc), source=args.map) from None
    return {"covering": cov, "immersion": imm}, 0 if cov else 1


def cmd_graded(args):
    g = grading(load_rep(args.file))
    return g.to_dict(), 0 if g.graded else 1


def _construction_body(C) -> dict:
    G = C.graph
    return {"vertices": len(G.vertices), "edges": len(G.edges),
            "frontier": [v for v in G.vertices if v in G.frontier],
            "graph": rep_to_json(G, base=False), "dictionary": C.dictionary_json()}


def cmd_chen_rational(args):
    return _construction_body(rational_rep_graph(load_graph(args.file), _edges(args.cycle), args.depth)), 0


def cmd_chen_sink(args):
    return _construction_body(sink_rep_graph(load_graph(args.file), args.sink, args.depth)), 0


def cmd_chen_irrational(args):
    C = irrational_rep_graph(load_graph(args.file), _edges(args.prefix), args.depth, args.start)
    return _construction_body(C), 0


def cmd_chen_oracle(args):
    E = load_graph(args.file)
    given = [x for x in (args.cycle, args.sink, args.prefix) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --cycle, --sink, --prefix", field="cycle")
    if args.cycle is not None:
        C = rational_rep_graph(E, _edges(args.cycle), args.depth)
    elif args.sink is not None:
        C = sink_rep_graph(E, args.sink, args.depth)
    else:
        C = irrational_rep_graph(E, _edges(args.prefix), args.depth)
    rep = agreement_oracle(C, args.budget)
    return rep.to_dict(), 0 if rep.ok else 1


def _branching_body(X, args) -> tuple[dict, int]:
    v = validate_branching(X)
    rel = check_branching_relations(X, args.field, seed=args.seed)
    body = {"valid": v.to_dict(), "relations": rel.to_dict(), "system": branching_to_json(X)}
    return body, 0 if v.ok and rel.ok else 1


def cmd_branch_interval(args):
    E = load_graph(args.file)
    order = _edges(args.vertex_order) if args.vertex_order else None
    return _branching_body(interval_branching(E, order), args)


def cmd_branch_from(args):
    return _branching_body(branching_from_rep_graph(load_rep(args.file)), args)


def cmd_branch_act(args):
    src = Source.read(args.file)
    kind = detect_kind(src.data)
    if kind == "branching":
        X = branching_from_json(src.data, src)
    elif kind == "rep":
        X = branching_from_rep_graph(rep_from_json(src.data, src))
    elif kind == "graph":
        X = interval_branching(graph_from_json(src.data, src))
    else:
        raise src.error("expected a branching system, representation graph or graph")
    if X.is_finite:
        point = args.point
    else:
        try:
            point = Fraction(args.point)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad rational point {args.point!r}", field="point") from None
    a, warns = _expr(args.expr, X.base, args.field)
    y = branching_act(SupportedFunction.delta(args.field, point), a, X)
    body = {"point": str(point), "expr": str(a), "result": y.to_dict()}
    if warns:
        body["warnings"] = warns
    return body, 0


def cmd_reconstruct(args):
    src = Source.read(args.table)
    T = table_from_json(src.data, src, args.field, override=args.field_explicit)
    try:
        F = reconstruct_rep_graph(T, lenient=args.lenient)
    except ReconstructionError as exc:
        w = exc.witness
        if hasattr(w, "to_dict"):
            w = w.to_dict()
        elif isinstance(w, tuple):
            w = [x if isinstance(x, (str, list, dict)) or x is None else str(x) for x in w]
        return {"ok": False, "rejection": type(exc).__name__, "message": str(exc), "witness": w}, 1
    return {"ok": True, "graph": rep_to_json(F)}, 0


def cmd_char2_demo(args):
    rep = verify_char2_example()
    return rep.to_dict(), 0 if rep.ok else 1


def cmd_export_dot(args):
    src = Source.read(args.file)
    kind = detect_kind(src.data)
    if kind == "rep":
        obj = rep_from_json(src.data, src)
    elif kind == "graph":
        obj = graph_from_json(src.data, src)
    else:
        raise src.error("export-dot takes a graph or a representation graph")
    dot, side = export(obj, args.name)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(dot)
            with open(args.out + ".json", "w", encoding="utf-8") as fh:
                fh.write(dumps(side) + "\n")
        except OSError as exc:
            raise InputError(f"cannot write: {exc.strerror}", source=args.out) from None
        return {"dot": args.out, "sidecar": args.out + ".json"}, 0
    return {"dot": dot, "sidecar": side}, 0


# parser

def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(exc.message) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="repgraph", description="Representation graphs of weighted graphs.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=None, help="q (default) or fp:<prime>")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *files):
        s = sub.add_parser(name, parents=[common], help=help_)
        for f in files:
            s.add_argument(f)
        s.set_defaults(fn=fn)
        return s

    add("validate", cmd_validate, "check a graph, representation graph, branching system or table", "file")
    s = add("act", cmd_act, "act on a basis vertex", "file")
    s.add_argument("--vertex", required=True)
    s.add_argument("--expr", required=True)
    add("relations", cmd_relations, "check the defining relations on V_F", "file")
    add("simple", cmd_simple, "decide irreducibility", "file")
    add("minimize", cmd_minimize, "quotient by similarity", "file")
    s = add("equivalent", cmd_equivalent, "decide whether two graphs share a similarity class",
            "first", "second")
    s.add_argument("--depth", type=int, help="word length compared when an input is truncated")
    add("quotient-of", cmd_quotient_of, "find a morphism first -> second", "first", "second")
    s = add("quotient", cmd_quotient, "quotient by a partition", "file")
    s.add_argument("--partition", required=True, help="JSON file or inline JSON list of blocks")
    s = add("universal", cmd_universal, "truncated universal representation", "file")
    s.add_argument("--root", required=True)
    s.add_argument("--depth", type=int, required=True)
    s = add("cover-check", cmd_cover_check, "check a graph map for covering/immersion", "first", "second")
    s.add_argument("--map", required=True)
    add("graded", cmd_graded, "grading or an obstructing closed walk", "file")
    s = add("chen-rational", cmd_chen_rational, "representation graph of a rational Chen module", "file")
    s.add_argument("--cycle", required=True)
    s.add_argument("--depth", type=int, required=True)
    s = add("chen-sink", cmd_chen_sink, "representation graph of a sink Chen module", "file")
    s.add_argument("--sink", required=True)
    s.add_argument("--depth", type=int, required=True)
    s = add("chen-irrational", cmd_chen_irrational, "truncated irrational Chen graph", "file")
    s.add_argument("--prefix", required=True)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--start")
    s = add("chen-oracle", cmd_chen_oracle, "compare graph and path actions", "file")
    s.add_argument("--cycle")
    s.add_argument("--sink")
    s.add_argument("--prefix")
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--budget", type=int, required=True)
    s = add("branch-interval", cmd_branch_interval, "interval branching system of a graph", "file")
    s.add_argument("--vertex-order")
    add("branch-from", cmd_branch_from, "branching system of a representation graph", "file")
    s = add("branch-act", cmd_branch_act, "act on a delta function", "file")
    s.add_argument("--point", required=True)
    s.add_argument("--expr", required=True)
    s = sub.add_parser("reconstruct", parents=[common], help="rebuild a representation graph from a table")
    s.add_argument("--table", required=True)
    s.add_argument("--lenient", action="store_true", help="check termwise vanishing in characteristic 0 too")
    s.set_defaults(fn=cmd_reconstruct)
    s = sub.add_parser("char2-demo", parents=[common], help="the characteristic-2 counterexample")
    s.set_defaults(fn=cmd_char2_demo)
    s = add("export-dot", cmd_export_dot, "write DOT plus a JSON sidecar", "file")
    s.add_argument("--out")
    s.add_argument("--name", default="G")
    return p


def _error_body(exc: Exception, args=None) -> dict:
    if isinstance(exc, InputError):
        body = exc.to_dict()
        if body["file"] is None and args is not None:
            body["file"] = getattr(args, "file", None) or getattr(args, "table", None)
    else:
        body = {"error": str(exc), "file": getattr(args, "file", None), "line": None, "field": None}
    body["type"] = type(exc).__name__
    return body


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return 0
        out.write(dumps({"error": "bad arguments", "file": None, "line": None, "field": None,
                         "type": "UsageError"}) + "\n")
        return 2
    args.field_explicit = args.field is not None
    if args.field is None:
        args.field = QQ
    try:
        body, code = args.fn(args)
    except (RepGraphError, ValueError) as exc:
        body, code = _error_body(exc, args), 2
    out.write(dumps(body) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
