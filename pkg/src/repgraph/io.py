"""JSON readers and writers for every file the command line consumes or emits."""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from typing import Any

from .branching import ActionTable, AffineMap, BranchingSystem, IntervalSet
from .errors import InputError
from .field import QQ, Field
from .graph import Edge, TaggedEdge, WeightedGraph, parse_letter
from .representation import REdge, RepresentationGraph, VertexPartition

_QUOTED = re.compile(r"'([^']+)'")


class Source:
    """A loaded document plus what is needed to point errors at a line."""

    def __init__(self, path: str | None, text: str, data: Any):
        self.path = path
        self.text = text
        self.data = data

    @classmethod
    def read(cls, path: str) -> Source:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read file: {exc.strerror}", source=path) from None
        return cls.parse(text, path)

    @classmethod
    def parse(cls, text: str, path: str | None = None) -> Source:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc.msg}", source=path, line=exc.lineno) from None
        return cls(path, text, data)

    def line_of(self, needle: str | None) -> int | None:
        if not needle:
            return None
        for k, line in enumerate(self.text.splitlines(), 1):
            if f'"{needle}"' in line:
                return k
        return None

    def error(self, message: str, field: str | None = None, needle: str | None = None) -> InputError:
        return InputError(message, source=self.path, line=self.line_of(needle or field), field=field)

    def locate(self, exc: InputError) -> InputError:
        """Fill in file and line on an error raised while building objects."""
        if exc.source is None:
            exc.source = self.path
        if exc.line is None:
            m = _QUOTED.search(exc.message)
            exc.line = self.line_of(m.group(1) if m else None) or self.line_of(exc.field)
        return exc


def _need(src: Source, obj: Any, key: str, kind: type | tuple, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise src.error(f"{where}: missing field {key!r}", field=key)
    val = obj[key]
    if not isinstance(val, kind) or isinstance(val, bool) and kind is int:
        raise src.error(f"{where}: field {key!r} has the wrong type", field=key, needle=key)
    return val


# weighted graphs

def graph_to_json(E: WeightedGraph) -> dict:
    return {"vertices": list(E.vertices),
            "edges": [{"id": e.id, "src": e.src, "dst": e.dst, "weight": e.weight} for e in E.edges]}


def graph_from_json(data: Any, src: Source) -> WeightedGraph:
    verts = _need(src, data, "vertices", list, "graph")
    for v in verts:
        if not isinstance(v, str):
            raise src.error(f"vertex ids must be strings, got {v!r}", field="vertices")
    edges = []
    for k, e in enumerate(_need(src, data, "edges", list, "graph")):
        where = f"edges[{k}]"
        eid = _need(src, e, "id", str, where)
        w = e.get("weight", 1)
        if not isinstance(w, int) or isinstance(w, bool):
            raise src.error(f"edge {eid!r}: weight must be an integer", field="weight", needle=eid)
        edges.append(Edge(eid, _need(src, e, "src", str, where), _need(src, e, "dst", str, where), w))
    try:
        return WeightedGraph(verts, edges)
    except InputError as exc:
        raise src.locate(exc) from None


def load_graph(path: str) -> WeightedGraph:
    src = Source.read(path)
    if isinstance(src.data, dict) and "rvertices" in src.data:
        return _base_of(src.data, src)
    return graph_from_json(src.data, src)


# representation graphs

def rep_to_json(F: RepresentationGraph, base: bool = True) -> dict:
    d: dict = {}
    if base:
        d["base"] = graph_to_json(F.base)
    d["rvertices"] = [{"id": v, "image": F.image(v)} for v in F.vertices]
    d["redges"] = [{"id": f.id, "src": f.src, "dst": f.dst, "edge": f.image.edge, "tag": f.image.tag}
                   for f in F.edges]
    if F.frontier:
        d["frontier"] = [v for v in F.vertices if v in F.frontier]
    return d


def _base_of(data: dict, src: Source) -> WeightedGraph:
    if "base" in data:
        return graph_from_json(data["base"], src)
    if "base_file" in data:
        ref = data["base_file"]
        if not isinstance(ref, str):
            raise src.error("base_file must be a path", field="base_file")
        here = os.path.dirname(src.path) if src.path else "."
        return load_graph(os.path.join(here, ref))
    raise src.error("representation graph needs 'base' or 'base_file'", field="base")


def rep_from_json(data: Any, src: Source, base: WeightedGraph | None = None) -> RepresentationGraph:
    if not isinstance(data, dict):
        raise src.error("representation graph must be a JSON object")
    E = base if base is not None else _base_of(data, src)
    verts = []
    for k, v in enumerate(_need(src, data, "rvertices", list, "representation graph")):
        verts.append((_need(src, v, "id", str, f"rvertices[{k}]"), _need(src, v, "image", str, f"rvertices[{k}]")))
    edges = []
    for k, f in enumerate(_need(src, data, "redges", list, "representation graph")):
        where = f"redges[{k}]"
        edges.append(REdge(_need(src, f, "id", str, where), _need(src, f, "src", str, where),
                           _need(src, f, "dst", str, where),
                           TaggedEdge(_need(src, f, "edge", str, where), _need(src, f, "tag", int, where))))
    frontier = data.get("frontier", [])
    if not isinstance(frontier, list):
        raise src.error("frontier must be a list", field="frontier")
    try:
        return RepresentationGraph(E, verts, edges, frontier)
    except InputError as exc:
        raise src.locate(exc) from None


def load_rep(path: str) -> RepresentationGraph:
    src = Source.read(path)
    return rep_from_json(src.data, src)


def partition_from_json(data: Any, F: RepresentationGraph, src: Source) -> VertexPartition:
    blocks = data.get("blocks") if isinstance(data, dict) else data
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise src.error("partition must be a list of vertex lists", field="blocks")
    try:
        return VertexPartition.from_blocks(blocks, F.vertices)
    except InputError as exc:
        raise src.locate(exc) from None


# branching systems

def _region_json(r) -> list:
    return r.to_json() if isinstance(r, IntervalSet) else sorted(r)


def branching_to_json(X: BranchingSystem) -> dict:
    finite = X.is_finite
    order = {p: k for k, p in enumerate(X.carrier)} if finite else None
    region = (lambda r: sorted(r, key=order.__getitem__)) if finite else _region_json
    g = {}
    for t, m in X.g.items():
        g[str(t)] = m.to_json() if isinstance(m, AffineMap) else {a: m[a] for a in sorted(m, key=order.__getitem__)}
    d = {"kind": "finite" if finite else "interval", "base": graph_to_json(X.base),
         "carrier": list(X.carrier) if finite else X.carrier.to_json(),
         "D": {v: region(r) for v, r in X.D.items()},
         "R": {str(t): region(r) for t, r in X.R.items()},
         "Dtag": {str(t): region(r) for t, r in X.Dtag.items()},
         "g": g}
    if X.frontier:
        d["frontier"] = [p for p in X.carrier if p in X.frontier]
    return d


def _frac(src: Source, x: Any, field: str) -> Fraction:
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError):
        raise src.error(f"bad rational {x!r}", field=field) from None


def branching_from_json(data: Any, src: Source) -> BranchingSystem:
    kind = _need(src, data, "kind", str, "branching system")
    if kind not in ("finite", "interval"):
        raise src.error(f"kind must be 'finite' or 'interval', got {kind!r}", field="kind")
    E = graph_from_json(_need(src, data, "base", dict, "branching system"), src)
    finite = kind == "finite"

    def region(val, field):
        if not isinstance(val, list):
            raise src.error(f"{field} must be a list", field=field)
        if finite:
            return frozenset(str(p) for p in val)
        pairs = []
        for p in val:
            if not isinstance(p, list) or len(p) != 2:
                raise src.error(f"{field}: intervals are [lo, hi] pairs", field=field)
            pairs.append((_frac(src, p[0], field), _frac(src, p[1], field)))
        return IntervalSet.of(*pairs)

    def letter_key(k: str) -> TaggedEdge:
        try:
            x = parse_letter(k)
        except InputError:
            raise src.error(f"bad tagged edge {k!r}", field=k) from None
        if x.ghost or not E.is_letter(x):
            raise src.error(f"unknown tagged edge {k!r}", field=k)
        return x.base

    carrier_raw = _need(src, data, "carrier", list, "branching system")
    carrier = [str(p) for p in carrier_raw] if finite else region(carrier_raw, "carrier")
    D = {v: region(r, "D") for v, r in _need(src, data, "D", dict, "branching system").items()}
    R = {letter_key(k): region(r, "R") for k, r in _need(src, data, "R", dict, "branching system").items()}
    Dt = {letter_key(k): region(r, "Dtag") for k, r in _need(src, data, "Dtag", dict, "branching system").items()}
    g = {}
    for k, m in _need(src, data, "g", dict, "branching system").items():
        t = letter_key(k)
        if finite:
            if not isinstance(m, dict):
                raise src.error(f"g[{k}] must map points to points", field="g", needle=k)
            g[t] = {str(a): str(b) for a, b in m.items()}
        else:
            if not isinstance(m, list) or len(m) != 2:
                raise src.error(f"g[{k}] must be [scale, offset]", field="g", needle=k)
            g[t] = AffineMap(_frac(src, m[0], "g"), _frac(src, m[1], "g"))
    frontier = frozenset(str(p) for p in data.get("frontier", []))
    return BranchingSystem(E, tuple(carrier) if finite else carrier, D, R, Dt, g, frontier)


# action tables

def _gen_name(gen) -> str:
    return gen if isinstance(gen, str) else str(gen)


def table_to_json(T: ActionTable) -> dict:
    rows = {}
    for b in T.basis:
        rows[b] = {_gen_name(g): T.entries[(b, g)] for g in T.generators if (b, g) in T.entries}
    d = {"field": T.field.name, "base": graph_to_json(T.base), "basis": list(T.basis), "entries": rows}
    if T.frontier:
        d["frontier"] = [b for b in T.basis if b in T.frontier]
    return d


def table_from_json(data: Any, src: Source, default_field: Field = QQ,
                    override: bool = False) -> ActionTable:
    """The table's own "field" wins unless ``override`` is set."""
    fld = default_field
    if isinstance(data, dict) and "field" in data and not override:
        try:
            fld = Field.parse(str(data["field"]))
        except InputError as exc:
            raise src.locate(InputError(exc.message, field="field")) from None
    E = graph_from_json(_need(src, data, "base", dict, "action table"), src)
    basis = _need(src, data, "basis", list, "action table")
    entries = {}
    for b, row in _need(src, data, "entries", dict, "action table").items():
        if not isinstance(row, dict):
            raise src.error(f"entries[{b}] must be an object", field="entries", needle=b)
        for name, val in row.items():
            if name in E.vertices:
                gen = name
            else:
                try:
                    gen = parse_letter(name)
                except InputError:
                    raise src.error(f"unknown generator {name!r}", field="entries", needle=name) from None
            if val is not None and not isinstance(val, str):
                raise src.error(f"entries[{b}][{name}] must be a basis id or null", field="entries", needle=name)
            entries[(b, gen)] = val
    try:
        return ActionTable(E, fld, tuple(str(b) for b in basis), entries,
                           frozenset(data.get("frontier", [])))
    except InputError as exc:
        raise src.locate(exc) from None


# dispatch

def detect_kind(data: Any) -> str:
    if isinstance(data, dict):
        if "rvertices" in data:
            return "rep"
        if "kind" in data and "carrier" in data:
            return "branching"
        if "basis" in data and "entries" in data:
            return "table"
        if "vertices" in data and "edges" in data:
            return "graph"
    return "unknown"


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
