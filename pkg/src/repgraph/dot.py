"""Graphviz output. DOT is write-only; the JSON sidecar carries the exact object."""

from __future__ import annotations

from .graph import WeightedGraph
from .io import graph_to_json, rep_to_json
from .representation import RepresentationGraph

PALETTE = ("blue", "red", "darkgreen", "brown", "purple", "orange", "teal", "magenta")


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_dot(E: WeightedGraph, name: str = "E") -> str:
    lines = [f"digraph {_q(name)} {{"]
    for v in E.vertices:
        lines.append(f"  {_q(v)};")
    for k, e in enumerate(E.edges):
        color = PALETTE[k % len(PALETTE)]
        label = e.id if e.weight == 1 else f"{e.id} (w={e.weight})"
        lines.append(f"  {_q(e.src)} -> {_q(e.dst)} [label={_q(label)}, color={color}, fontcolor={color}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def rep_dot(F: RepresentationGraph, name: str = "F") -> str:
    """Edges colored by structure edge, labelled by tag; frontier vertices dashed."""
    colors = {e.id: PALETTE[k % len(PALETTE)] for k, e in enumerate(F.base.edges)}
    lines = [f"digraph {_q(name)} {{"]
    for v in F.vertices:
        style = ", style=dashed" if v in F.frontier else ""
        lines.append(f"  {_q(v)} [xlabel={_q(F.image(v))}{style}];")
    for f in F.edges:
        c = colors[f.image.edge]
        label = f"{f.image.edge}{f.image.tag}"
        lines.append(f"  {_q(f.src)} -> {_q(f.dst)} [label={_q(label)}, color={c}, fontcolor={c}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(obj: WeightedGraph | RepresentationGraph, name: str = "G") -> tuple[str, dict]:
    """DOT text and the sidecar document that reloads to ``obj``."""
    if isinstance(obj, RepresentationGraph):
        return rep_dot(obj, name), rep_to_json(obj)
    return graph_dot(obj, name), graph_to_json(obj)
