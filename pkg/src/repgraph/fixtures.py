"""Builders for the shipped example graphs.

Infinite examples are produced as truncations with an explicit frontier. The
seven L(2,2) graphs are built from one truncated universal representation so
that the lattice maps between them stay surjective on the truncations.
"""

from __future__ import annotations

from typing import Callable

from .graph import Edge, TaggedEdge, WeightedGraph, length_vector
from .representation import (REdge, RepresentationGraph, VertexPartition, quotient,
                             universal_representation)

DEFAULT_RADIUS = 4


def one_vertex_graph(loops: dict[str, int], vertex: str = "v") -> WeightedGraph:
    return WeightedGraph([vertex], [Edge(e, vertex, vertex, w) for e, w in loops.items()])


def l22_graph() -> WeightedGraph:
    """One vertex with loops e and f of weight 2."""
    return one_vertex_graph({"e": 2, "f": 2})


def l23_graph() -> WeightedGraph:
    """One vertex with loops e and f of weight 3."""
    return one_vertex_graph({"e": 3, "f": 3})


def three_loop_graph() -> WeightedGraph:
    """One vertex with weight-one loops e, f, g."""
    return one_vertex_graph({"e": 1, "f": 1, "g": 1})


def edgeless_graph() -> WeightedGraph:
    return WeightedGraph(["v"], [])


def f7() -> RepresentationGraph:
    """One vertex carrying an e_1 loop and an f_2 loop."""
    E = l22_graph()
    return RepresentationGraph(E, {"u": "v"}, [("g", "u", "u", TaggedEdge("e", 1)),
                                               ("h", "u", "u", TaggedEdge("f", 2))])


def f1(radius: int = DEFAULT_RADIUS) -> RepresentationGraph:
    """The tree T_C of the class of F_7, truncated at ``radius``."""
    return universal_representation(f7(), "u", radius).graph


def _collapse(radius: int, key: Callable[[tuple[int, int]], object],
              name: Callable[[object], str]) -> RepresentationGraph:
    T = universal_representation(f7(), "u", radius)
    F = T.graph
    n = F.base.max_weight
    classes: dict[object, list[str]] = {}
    for v in F.vertices:
        a, b = length_vector(T.words[v], n).components
        classes.setdefault(key((a, b)), []).append(v)
    Q = quotient(F, VertexPartition.from_blocks(classes.values(), F.vertices))
    inv = {vs[0]: name(k) for k, vs in classes.items()}
    R = Q.renamed(inv)
    edges = [REdge(f"{f.image.edge}{f.image.tag}.{f.src}", f.src, f.dst, f.image) for f in R.edges]
    return RepresentationGraph(R.base, [(v, R.image(v)) for v in R.vertices], edges, R.frontier)


def f2(radius: int = DEFAULT_RADIUS) -> RepresentationGraph:
    """Z^2 grid, e_1 steps right and f_2 steps up (ball of the given radius)."""
    return _collapse(radius, lambda ab: ab, lambda k: f"v({k[0]},{k[1]})")


def f3(radius: int = DEFAULT_RADIUS) -> RepresentationGraph:
    """A line of e_1 steps with an f_2 loop at every vertex."""
    return _collapse(radius, lambda ab: ab[0], lambda k: f"v{k}")


def f4(radius: int = DEFAULT_RADIUS) -> RepresentationGraph:
    """A line of f_2 steps with an e_1 loop at every vertex."""
    return _collapse(radius, lambda ab: ab[1], lambda k: f"v{k}")


def f5(radius: int = DEFAULT_RADIUS) -> RepresentationGraph:
    """Two vertices swapped by e_1, each with an f_2 loop."""
    return _collapse(radius, lambda ab: ab[0] % 2, lambda k: f"v{k}")


def f6(radius: int = DEFAULT_RADIUS) -> RepresentationGraph:
    """Two vertices swapped by f_2, each with an e_1 loop."""
    return _collapse(radius, lambda ab: ab[1] % 2, lambda k: f"v{k}")


def lattice(radius: int = DEFAULT_RADIUS) -> dict[str, RepresentationGraph]:
    return {"F1": f1(radius), "F2": f2(radius), "F3": f3(radius), "F4": f4(radius),
            "F5": f5(radius), "F6": f6(radius), "F7": f7()}


# reflexive-transitive closure of the quotient diagram
LATTICE_COVERS = {("F1", "F2"), ("F2", "F3"), ("F2", "F4"), ("F3", "F5"),
                  ("F4", "F6"), ("F5", "F7"), ("F6", "F7")}


def lattice_arrows() -> set[tuple[str, str]]:
    names = [f"F{i}" for i in range(1, 8)]
    reach = {(a, a) for a in names} | set(LATTICE_COVERS)
    changed = True
    while changed:
        changed = False
        for a, b in list(reach):
            for c, d in list(reach):
                if b == c and (a, d) not in reach:
                    reach.add((a, d))
                    changed = True
    return reach


def l23_rep(n: int = 40) -> RepresentationGraph:
    """The L(2,3) graph on v_0, v_1, ... truncated to v_0..v_n.

    v_0 carries loops e_1, f_2 and f_3: v_0 -> v_1. For m >= 0,
    v_{2m+1} --e_j--> v_{3m+j} and v_{2m+2} --f_j--> v_{3m+1+j}.
    """
    E = l23_graph()
    name = lambda k: f"v_{k}"
    edges = [("e1_0", name(0), name(0), TaggedEdge("e", 1)),
             ("f2_0", name(0), name(0), TaggedEdge("f", 2)),
             ("f3_0", name(0), name(1), TaggedEdge("f", 3))]
    for k in range(1, n + 1):
        if k % 2:
            m, s, base = (k - 1) // 2, "e", lambda m, j: 3 * m + j
        else:
            m, s, base = (k - 2) // 2, "f", lambda m, j: 3 * m + 1 + j
        for j in (1, 2, 3):
            t = base(m, j)
            if t <= n:
                edges.append((f"{s}{j}_{k}", name(k), name(t), TaggedEdge(s, j)))
    F = RepresentationGraph(E, [(name(k), "v") for k in range(n + 1)], edges)
    return F.with_frontier(F.incomplete_vertices())


def rational_efg() -> RepresentationGraph:
    """The rational Chen graph for efg with side trees cut at depth one."""
    E = three_loop_graph()
    t = lambda e: TaggedEdge(e, 1)
    edges = [("f1", "v_1", "v_2", t("e")), ("f2", "v_2", "v_3", t("f")), ("f3", "v_3", "v_1", t("g")),
             ("f4", "v_4", "v_1", t("e")), ("f5", "v_5", "v_1", t("f")),
             ("f6", "v_6", "v_2", t("f")), ("f7", "v_7", "v_2", t("g")),
             ("f8", "v_8", "v_3", t("g")), ("f9", "v_9", "v_3", t("e"))]
    verts = [(f"v_{k}", "v") for k in range(1, 10)]
    return RepresentationGraph(E, verts, edges, [f"v_{k}" for k in range(4, 10)])


def irrational_word(n: int) -> tuple[str, ...]:
    """The first n letters of e f e f^2 e f^3 ..."""
    out: list[str] = []
    k = 1
    while len(out) < n:
        out += ["e"] + ["f"] * k
        k += 1
    return tuple(out[:n])


IRRATIONAL_PREFIX = irrational_word(5)


def irrational_efef2(prefix=IRRATIONAL_PREFIX, depth: int = 1) -> RepresentationGraph:
    """Truncation of the irrational Chen graph for efef^2ef^3..."""
    from .chen import irrational_rep_graph
    return irrational_rep_graph(three_loop_graph(), list(prefix), depth).graph


def bipartite_base() -> WeightedGraph:
    return WeightedGraph(["u", "v"], [Edge("e", "u", "v", 2), Edge("f", "u", "v", 2)])


def bipartite_double() -> RepresentationGraph:
    E = bipartite_base()
    return RepresentationGraph(E, [("u_1", "u"), ("u_2", "u"), ("v_1", "v"), ("v_2", "v")],
                               [("a", "u_1", "v_1", TaggedEdge("e", 1)),
                                ("b", "u_1", "v_2", TaggedEdge("f", 2)),
                                ("c", "u_2", "v_2", TaggedEdge("e", 1)),
                                ("d", "u_2", "v_1", TaggedEdge("f", 2))])


def bipartite_single() -> RepresentationGraph:
    E = bipartite_base()
    return RepresentationGraph(E, [("u", "u"), ("v", "v")],
                               [("a", "u", "v", TaggedEdge("e", 1)),
                                ("b", "u", "v", TaggedEdge("f", 2))])


def single_vertex_edgeless() -> RepresentationGraph:
    return RepresentationGraph(edgeless_graph(), {"x": "v"}, [])


def sink_example() -> WeightedGraph:
    """x --a--> u with u a sink."""
    return WeightedGraph(["x", "u"], [Edge("a", "x", "u")])


def shipped_fixtures() -> dict[str, RepresentationGraph]:
    """The eight representation graphs used throughout the acceptance suite."""
    d = lattice()
    d["l23_rep"] = l23_rep()
    return d


def fixture_documents() -> dict[str, dict]:
    """File name -> JSON document for everything under fixtures/."""
    from .branching import char2_table
    from .io import graph_to_json, rep_to_json, table_to_json
    docs = {"l22.json": graph_to_json(l22_graph()), "l23.json": graph_to_json(l23_graph()),
            "three_loops.json": graph_to_json(three_loop_graph()),
            "bipartite_base.json": graph_to_json(bipartite_base()),
            "sink_example.json": graph_to_json(sink_example())}
    reps = dict(shipped_fixtures(), rational_efg=rational_efg(), irrational_efef2=irrational_efef2(),
                bipartite_double=bipartite_double(), bipartite_single=bipartite_single())
    for name, F in reps.items():
        docs[f"{name}.json"] = rep_to_json(F)
    docs["char2_table.json"] = table_to_json(char2_table())
    return docs


def write_fixtures(directory: str) -> list[str]:
    import json
    import os
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, doc in fixture_documents().items():
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
        written.append(path)
    return written
