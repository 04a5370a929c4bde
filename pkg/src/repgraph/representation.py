"""Representation graphs of a weighted graph.

A representation graph is a graph F with a homomorphism into Ê such that each
vertex emits exactly one edge per tag up to its weight and receives exactly
one edge per arriving structure edge. Read as an automaton over the letters
of Ê_d it is deterministic in both directions.

Infinite graphs only exist here as truncations: a ``frontier`` set names the
vertices whose slots may be incomplete. At a frontier vertex a missing slot
means "unknown", never "absent"; :data:`TRUNCATED` is returned instead of
``None`` in that case.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (DisconnectedGraph, InputError, MalformedGraph, NotAdmissible,
                     TruncationTooShallow)
from .graph import Edge, Letter, PathWord, TaggedEdge, WeightedGraph, hat_graph, is_covering


class _Truncated:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TRUNCATED"

    def __bool__(self):
        return False


TRUNCATED = _Truncated()


@dataclass(frozen=True)
class REdge:
    id: str
    src: str
    dst: str
    image: TaggedEdge


# A slot is ("out", tag) or ("in", structure edge id).
Slot = tuple


class RepresentationGraph:
    def __init__(self, base: WeightedGraph, vertices: Mapping[str, str] | Iterable[tuple[str, str]],
                 edges: Iterable[REdge | tuple], frontier: Iterable[str] = ()):
        self.base = base
        items = list(vertices.items()) if isinstance(vertices, Mapping) else list(vertices)
        self.vertices: tuple[str, ...] = tuple(v for v, _ in items)
        self._image: dict[str, str] = {}
        for v, x in items:
            if v in self._image:
                raise MalformedGraph(f"duplicate vertex id {v!r}", field="rvertices")
            if x not in base._out:
                raise MalformedGraph(f"vertex {v!r} has unknown image {x!r}", field="image")
            self._image[v] = x
        es = []
        for f in edges:
            if not isinstance(f, REdge):
                fid, s, d, img = f
                f = REdge(fid, s, d, img if isinstance(img, TaggedEdge) else TaggedEdge(*img))
            es.append(f)
        self.edges: tuple[REdge, ...] = tuple(es)
        self._edge: dict[str, REdge] = {}
        self._out: dict[str, list[REdge]] = {v: [] for v in self.vertices}
        self._in: dict[str, list[REdge]] = {v: [] for v in self.vertices}
        for f in self.edges:
            if f.id in self._edge:
                raise MalformedGraph(f"duplicate edge id {f.id!r}", field="redges")
            if f.src not in self._image or f.dst not in self._image:
                raise MalformedGraph(f"edge {f.id!r} references unknown vertex", field="redges")
            if not base.has_edge(f.image.edge):
                raise MalformedGraph(f"edge {f.id!r} has unknown image edge {f.image.edge!r}", field="edge")
            e = base.edge(f.image.edge)
            if not 1 <= f.image.tag <= e.weight:
                raise MalformedGraph(f"edge {f.id!r}: tag {f.image.tag} outside 1..{e.weight}", field="tag")
            if self._image[f.src] != e.src or self._image[f.dst] != e.dst:
                raise MalformedGraph(f"edge {f.id!r}: image {f.image} does not match endpoint images",
                                     field="edge")
            self._edge[f.id] = f
            self._out[f.src].append(f)
            self._in[f.dst].append(f)
        self.frontier: frozenset[str] = frozenset(frontier)
        if not self.frontier <= set(self.vertices):
            raise MalformedGraph("frontier lists unknown vertices", field="frontier")

    # basic access

    def image(self, v: str) -> str:
        return self._image[v]

    def edge(self, fid: str) -> REdge:
        return self._edge[fid]

    def out_edges(self, v: str) -> Sequence[REdge]:
        return self._out[v]

    def in_edges(self, v: str) -> Sequence[REdge]:
        return self._in[v]

    def __contains__(self, v) -> bool:
        return v in self._image

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other):
        return (isinstance(other, RepresentationGraph) and self.base == other.base
                and tuple(self._image.items()) == tuple(other._image.items())
                and self.edges == other.edges and self.frontier == other.frontier)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        extra = f", {len(self.frontier)} frontier" if self.frontier else ""
        return f"RepresentationGraph({len(self.vertices)} vertices, {len(self.edges)} edges{extra})"

    @property
    def is_truncated(self) -> bool:
        return bool(self.frontier)

    def slots(self, v: str) -> list[Slot]:
        x = self._image[v]
        return ([("out", i) for i in range(1, self.base.vertex_weight(x) + 1)]
                + [("in", e.id) for e in self.base.in_edges(x)])

    @cached_property
    def _slot_table(self) -> dict[str, dict[Slot, list[REdge]]]:
        t: dict[str, dict[Slot, list[REdge]]] = {v: {} for v in self.vertices}
        for f in self.edges:
            t[f.src].setdefault(("out", f.image.tag), []).append(f)
            t[f.dst].setdefault(("in", f.image.edge), []).append(f)
        return t

    def slot_edges(self, v: str, slot: Slot) -> list[REdge]:
        return self._slot_table[v].get(slot, [])

    def is_complete_at(self, v: str) -> bool:
        return all(len(self.slot_edges(v, s)) == 1 for s in self.slots(v))

    def incomplete_vertices(self) -> frozenset[str]:
        return frozenset(v for v in self.vertices if not self.is_complete_at(v))

    # action on the double graph

    def step(self, u: str, x: Letter):
        """(edge, endpoint) for the transition u --x-->, or None / TRUNCATED."""
        e = self.base.edge(x.edge) if self.base.has_edge(x.edge) else None
        if e is None or not 1 <= x.tag <= e.weight:
            return None
        here = self._image[u]
        if x.ghost:
            if e.dst != here:
                return None
            cands = self.slot_edges(u, ("in", x.edge))
            hit = [f for f in cands if f.image.tag == x.tag]
            if hit:
                return hit[0], hit[0].src
        else:
            if e.src != here:
                return None
            cands = self.slot_edges(u, ("out", x.tag))
            hit = [f for f in cands if f.image.edge == x.edge]
            if hit:
                return hit[0], hit[0].dst
        if not cands and u in self.frontier:
            return TRUNCATED
        return None

    def lift_step(self, u: str, x: Letter):
        r = self.step(u, x)
        return r[1] if isinstance(r, tuple) else r

    def lift_word(self, u: str, p: PathWord):
        """Endpoint of the lift of p from u, None if p does not lift, or TRUNCATED."""
        if self._image[u] != p.source:
            return None
        cur = u
        for x in p.letters:
            cur = self.lift_step(cur, x)
            if cur is None or cur is TRUNCATED:
                return cur
        return cur

    def transitions(self, u: str) -> list[tuple[Letter, str]]:
        """Known transitions at u, ordered by letter."""
        out = [(Letter(f.image, False), f.dst) for f in self._out[u]]
        out += [(Letter(f.image, True), f.src) for f in self._in[u]]
        out.sort(key=lambda t: self.base.letter_key(t[0]))
        return out

    # views

    def as_graph(self) -> WeightedGraph:
        return WeightedGraph(self.vertices, [Edge(f.id, f.src, f.dst, 1) for f in self.edges])

    def projection(self) -> tuple[dict[str, str], dict[str, str]]:
        """Vertex and edge maps into :func:`hat_graph` of the base."""
        return dict(self._image), {f.id: str(f.image) for f in self.edges}

    def is_connected(self) -> bool:
        return self.as_graph().is_connected()

    def with_frontier(self, frontier: Iterable[str]) -> RepresentationGraph:
        return RepresentationGraph(self.base, self._image, self.edges, frontier)

    def renamed(self, vertex_names: Mapping[str, str]) -> RepresentationGraph:
        vn = lambda v: vertex_names.get(v, v)
        return RepresentationGraph(self.base, [(vn(v), self._image[v]) for v in self.vertices],
                                   [REdge(f.id, vn(f.src), vn(f.dst), f.image) for f in self.edges],
                                   [vn(v) for v in self.frontier])


# validation

@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: int | None = None
    vertex: str | None = None
    slot: str | None = None
    problem: str | None = None
    witnesses: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        if self.ok:
            return {"ok": True}
        return {"ok": False, "axiom": self.axiom, "vertex": self.vertex, "slot": self.slot,
                "problem": self.problem, "witnesses": list(self.witnesses)}


def validate(F: RepresentationGraph) -> ValidationReport:
    """Check both lifting axioms; frontier vertices need at most one edge per slot."""
    for v in F.vertices:
        partial = v in F.frontier
        for kind, key in F.slots(v):
            es = F.slot_edges(v, (kind, key))
            axiom = 1 if kind == "out" else 2
            label = f"tag {key}" if kind == "out" else f"edge {key}"
            if len(es) > 1:
                return ValidationReport(False, axiom, v, label, "duplicated", tuple(f.id for f in es))
            if not es and not partial:
                return ValidationReport(False, axiom, v, label, "missing")
    return ValidationReport(True)


# similarity

@dataclass(frozen=True)
class VertexPartition:
    blocks: tuple[tuple[str, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[str]], vertices: Sequence[str]) -> VertexPartition:
        bs = [tuple(b) for b in blocks]
        flat = [v for b in bs for v in b]
        if len(flat) != len(set(flat)) or set(flat) != set(vertices):
            raise InputError("partition blocks must cover every vertex exactly once", field="partition")
        order = {v: k for k, v in enumerate(vertices)}
        bs = [tuple(sorted(b, key=order.__getitem__)) for b in bs if b]
        bs.sort(key=lambda b: order[b[0]])
        return cls(tuple(bs))

    @classmethod
    def discrete(cls, vertices: Sequence[str]) -> VertexPartition:
        return cls(tuple((v,) for v in vertices))

    @cached_property
    def block_of(self) -> dict[str, int]:
        return {v: k for k, b in enumerate(self.blocks) for v in b}

    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


def _moore(F: RepresentationGraph) -> VertexPartition:
    keyf = F.base.letter_key
    trans = {u: F.transitions(u) for u in F.vertices}

    def renumber(sig: dict) -> dict[str, int]:
        ids: dict = {}
        return {u: ids.setdefault(sig[u], len(ids)) for u in F.vertices}

    cls = renumber({u: (F.image(u), tuple(keyf(x) for x, _ in trans[u])) for u in F.vertices})
    while True:
        new = renumber({u: (cls[u], tuple((keyf(x), cls[t]) for x, t in trans[u]))
                        for u in F.vertices})
        if len(set(new.values())) == len(set(cls.values())):
            break
        cls = new
    blocks: dict[int, list[str]] = {}
    for u in F.vertices:
        blocks.setdefault(cls[u], []).append(u)
    return VertexPartition(tuple(tuple(b) for b in blocks.values()))


def distinguishable_pairs(F: RepresentationGraph) -> set[frozenset[str]]:
    """Pairs of vertices told apart by a word known at both ends.

    Two vertices are distinguished when their images differ, when a slot known
    at both carries different labels, or when a shared letter leads to a
    distinguished pair. Exact on complete graphs; on truncations it only uses
    data inside the truncation.
    """
    label: dict[str, dict[Slot, TaggedEdge]] = {}
    for u in F.vertices:
        d = {}
        for f in F.out_edges(u):
            d[("out", f.image.tag)] = f.image
        for f in F.in_edges(u):
            d[("in", f.image.edge)] = f.image
        label[u] = d
    moves = {u: dict(F.transitions(u)) for u in F.vertices}
    marked: set[frozenset[str]] = set()
    todo: list[tuple[str, str]] = []
    for u, v in combinations(F.vertices, 2):
        if F.image(u) != F.image(v) or any(label[v].get(s, t) != t for s, t in label[u].items()):
            marked.add(frozenset((u, v)))
            todo.append((u, v))
    while todo:
        x, y = todo.pop()
        my = moves[y]
        for a, u in moves[x].items():
            v = my.get(a)
            if v is None or u == v:
                continue
            key = frozenset((u, v))
            if key not in marked:
                marked.add(key)
                todo.append((u, v))
    return marked


def _compat_classes(F: RepresentationGraph) -> VertexPartition:
    marked = distinguishable_pairs(F)
    classes: dict[str, frozenset[str]] = {}
    for u in F.vertices:
        classes[u] = frozenset(v for v in F.vertices if v == u or frozenset((u, v)) not in marked)
    for u in F.vertices:
        for v in classes[u]:
            if classes[v] != classes[u]:
                raise TruncationTooShallow(
                    f"compatibility is not transitive at {u!r}/{v!r}; deepen the truncation")
    seen, blocks = set(), []
    for u in F.vertices:
        if u not in seen:
            b = tuple(v for v in F.vertices if v in classes[u])
            seen.update(b)
            blocks.append(b)
    return VertexPartition(tuple(blocks))


def similarity_partition(F: RepresentationGraph) -> VertexPartition:
    """Blocks of vertices with equal label languages.

    Complete graphs use Moore refinement. Truncations use the pairwise table and
    raise :class:`TruncationTooShallow` when compatibility is not transitive.
    """
    if F.is_truncated:
        return _compat_classes(F)
    return _moore(F)


def _same_class_oracle(F: RepresentationGraph):
    if F.is_truncated:
        marked = distinguishable_pairs(F)
        return lambda u, v: u == v or frozenset((u, v)) not in marked
    part = _moore(F)
    b = part.block_of
    return lambda u, v: b[u] == b[v]


def is_irreducible(F: RepresentationGraph) -> bool:
    """Connected with singleton similarity classes.

    On a truncation no two non-frontier vertices may share a compatibility
    class; raises :class:`TruncationTooShallow` when the classes are not
    well defined at this depth.
    """
    if not F.vertices or not F.is_connected():
        return False
    if not F.is_truncated:
        return _moore(F).is_discrete()
    marked = distinguishable_pairs(F)
    inner = [v for v in F.vertices if v not in F.frontier]
    same = {u: {v for v in inner if v == u or frozenset((u, v)) not in marked} for u in inner}
    for u in inner:
        for v in same[u]:
            if same[v] != same[u]:
                raise TruncationTooShallow(
                    f"compatibility of {u!r} and {v!r} is undecided at this depth")
    return all(len(c) == 1 for c in same.values())


# quotients

def quotient(F: RepresentationGraph, partition: VertexPartition, check: bool = True) -> RepresentationGraph:
    blocks = partition.blocks
    flat = [v for b in blocks for v in b]
    if len(flat) != len(set(flat)) or set(flat) != set(F.vertices):
        raise InputError("partition blocks must cover every vertex exactly once", field="partition")
    order = {v: k for k, v in enumerate(F.vertices)}
    blocks = sorted((tuple(sorted(b, key=order.__getitem__)) for b in blocks), key=lambda b: order[b[0]])
    rep = {v: b[0] for b in blocks for v in b}
    if check:
        same = _same_class_oracle(F)
        for b in blocks:
            for v in b[1:]:
                if not same(b[0], v):
                    for u in b:
                        if not same(u, v):
                            raise NotAdmissible("does not refine similarity", (u, v),
                                                f"images {F.image(u)!r}/{F.image(v)!r}")
            targets: dict[Letter, tuple[str, str]] = {}
            for u in b:
                for x, t in F.transitions(u):
                    if x in targets and rep[targets[x][1]] != rep[t]:
                        raise NotAdmissible("not a congruence", (targets[x][0], u), f"letter {x}")
                    targets.setdefault(x, (u, t))
    verts = [(b[0], F.image(b[0])) for b in blocks]
    seen: set = set()
    edges = []
    for f in F.edges:
        key = (rep[f.src], f.image)
        if key in seen:
            continue
        seen.add(key)
        edges.append(REdge(f.id, rep[f.src], rep[f.dst], f.image))
    Q = RepresentationGraph(F.base, verts, edges)
    if F.frontier:
        Q = Q.with_frontier(Q.incomplete_vertices())
    return Q


def minimize(F: RepresentationGraph) -> RepresentationGraph:
    if not F.is_connected():
        raise DisconnectedGraph("minimize needs a connected representation graph")
    return quotient(F, similarity_partition(F), check=False)


# morphisms

@dataclass(frozen=True)
class Morphism:
    source: RepresentationGraph
    target: RepresentationGraph
    vertex_map: dict[str, str]
    edge_map: dict[str, str]

    def to_dict(self) -> dict:
        return {"vertices": dict(self.vertex_map), "edges": dict(self.edge_map)}


_SEP = "\x1f"


def disjoint_union(F: RepresentationGraph, G: RepresentationGraph) -> RepresentationGraph:
    if F.base != G.base:
        raise InputError("graphs over different base graphs")
    a = lambda v: "F" + _SEP + v
    b = lambda v: "G" + _SEP + v
    verts = [(a(v), F.image(v)) for v in F.vertices] + [(b(v), G.image(v)) for v in G.vertices]
    edges = ([REdge(a(f.id), a(f.src), a(f.dst), f.image) for f in F.edges]
             + [REdge(b(f.id), b(f.src), b(f.dst), f.image) for f in G.edges])
    return RepresentationGraph(F.base, verts, edges, [a(v) for v in F.frontier] + [b(v) for v in G.frontier])


def _extend(F: RepresentationGraph, G: RepresentationGraph, root: str, start: str):
    vmap = {root: start}
    emap: dict[str, str] = {}
    todo = deque([root])
    while todo:
        u = todo.popleft()
        for x, t in F.transitions(u):
            f = F.step(u, x)[0]
            r = G.step(vmap[u], x)
            if not isinstance(r, tuple):
                return None
            g, gt = r
            if emap.setdefault(f.id, g.id) != g.id:
                return None
            if t in vmap:
                if vmap[t] != gt:
                    return None
            else:
                vmap[t] = gt
                todo.append(t)
    if len(vmap) != len(F.vertices):
        return None
    return vmap, emap


def is_quotient_of(F: RepresentationGraph, G: RepresentationGraph) -> Morphism | None:
    """A morphism F -> G over Ê, or None if there is none.

    The first F-vertex is the root; G-vertices equivalent to it are tried in
    order and the first conflict-free extension that is a covering is returned.
    """
    if not F.vertices or not G.vertices:
        return None
    if not F.is_connected() or not G.is_connected():
        raise DisconnectedGraph("is_quotient_of needs connected graphs")
    U = disjoint_union(F, G)
    same = _same_class_oracle(U)
    root = F.vertices[0]
    FG, GG = F.as_graph(), G.as_graph()
    for cand in G.vertices:
        if not same("F" + _SEP + root, "G" + _SEP + cand):
            continue
        ext = _extend(F, G, root, cand)
        if ext is None:
            continue
        vmap, emap = ext
        partial = set(F.frontier) | {v for v in F.vertices if vmap[v] in G.frontier}
        if is_covering(FG, GG, vmap, emap, partial):
            return Morphism(F, G, vmap, emap)
    return None


def isomorphism(F: RepresentationGraph, G: RepresentationGraph) -> Morphism | None:
    """An isomorphism F -> G, or None."""
    if len(F.vertices) != len(G.vertices) or len(F.edges) != len(G.edges):
        return None
    if not F.vertices:
        return Morphism(F, G, {}, {})
    m = is_quotient_of(F, G)
    if m is None or len(set(m.vertex_map.values())) != len(G.vertices):
        return None
    return m


EQUIVALENCE_DEPTH = 3


def _bounded_agreement(F: RepresentationGraph, G: RepresentationGraph, depth: int) -> set[tuple[str, str]]:
    """Pairs (u, v) whose lifts of every word of length <= depth end alike.

    "Alike" compares outcome kinds: both lift (to an agreeing pair), both
    vanish, or both leave the truncation.
    """
    letters = F.base.letters
    pairs = {(u, v) for u in F.vertices for v in G.vertices if F.image(u) == G.image(v)}
    for _ in range(depth):
        keep = set()
        for u, v in pairs:
            for x in letters:
                a, b = F.lift_step(u, x), G.lift_step(v, x)
                if a is None or a is TRUNCATED or b is None or b is TRUNCATED:
                    if a is not b:
                        break
                elif (a, b) not in pairs:
                    break
            else:
                keep.add((u, v))
        if keep == pairs:
            break
        pairs = keep
    return pairs


def are_equivalent(F: RepresentationGraph, G: RepresentationGraph, depth: int | None = None) -> bool:
    """Some F-vertex and some G-vertex have the same label language.

    Complete graphs are decided exactly. When either side is truncated the
    answer is relative to ``depth`` (default EQUIVALENCE_DEPTH): a pair counts
    only if every word of at most that many letters behaves the same from both.
    """
    if F.base != G.base:
        raise InputError("graphs over different base graphs")
    if not F.is_truncated and not G.is_truncated:
        U = disjoint_union(F, G)
        same = _same_class_oracle(U)
        return any(same("F" + _SEP + u, "G" + _SEP + v) for u in F.vertices for v in G.vertices)
    return bool(_bounded_agreement(F, G, EQUIVALENCE_DEPTH if depth is None else depth))


# universal representation

@dataclass(frozen=True)
class TruncatedUniversalRep:
    graph: RepresentationGraph
    root: str
    words: dict[str, PathWord]
    lift: dict[str, str]
    # V_T is indecomposable for every universal representation; recorded, not computed.
    indecomposable_by_theorem: bool = True

    @property
    def frontier(self) -> frozenset[str]:
        return self.graph.frontier


def universal_representation(F: RepresentationGraph, u: str, depth: int) -> TruncatedUniversalRep:
    """Tree of non-backtracking words readable from u, up to ``depth`` letters."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    E = F.base
    root = F.image(u)
    words = {root: PathWord(root)}
    lift = {root: u}
    verts = [(root, root)]
    edges: list[REdge] = []
    unknown: set[str] = set()
    level = [root]
    for _ in range(depth):
        nxt = []
        for vid in level:
            p = words[vid]
            last = p.letters[-1] if p.letters else None
            for x in E.letters_from(p.target):
                if last is not None and x == last.inverse():
                    continue
                t = F.lift_step(lift[vid], x)
                if t is TRUNCATED:
                    unknown.add(vid)
                    continue
                if t is None:
                    continue
                q = PathWord(p.source, p.letters + (x,), E.letter_target(x))
                cid = str(q)
                words[cid] = q
                lift[cid] = t
                verts.append((cid, q.target))
                src, dst = (cid, vid) if x.ghost else (vid, cid)
                edges.append(REdge(cid, src, dst, x.base))
                nxt.append(cid)
        level = nxt
    T = RepresentationGraph(E, verts, edges)
    T = T.with_frontier(T.incomplete_vertices() | unknown)
    return TruncatedUniversalRep(T, root, words, lift)


def relabel_through_covering(F: RepresentationGraph, E: WeightedGraph,
                             vertex_map: Mapping[str, str], edge_map: Mapping[str, str]) -> RepresentationGraph:
    """Push a representation graph of a cover T down to E along the covering T -> E."""
    verts = [(v, vertex_map[F.image(v)]) for v in F.vertices]
    edges = [REdge(f.id, f.src, f.dst, TaggedEdge(edge_map[f.image.edge], f.image.tag)) for f in F.edges]
    return RepresentationGraph(E, verts, edges, F.frontier)


def hat_projection_is_immersion(F: RepresentationGraph) -> bool:
    from .graph import is_immersion
    vmap, emap = F.projection()
    return is_immersion(F.as_graph(), hat_graph(F.base), vmap, emap)
