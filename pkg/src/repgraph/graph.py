"""Weighted graphs, the tagged graph Ê, double-graph words, coverings."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DisconnectedGraph, MalformedGraph, MalformedHomomorphism, ParseError


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str
    weight: int = 1


@dataclass(frozen=True, order=True)
class TaggedEdge:
    """The copy e_i of a structure edge e."""

    edge: str
    tag: int

    def __str__(self) -> str:
        return f"{self.edge}[{self.tag}]"


@dataclass(frozen=True)
class Letter:
    """A letter of Ê_d: the real edge e_i or its ghost e_i^*."""

    base: TaggedEdge
    ghost: bool = False

    @property
    def edge(self) -> str:
        return self.base.edge

    @property
    def tag(self) -> int:
        return self.base.tag

    def inverse(self) -> Letter:
        return Letter(self.base, not self.ghost)

    def __str__(self) -> str:
        return f"{self.base}*" if self.ghost else str(self.base)


def real(edge: str, tag: int = 1) -> Letter:
    return Letter(TaggedEdge(edge, tag), False)


def ghost(edge: str, tag: int = 1) -> Letter:
    return Letter(TaggedEdge(edge, tag), True)


_LETTER_RE = re.compile(r"\s*([A-Za-z_][\w.]*)\s*\[\s*(\d+)\s*\]\s*(\*?)\s*")


def parse_letter(text: str) -> Letter:
    m = _LETTER_RE.fullmatch(text)
    if not m:
        raise ParseError(f"bad letter {text!r}; expected like 'e[1]' or 'e[1]*'")
    return Letter(TaggedEdge(m.group(1), int(m.group(2))), bool(m.group(3)))


@dataclass(frozen=True)
class DegreeVector:
    components: tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> DegreeVector:
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, tag: int, sign: int = 1) -> DegreeVector:
        c = [0] * n
        c[tag - 1] = sign
        return cls(tuple(c))

    def __add__(self, other: DegreeVector) -> DegreeVector:
        return DegreeVector(tuple(a + b for a, b in zip(self.components, other.components, strict=True)))

    def __neg__(self) -> DegreeVector:
        return DegreeVector(tuple(-a for a in self.components))

    def __sub__(self, other: DegreeVector) -> DegreeVector:
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


@dataclass(frozen=True)
class PathWord:
    """A composable word in Ê_d; the empty word is the trivial path at ``source``."""

    source: str
    letters: tuple[Letter, ...] = ()
    target: str = ""

    def __post_init__(self):
        if not self.target and not self.letters:
            object.__setattr__(self, "target", self.source)

    def __len__(self) -> int:
        return len(self.letters)

    def is_trivial(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return self.source
        return " ".join(map(str, self.letters))

    def concat(self, other: PathWord) -> PathWord | None:
        """Concatenation, or None when r(self) != s(other)."""
        if self.target != other.source:
            return None
        return PathWord(self.source, self.letters + other.letters, other.target)

    def reversed(self) -> PathWord:
        return PathWord(self.target, tuple(x.inverse() for x in reversed(self.letters)), self.source)


class WeightedGraph:
    """A finite directed graph with positive integer edge weights.

    Vertices and edges keep their input order; every derived enumeration
    (tagged edges, letters) is ordered from it.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge | tuple]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        es = []
        for e in edges:
            es.append(e if isinstance(e, Edge) else Edge(*e))
        self.edges: tuple[Edge, ...] = tuple(es)
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedGraph("duplicate vertex id", field="vertices")
        vs = set(self.vertices)
        self._edge: dict[str, Edge] = {}
        for e in self.edges:
            if e.id in self._edge:
                raise MalformedGraph(f"duplicate edge id {e.id!r}", field="edges")
            if e.src not in vs or e.dst not in vs:
                raise MalformedGraph(f"edge {e.id!r} references unknown vertex", field="edges")
            if not isinstance(e.weight, int) or e.weight < 1:
                raise MalformedGraph(f"edge {e.id!r} has non-positive weight {e.weight!r}", field="weight")
            self._edge[e.id] = e
        self._edge_index = {e.id: k for k, e in enumerate(self.edges)}
        self._out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        self._in: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            self._out[e.src].append(e)
            self._in[e.dst].append(e)

    def __eq__(self, other):
        return isinstance(other, WeightedGraph) and (self.vertices, self.edges) == (other.vertices, other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"WeightedGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def edge(self, eid: str) -> Edge:
        return self._edge[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._edge

    def out_edges(self, v: str) -> Sequence[Edge]:
        return self._out[v]

    def in_edges(self, v: str) -> Sequence[Edge]:
        return self._in[v]

    def vertex_weight(self, v: str) -> int:
        return max((e.weight for e in self._out[v]), default=0)

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    @cached_property
    def max_weight(self) -> int:
        return max((e.weight for e in self.edges), default=0)

    @cached_property
    def is_weight_one(self) -> bool:
        return all(e.weight == 1 for e in self.edges)

    # Ê and its double

    @cached_property
    def tagged_edges(self) -> tuple[TaggedEdge, ...]:
        return tuple(TaggedEdge(e.id, i) for e in self.edges for i in range(1, e.weight + 1))

    @cached_property
    def letters(self) -> tuple[Letter, ...]:
        """All letters of Ê_d ordered by (edge order, tag, real before ghost)."""
        return tuple(Letter(t, g) for t in self.tagged_edges for g in (False, True))

    def letter_key(self, x: Letter) -> tuple[int, int, bool]:
        return (self._edge_index[x.edge], x.tag, x.ghost)

    def is_letter(self, x: Letter) -> bool:
        e = self._edge.get(x.edge)
        return e is not None and 1 <= x.tag <= e.weight

    def letter_source(self, x: Letter) -> str:
        e = self._edge[x.edge]
        return e.dst if x.ghost else e.src

    def letter_target(self, x: Letter) -> str:
        e = self._edge[x.edge]
        return e.src if x.ghost else e.dst

    @cached_property
    def _letters_from(self) -> dict[str, tuple[Letter, ...]]:
        d: dict[str, list[Letter]] = {v: [] for v in self.vertices}
        for x in self.letters:
            d[self.letter_source(x)].append(x)
        return {v: tuple(xs) for v, xs in d.items()}

    def letters_from(self, v: str) -> tuple[Letter, ...]:
        return self._letters_from[v]

    def word(self, source: str, letters: Iterable[Letter] = ()) -> PathWord:
        """Build a composable PathWord, raising ParseError if it is not one."""
        if source not in self._out:
            raise ParseError(f"unknown vertex {source!r}")
        cur = source
        xs = tuple(letters)
        for x in xs:
            if not self.is_letter(x):
                raise ParseError(f"{x} is not a letter of this graph")
            if self.letter_source(x) != cur:
                raise ParseError(f"{x} does not start at {cur!r}")
            cur = self.letter_target(x)
        return PathWord(source, xs, cur)

    def word_from_letters(self, letters: Sequence[Letter]) -> PathWord:
        if not letters:
            raise ParseError("empty word needs an explicit source")
        return self.word(self.letter_source(letters[0]), letters)

    def parse_word(self, text: str, source: str | None = None) -> PathWord:
        """Parse ``"e[1] f[2]*"``; a bare vertex id denotes the trivial path."""
        toks = text.split()
        if len(toks) == 1 and toks[0] in self._out:
            return PathWord(toks[0])
        xs = [parse_letter(t) for t in toks]
        if source is None:
            return self.word_from_letters(xs)
        return self.word(source, xs)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            v = todo.pop()
            for e in self._out[v]:
                if e.dst not in seen:
                    seen.add(e.dst)
                    todo.append(e.dst)
            for e in self._in[v]:
                if e.src not in seen:
                    seen.add(e.src)
                    todo.append(e.src)
        return len(seen) == len(self.vertices)


def build_hat_graph(E: WeightedGraph) -> tuple[TaggedEdge, ...]:
    return E.tagged_edges


def hat_graph(E: WeightedGraph) -> WeightedGraph:
    """Ê as a weight-one graph; edge ids are the tagged names ``e[i]``."""
    return WeightedGraph(E.vertices, [Edge(str(t), E.edge(t.edge).src, E.edge(t.edge).dst, 1)
                                      for t in E.tagged_edges])


def is_reduced(p: PathWord) -> bool:
    return all(a.base != b.base or a.ghost == b.ghost for a, b in zip(p.letters, p.letters[1:]))


def length_vector(p: PathWord, n: int) -> DegreeVector:
    c = [0] * n
    for x in p.letters:
        c[x.tag - 1] += -1 if x.ghost else 1
    return DegreeVector(tuple(c))


# coverings and immersions

def _check_homomorphism(F: WeightedGraph, G: WeightedGraph,
                        vmap: Mapping[str, str], emap: Mapping[str, str]) -> None:
    for v in F.vertices:
        if v not in vmap or vmap[v] not in G.vertices:
            raise MalformedHomomorphism(f"vertex {v!r} has no image in the target")
    for f in F.edges:
        if f.id not in emap or not G.has_edge(emap[f.id]):
            raise MalformedHomomorphism(f"edge {f.id!r} has no image in the target")
        g = G.edge(emap[f.id])
        if vmap[f.src] != g.src or vmap[f.dst] != g.dst:
            raise MalformedHomomorphism(f"edge {f.id!r}: endpoints not preserved")
        if f.weight != g.weight:
            raise MalformedHomomorphism(f"edge {f.id!r}: weight {f.weight} mapped to {g.weight}")


def _fiber_ok(images: list[str], targets: Sequence[Edge], onto: bool) -> bool:
    if len(set(images)) != len(images):
        return False
    return not onto or set(images) == {g.id for g in targets}


def is_covering(F: WeightedGraph, G: WeightedGraph, vmap: Mapping[str, str],
                emap: Mapping[str, str], partial: Iterable[str] = ()) -> bool:
    """Onto, and bijective on every s- and r-fiber.

    Vertices listed in ``partial`` (truncation frontiers) only need injective fibers.
    """
    _check_homomorphism(F, G, vmap, emap)
    if set(vmap[v] for v in F.vertices) != set(G.vertices):
        return False
    if set(emap[f.id] for f in F.edges) != {g.id for g in G.edges}:
        return False
    relaxed = set(partial)
    for v in F.vertices:
        full = v not in relaxed
        if not _fiber_ok([emap[f.id] for f in F.out_edges(v)], G.out_edges(vmap[v]), full):
            return False
        if not _fiber_ok([emap[f.id] for f in F.in_edges(v)], G.in_edges(vmap[v]), full):
            return False
    return True


def is_immersion(F: WeightedGraph, G: WeightedGraph, vmap: Mapping[str, str],
                 emap: Mapping[str, str]) -> bool:
    """Injective on every s-fiber."""
    _check_homomorphism(F, G, vmap, emap)
    return all(_fiber_ok([emap[f.id] for f in F.out_edges(v)], (), False) for v in F.vertices)


# universal covers

@dataclass(frozen=True)
class CoverTree:
    """A depth truncation of a universal cover together with its projection."""

    graph: WeightedGraph
    root: str
    vertex_map: dict[str, str]
    edge_map: dict[str, str]
    frontier: frozenset[str] = field(default_factory=frozenset)


def _word_id(prefix: str, letters: Sequence[str]) -> str:
    return prefix if not letters else " ".join(letters)


def universal_cover(E: WeightedGraph, base: str, depth: int) -> CoverTree:
    """Tree of reduced paths in E_d from ``base`` of length at most ``depth``.

    Letters here are untagged: ``e`` and ``e*``. Vertex ids are the words; the
    root is named after ``base``; each edge is named after its child vertex.
    """
    if not E.is_connected():
        raise DisconnectedGraph("universal cover needs a connected graph")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    vertices = [base]
    edges: list[Edge] = []
    vmap = {base: base}
    emap: dict[str, str] = {}
    frontier = []
    level = [(base, (), None)]  # (vertex id, letters, last (edge, is_ghost))
    for d in range(depth + 1):
        nxt = []
        for vid, word, last in level:
            if d == depth:
                frontier.append(vid)
                continue
            at = vmap[vid]
            steps = [(e, False) for e in E.out_edges(at)] + [(e, True) for e in E.in_edges(at)]
            steps.sort(key=lambda s: (E._edge_index[s[0].id], s[1]))
            for e, is_ghost in steps:
                if last == (e.id, not is_ghost):
                    continue
                w = word + (e.id + ("*" if is_ghost else ""),)
                cid = _word_id(base, w)
                vertices.append(cid)
                vmap[cid] = e.src if is_ghost else e.dst
                src, dst = (cid, vid) if is_ghost else (vid, cid)
                edges.append(Edge(cid, src, dst, e.weight))
                emap[cid] = e.id
                nxt.append((cid, w, (e.id, is_ghost)))
        level = nxt
    return CoverTree(WeightedGraph(vertices, edges), base, vmap, emap, frozenset(frontier))


def hat_universal_cover(E: WeightedGraph, base: str, depth: int) -> CoverTree:
    """Universal cover of Ê (generally different from the hat of E's cover)."""
    return universal_cover(hat_graph(E), base, depth)
