"""Weight-one graphs: Chen modules and their representation graphs.

Basis paths are eventually periodic infinite paths (``EvPeriodicPath``) or
finite paths into a sink (``SinkPath``); both are plain tuples of edge ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

from .action import ModuleVector, check_module_relations, rep_step
from .algebra import AlgebraElement
from .errors import (FieldMismatch, InputError, NotASink, NotSimpleCycle, NotWeightOne,
                     TruncatedError)
from .field import QQ, Field
from .graph import TaggedEdge, WeightedGraph
from .representation import TRUNCATED, REdge, RepresentationGraph


def smallest_period(word: Sequence) -> int:
    """Least p dividing len(word) with word == word[:p] * (len/p)."""
    n = len(word)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and word[i] != word[k]:
            k = fail[k - 1]
        if word[i] == word[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1] if n else 0
    return p if n and n % p == 0 else n


def is_primitive(word: Sequence) -> bool:
    return bool(word) and smallest_period(word) == len(word)


def least_rotation(word: tuple) -> tuple:
    return min(word[i:] + word[:i] for i in range(len(word))) if word else word


@dataclass(frozen=True)
class EvPeriodicPath:
    """prefix · cycle · cycle · ... with a primitive cycle and shortest prefix."""

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    @classmethod
    def make(cls, prefix: Sequence[str], cycle: Sequence[str]) -> EvPeriodicPath:
        prefix, cycle = tuple(prefix), tuple(cycle)
        if not cycle:
            raise InputError("cycle must be nontrivial")
        cycle = cycle[:smallest_period(cycle)]
        while prefix and prefix[-1] == cycle[-1]:
            cycle = cycle[-1:] + cycle[:-1]
            prefix = prefix[:-1]
        return cls(prefix, cycle)

    def first(self) -> str:
        return (self.prefix or self.cycle)[0]

    def tail(self) -> EvPeriodicPath:
        """τ_{>1}"""
        if self.prefix:
            return EvPeriodicPath(self.prefix[1:], self.cycle)
        return EvPeriodicPath((), self.cycle[1:] + self.cycle[:1])

    def prepend(self, e: str) -> EvPeriodicPath:
        return EvPeriodicPath.make((e,) + self.prefix, self.cycle)

    def class_key(self) -> tuple:
        return least_rotation(self.cycle)

    def head(self, n: int) -> tuple[str, ...]:
        out = list(self.prefix)
        while len(out) < n:
            out.extend(self.cycle)
        return tuple(out[:n])

    def __str__(self):
        return f"{'.'.join(self.prefix) or '()'}({'.'.join(self.cycle)})^inf"

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "cycle": list(self.cycle)}


@dataclass(frozen=True)
class SinkPath:
    """A finite path ending at ``sink``; empty edges mean the sink itself."""

    edges: tuple[str, ...]
    sink: str

    def first(self) -> str | None:
        return self.edges[0] if self.edges else None

    def tail(self) -> SinkPath:
        return SinkPath(self.edges[1:], self.sink)

    def prepend(self, e: str) -> SinkPath:
        return SinkPath((e,) + self.edges, self.sink)

    def __str__(self):
        return ".".join(self.edges) or self.sink

    def to_json(self) -> dict:
        return {"path": list(self.edges), "sink": self.sink}


@dataclass(frozen=True)
class PathPrefix:
    """Known initial segment of an infinite path; ``end`` is its range vertex."""

    edges: tuple[str, ...]
    end: str

    def first(self):
        return self.edges[0] if self.edges else TRUNCATED

    def tail(self) -> PathPrefix:
        return PathPrefix(self.edges[1:], self.end)

    def prepend(self, e: str) -> PathPrefix:
        return PathPrefix((e,) + self.edges, self.end)

    def __str__(self):
        return ".".join(self.edges) + "..."

    def to_json(self) -> dict:
        return {"known_prefix": list(self.edges), "end": self.end}


def path_source(E: WeightedGraph, q) -> str:
    e = q.first()
    if isinstance(e, str):
        return E.edge(e).src
    return q.sink if isinstance(q, SinkPath) else q.end


def tail_equivalent(p: EvPeriodicPath, q: EvPeriodicPath) -> bool:
    p, q = EvPeriodicPath.make(p.prefix, p.cycle), EvPeriodicPath.make(q.prefix, q.cycle)
    if len(p.cycle) != len(q.cycle):
        return False
    doubled = p.cycle + p.cycle
    n = len(q.cycle)
    return any(doubled[i:i + n] == q.cycle for i in range(n))


def chen_step(E: WeightedGraph) -> Callable:
    def step(q, g):
        if isinstance(g, str):
            return q if path_source(E, q) == g else None
        if g.tag != 1:
            return None
        if g.ghost:
            return q.prepend(g.edge) if E.edge(g.edge).dst == path_source(E, q) else None
        first = q.first()
        if first is TRUNCATED:
            return TRUNCATED
        return q.tail() if first == g.edge else None
    return step


def chen_act(x: ModuleVector, a: AlgebraElement, E: WeightedGraph) -> ModuleVector:
    if x.field != a.field:
        raise FieldMismatch("vector and algebra element over different fields")
    step = chen_step(E)
    out: dict = {}
    for q, k in x.support.items():
        for p, c in a.terms.items():
            cur = step(q, p.source)
            for g in p.letters:
                if cur is None:
                    break
                cur = step(cur, g)
            if cur is TRUNCATED:
                raise TruncatedError(f"{p} runs past the known part of {q}")
            if cur is not None:
                out[cur] = out.get(cur, x.field.zero) + k * c
    return ModuleVector(x.field, out)


def check_chen_relations(E: WeightedGraph, basis: Sequence, field: Field = QQ):
    """The defining relations evaluated on the given Chen basis paths."""
    return check_module_relations(E, basis, chen_step(E), field)


# constructions

@dataclass(frozen=True)
class ChenConstruction:
    graph: RepresentationGraph
    dictionary: dict = field(default_factory=dict)

    @property
    def frontier(self) -> frozenset[str]:
        return self.graph.frontier

    def dictionary_json(self) -> dict:
        return {v: (p.to_json() if hasattr(p, "to_json") else p) for v, p in self.dictionary.items()}


def _require_weight_one(E: WeightedGraph):
    if not E.is_weight_one:
        raise NotWeightOne("Chen constructions need every edge to have weight one")


def _check_path(E: WeightedGraph, edges: Sequence[str], what: str):
    for e in edges:
        if not E.has_edge(e):
            raise InputError(f"{what}: unknown edge {e!r}", field=what)
    for a, b in zip(edges, edges[1:]):
        if E.edge(a).dst != E.edge(b).src:
            raise InputError(f"{what}: {a!r} then {b!r} is not composable", field=what)


def _side_paths(E: WeightedGraph, target: str, banned: str | None, depth: int) -> list[tuple[str, ...]]:
    """Nontrivial paths ending at ``target``, last edge not ``banned``, length <= depth."""
    level = [(e.id,) for e in E.in_edges(target) if e.id != banned] if depth > 0 else []
    out = list(level)
    for _ in range(depth - 1):
        level = [(e.id,) + q for q in level for e in E.in_edges(E.edge(q[0]).src)]
        out.extend(level)
    return out


def _join(q: Sequence[str]) -> str:
    return ".".join(q)


def _add_side_tree(E, verts, edges, i_name: str, anchor: str, qs):
    for q in qs:
        vid = f"{i_name}:{_join(q)}"
        verts.append((vid, E.edge(q[0]).src))
        dst = anchor if len(q) == 1 else f"{i_name}:{_join(q[1:])}"
        edges.append(REdge(f"f{vid[1:]}", vid, dst, TaggedEdge(q[0], 1)))


def _finish(E, verts, edges, dictionary) -> ChenConstruction:
    F = RepresentationGraph(E, verts, edges)
    return ChenConstruction(F.with_frontier(F.incomplete_vertices()), dictionary)


def rational_rep_graph(E: WeightedGraph, c: Sequence[str], depth: int) -> ChenConstruction:
    """Spine for the primitive cycle c plus side trees of the given depth."""
    _require_weight_one(E)
    c = tuple(c)
    if not c:
        raise NotSimpleCycle("empty cycle")
    _check_path(E, c, "cycle")
    if E.edge(c[-1]).dst != E.edge(c[0]).src:
        raise NotSimpleCycle(f"{_join(c)} is not closed")
    if not is_primitive(c):
        raise NotSimpleCycle(f"{_join(c)} is a power of a shorter cycle")
    n = len(c)
    verts, edges, gamma = [], [], {}
    for i in range(1, n + 1):
        vid = f"v{i}"
        verts.append((vid, E.edge(c[i - 1]).src))
        edges.append(REdge(f"f{i}", vid, f"v{i % n + 1}", TaggedEdge(c[i - 1], 1)))
        gamma[vid] = EvPeriodicPath.make((), c[i - 1:] + c[:i - 1])
    for i in range(1, n + 1):
        qs = _side_paths(E, E.edge(c[i - 1]).src, c[i - 2], depth)
        _add_side_tree(E, verts, edges, f"v{i}", f"v{i}", qs)
        for q in qs:
            gamma[f"v{i}:{_join(q)}"] = EvPeriodicPath.make(q, gamma[f"v{i}"].cycle)
    return _finish(E, verts, edges, gamma)


def sink_rep_graph(E: WeightedGraph, u: str, depth: int) -> ChenConstruction:
    """v for the sink plus v_p for nontrivial paths p into it, |p| <= depth."""
    _require_weight_one(E)
    if u not in E.vertices:
        raise InputError(f"unknown vertex {u!r}", field="sink")
    if not E.is_sink(u):
        raise NotASink(f"{u!r} emits edges")
    verts, edges = [("v", u)], []
    alpha = {"v": SinkPath((), u)}
    qs = _side_paths(E, u, None, depth)
    _add_side_tree(E, verts, edges, "v", "v", qs)
    for q in qs:
        alpha[f"v:{_join(q)}"] = SinkPath(q, u)
    return _finish(E, verts, edges, alpha)


def irrational_rep_graph(E: WeightedGraph, prefix: Sequence[str], depth: int,
                         start: str | None = None) -> ChenConstruction:
    """Truncation: spine v_1..v_{m+1} along p_1..p_m, side trees at v_1..v_m.

    v_{m+1} is a bare frontier vertex standing in for the unknown tail.
    """
    _require_weight_one(E)
    p = tuple(prefix)
    _check_path(E, p, "prefix")
    if not p:
        s = start if start is not None else E.vertices[0]
        F = RepresentationGraph(E, [("v1", s)], [])
        return ChenConstruction(F.with_frontier(["v1"]), {"v1": PathPrefix((), s)})
    m = len(p)
    verts, edges, beta = [], [], {}
    for i in range(1, m + 2):
        vid = f"v{i}"
        verts.append((vid, E.edge(p[i - 1]).src if i <= m else E.edge(p[-1]).dst))
        if i <= m:
            edges.append(REdge(f"f{i}", vid, f"v{i + 1}", TaggedEdge(p[i - 1], 1)))
        beta[vid] = PathPrefix(p[i - 1:], E.edge(p[-1]).dst)
    for i in range(1, m + 1):
        anchor = verts[i - 1][1]
        qs = _side_paths(E, anchor, p[i - 2] if i >= 2 else None, depth)
        _add_side_tree(E, verts, edges, f"v{i}", f"v{i}", qs)
        for q in qs:
            beta[f"v{i}:{_join(q)}"] = PathPrefix(q + p[i - 1:], E.edge(p[-1]).dst)
    F = RepresentationGraph(E, verts, edges)
    return ChenConstruction(F.with_frontier(F.incomplete_vertices() | {f"v{m + 1}"}), beta)


# agreement oracle

@dataclass
class OracleReport:
    checked: int = 0
    skipped: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self, limit: int = 20) -> dict:
        return {"ok": self.ok, "checked": self.checked, "skipped": self.skipped,
                "mismatch_count": len(self.mismatches), "mismatches": self.mismatches[:limit]}


def agreement_oracle(construction: ChenConstruction, word_budget: int) -> OracleReport:
    """Compare the graph action with the path action through the dictionary.

    Every non-frontier vertex is tried against every word of at most
    ``word_budget`` letters (and every vertex idempotent); words whose lift
    leaves the truncation are skipped.
    """
    F = construction.graph
    E = F.base
    gamma = construction.dictionary
    fstep, cstep = rep_step(F), chen_step(E)
    report = OracleReport()
    words = [(v,) for v in E.vertices]
    for n in range(1, word_budget + 1):
        words.extend(product(E.letters, repeat=n))
    for x in F.vertices:
        if x in F.frontier:
            continue
        for w in words:
            a = x
            for g in w:
                a = fstep(a, g)
                if a is None or a is TRUNCATED:
                    break
            if a is TRUNCATED:
                report.skipped += 1
                continue
            b = _chen_word(cstep, gamma[x], w)
            if b is TRUNCATED:
                report.skipped += 1
                continue
            report.checked += 1
            if (a is None) != (b is None) or (a is not None and gamma[a] != b):
                report.mismatches.append({
                    "vertex": x, "word": " ".join(g if isinstance(g, str) else str(g) for g in w),
                    "graph": a, "expected": str(b) if b is not None else None,
                    "graph_path": str(gamma[a]) if a is not None else None})
    return report


def _chen_word(step, q, word):
    for g in word:
        q = step(q, g)
        if q is None or q is TRUNCATED:
            return q
    return q


def chen_agreement_oracle(E: WeightedGraph, c: Sequence[str], depth: int, word_budget: int) -> OracleReport:
    return agreement_oracle(rational_rep_graph(E, c, depth), word_budget)
