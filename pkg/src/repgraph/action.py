"""The module V_F: action, defining relations, simplicity, grading, homomorphisms.

Everything here works over a "monomial module": a basis together with a
``step(b, generator)`` returning another basis element, ``None`` for zero, or
TRUNCATED when a truncation cannot answer. V_F, branching systems, action
tables and Chen modules all fit this shape, so one relation checker serves
them all.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence, Union

from .algebra import AlgebraElement, format_terms
from .errors import DisconnectedGraph, FieldMismatch, TruncatedError
from .field import QQ, Field, Scalar
from .graph import DegreeVector, Letter, PathWord, TaggedEdge, WeightedGraph, length_vector
from .representation import TRUNCATED, RepresentationGraph, is_irreducible

Generator = Union[str, Letter]


class ModuleVector:
    """Finitely supported combination of basis elements."""

    __slots__ = ("field", "support")

    def __init__(self, field: Field = QQ, support: Mapping[Hashable, Scalar | int] | None = None):
        self.field = field
        self.support: dict = {}
        for b, c in (support or {}).items():
            c = field(c)
            if not c.is_zero():
                self.support[b] = c

    @classmethod
    def basis(cls, field: Field, b) -> ModuleVector:
        return cls(field, {b: 1})

    def __add__(self, other: ModuleVector) -> ModuleVector:
        if self.field != other.field:
            raise FieldMismatch("module vectors over different fields")
        out = dict(self.support)
        for b, c in other.support.items():
            out[b] = out.get(b, self.field.zero) + c
        return ModuleVector(self.field, out)

    def scale(self, k) -> ModuleVector:
        k = self.field(k)
        return ModuleVector(self.field, {b: k * c for b, c in self.support.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.field == other.field and self.support == other.support

    def __hash__(self):
        return hash((self.field, frozenset(self.support.items())))

    def is_zero(self) -> bool:
        return not self.support

    def __len__(self):
        return len(self.support)

    def to_dict(self) -> dict[str, str]:
        return {str(b): str(c) for b, c in self.support.items()}

    def __str__(self):
        return format_terms((str(b), c) for b, c in self.support.items())

    def __repr__(self):
        return f"ModuleVector({self.field.name}: {self})"


def act(x: ModuleVector, a: AlgebraElement, F: RepresentationGraph) -> ModuleVector:
    """x · a in V_F. Raises TruncatedError if a lift leaves a truncation."""
    if x.field != a.field:
        raise FieldMismatch("vector and algebra element over different fields")
    out: dict[str, Scalar] = {}
    for u, k in x.support.items():
        for p, c in a.terms.items():
            v = F.lift_word(u, p)
            if v is TRUNCATED:
                raise TruncatedError(f"{u} · {p} leaves the truncation")
            if v is not None:
                out[v] = out.get(v, x.field.zero) + k * c
    return ModuleVector(x.field, out)


def generators(E: WeightedGraph) -> list[Generator]:
    """Vertices of E, then the letters of Ê_d in canonical order."""
    return list(E.vertices) + list(E.letters)


def rep_step(F: RepresentationGraph) -> Callable:
    def step(u, g):
        if isinstance(g, str):
            return u if F.image(u) == g else None
        return F.lift_step(u, g)
    return step


def generator_name(g: Generator) -> str:
    return g if isinstance(g, str) else str(g)


# defining relations

Term = tuple[int, tuple[Generator, ...]]


@dataclass(frozen=True)
class Relation:
    number: int
    indices: tuple
    lhs: tuple[Term, ...]
    rhs: tuple[Term, ...]

    def describe(self) -> str:
        side = lambda ts: " + ".join(" ".join(map(generator_name, w)) for _, w in ts) or "0"
        return f"({self.number}) {side(self.lhs)} = {side(self.rhs)}"


def relations(E: WeightedGraph) -> list[Relation]:
    """The four families of defining relations; e_i is zero for i > w(e)."""
    rels: list[Relation] = []
    V = E.vertices
    for u in V:
        for v in V:
            rels.append(Relation(1, (u, v), ((1, (u, v)),), ((1, (u,)),) if u == v else ()))
    for t in E.tagged_edges:
        e = E.edge(t.edge)
        x, xs = Letter(t, False), Letter(t, True)
        rels.append(Relation(2, (str(x), "s"), ((1, (e.src, x)),), ((1, (x,)),)))
        rels.append(Relation(2, (str(x), "r"), ((1, (x, e.dst)),), ((1, (x,)),)))
        rels.append(Relation(2, (str(xs), "r"), ((1, (e.dst, xs)),), ((1, (xs,)),)))
        rels.append(Relation(2, (str(xs), "s"), ((1, (xs, e.src)),), ((1, (xs,)),)))
    for v in V:
        out = E.out_edges(v)
        wv = E.vertex_weight(v)
        for e in out:
            for f in out:
                lhs = tuple((1, (Letter(TaggedEdge(e.id, i), True), Letter(TaggedEdge(f.id, i), False)))
                            for i in range(1, wv + 1) if i <= e.weight and i <= f.weight)
                rhs = ((1, (e.dst,)),) if e.id == f.id else ()
                rels.append(Relation(3, (v, e.id, f.id), lhs, rhs))
        for i in range(1, wv + 1):
            for j in range(1, wv + 1):
                lhs = tuple((1, (Letter(TaggedEdge(e.id, i), False), Letter(TaggedEdge(e.id, j), True)))
                            for e in out if e.weight >= max(i, j))
                rhs = ((1, (v,)),) if i == j else ()
                rels.append(Relation(4, (v, i, j), lhs, rhs))
    return rels


def evaluate(step: Callable, b, terms: Iterable[Term], field: Field):
    """Σ coeff · (b · word) as a dict, or TRUNCATED."""
    out: dict = {}
    for c, word in terms:
        cur = b
        for g in word:
            cur = step(cur, g)
            if cur is None or cur is TRUNCATED:
                break
        if cur is TRUNCATED:
            return TRUNCATED
        if cur is not None:
            out[cur] = out.get(cur, field.zero) + field(c)
    return {k: v for k, v in out.items() if not v.is_zero()}


@dataclass
class RelationReport:
    ok: bool
    checked: int = 0
    skipped: int = 0
    violation: dict | None = None

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        d = {"ok": self.ok, "checked": self.checked, "skipped": self.skipped}
        if self.violation:
            d["violation"] = self.violation
        return d


def _fmt(d: dict) -> str:
    return format_terms((str(b), c) for b, c in d.items())


def check_module_relations(E: WeightedGraph, basis: Sequence, step: Callable, field: Field,
                           only: Callable[[Relation], bool] | None = None) -> RelationReport:
    """Evaluate every defining relation on every basis element.

    Instances touching a truncation are counted as skipped.
    """
    rels = [r for r in relations(E) if only is None or only(r)]
    checked = skipped = 0
    for b in basis:
        for rel in rels:
            lhs = evaluate(step, b, rel.lhs, field)
            rhs = evaluate(step, b, rel.rhs, field)
            if lhs is TRUNCATED or rhs is TRUNCATED:
                skipped += 1
                continue
            checked += 1
            if lhs != rhs:
                return RelationReport(False, checked, skipped, {
                    "relation": rel.number, "indices": [str(i) for i in rel.indices],
                    "basis": str(b), "statement": rel.describe(),
                    "lhs": _fmt(lhs), "rhs": _fmt(rhs)})
    return RelationReport(True, checked, skipped)


def check_relations(F: RepresentationGraph, field: Field = QQ) -> RelationReport:
    return check_module_relations(F.base, F.vertices, rep_step(F), field)


def is_simple_module(F: RepresentationGraph) -> bool:
    return is_irreducible(F)


# constructive simplicity

class NotSeparable(Exception):
    pass


def _shrinking_word(F: RepresentationGraph, support: Sequence[str], max_states: int) -> PathWord:
    """Shortest word (BFS order) killing some but not all support vertices."""
    E = F.base
    images = {F.image(u) for u in support}
    if len(images) > 1:
        return PathWord(F.image(support[0]))
    start = tuple(support)
    seen = {start}
    todo = deque([(start, ())])
    while todo:
        state, word = todo.popleft()
        here = F.image(state[0])
        for x in E.letters_from(here):
            nxt = [F.lift_step(u, x) for u in state]
            if any(n is TRUNCATED for n in nxt):
                continue
            alive = tuple(n for n in nxt if n is not None)
            if not alive:
                continue
            w = word + (x,)
            if len(alive) < len(state):
                return E.word(F.image(support[0]), w)
            if alive not in seen:
                if len(seen) >= max_states:
                    raise NotSeparable("search budget exhausted")
                seen.add(alive)
                todo.append((alive, w))
    raise NotSeparable(f"no word separates {list(support)}")


def separating_element(x: ModuleVector, F: RepresentationGraph,
                       max_states: int = 200_000) -> tuple[AlgebraElement, str]:
    """A scaled monomial k·p with x·(k·p) a single basis vertex.

    Repeatedly applies the shortest word that shrinks the support while
    keeping it nonzero, then rescales. Returns (k·p, resulting vertex).
    """
    if x.is_zero():
        raise ValueError("zero vector")
    order = {v: i for i, v in enumerate(F.vertices)}
    support = sorted(x.support.items(), key=lambda t: order[t[0]])
    word: PathWord | None = None
    while len(support) > 1:
        w = _shrinking_word(F, [u for u, _ in support], max_states)
        moved = [(F.lift_word(u, w), k) for u, k in support]
        support = [(v, k) for v, k in moved if v is not None]
        word = w if word is None else word.concat(w)
    u, k = support[0]
    if word is None:
        word = PathWord(F.image(u))
    return AlgebraElement.monomial(x.field, word, k.inverse()), u


# grading

@dataclass
class GradingAssignment:
    graded: bool
    dimension: int
    degrees: dict[str, DegreeVector] | None = None
    witness: PathWord | None = None
    witness_vertices: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        d = {"graded": self.graded, "dimension": self.dimension}
        if self.degrees is not None:
            d["degrees"] = {v: list(g) for v, g in self.degrees.items()}
        if self.witness is not None:
            d["witness"] = str(self.witness)
            d["witness_vertices"] = list(self.witness_vertices)
            d["witness_length"] = list(length_vector(self.witness, self.dimension))
        return d


def _unit(n: int, x: Letter) -> DegreeVector:
    return DegreeVector.unit(n, x.tag, -1 if x.ghost else 1)


def grading(F: RepresentationGraph) -> GradingAssignment:
    """Degrees from a spanning tree, or a closed walk of nonzero length."""
    if not F.vertices:
        return GradingAssignment(True, F.base.max_weight, {})
    if not F.is_connected():
        raise DisconnectedGraph("grading needs a connected graph")
    n = F.base.max_weight
    root = F.vertices[0]
    deg = {root: DegreeVector.zero(n)}
    parent: dict[str, tuple[str, Letter] | None] = {root: None}
    todo = deque([root])
    while todo:
        u = todo.popleft()
        for x, t in F.transitions(u):
            if t not in deg:
                deg[t] = deg[u] + _unit(n, x)
                parent[t] = (u, x)
                todo.append(t)
    for f in F.edges:
        if deg[f.dst] - deg[f.src] != DegreeVector.unit(n, f.image.tag):
            return _witness(F, f, parent, n)
    return GradingAssignment(True, n, deg)


def _root_path(v: str, parent) -> list[tuple[str, Letter]]:
    path = []
    while parent[v] is not None:
        u, x = parent[v]
        path.append((u, x))
        v = u
    return path[::-1]


def _witness(F, f, parent, n) -> GradingAssignment:
    ps, pr = _root_path(f.src, parent), _root_path(f.dst, parent)
    k = 0
    while k < len(ps) and k < len(pr) and ps[k] == pr[k]:
        k += 1
    # closed walk at s(f): f, back up from r(f) to the branch point, down to s(f)
    walk = [(f.src, Letter(f.image, False))]
    cur = f.dst
    for u, x in reversed(pr[k:]):
        walk.append((cur, x.inverse()))
        cur = u
    for u, x in ps[k:]:
        walk.append((u, x))
    order = {v: i for i, v in enumerate(F.vertices)}
    start = min(range(len(walk)), key=lambda i: order[walk[i][0]])
    walk = walk[start:] + walk[:start]
    letters = tuple(x for _, x in walk)
    verts = tuple(v for v, _ in walk) + (walk[0][0],)
    w = F.base.word(F.image(walk[0][0]), letters)
    return GradingAssignment(False, n, None, w, verts)


# module homomorphisms

@dataclass
class HomReport:
    ok: bool
    checked: int = 0
    skipped: int = 0
    failure: dict | None = None

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        d = {"ok": self.ok, "checked": self.checked, "skipped": self.skipped}
        if self.failure:
            d["failure"] = self.failure
        return d


def check_module_hom(F: RepresentationGraph, G: RepresentationGraph,
                     sigma: Mapping[str, ModuleVector], field: Field = QQ) -> HomReport:
    """Does σ: V_F -> V_G commute with every generator on every basis vertex?"""
    if F.base != G.base:
        raise ValueError("graphs over different base graphs")
    zero = ModuleVector(field)
    sig = lambda u: sigma.get(u, zero)
    stepF, stepG = rep_step(F), rep_step(G)
    checked = skipped = 0
    for u in F.vertices:
        for g in generators(F.base):
            t = stepF(u, g)
            if t is TRUNCATED:
                skipped += 1
                continue
            lhs = zero if t is None else sig(t)
            out: dict = {}
            trunc = False
            for w, c in sig(u).support.items():
                r = stepG(w, g)
                if r is TRUNCATED:
                    trunc = True
                    break
                if r is not None:
                    out[r] = out.get(r, field.zero) + c
            if trunc:
                skipped += 1
                continue
            checked += 1
            rhs = ModuleVector(field, out)
            if lhs != rhs:
                return HomReport(False, checked, skipped, {
                    "vertex": u, "generator": generator_name(g),
                    "sigma_of_product": str(lhs), "product_of_sigma": str(rhs)})
    return HomReport(True, checked, skipped)


def induced_hom(m, field: Field = QQ) -> dict[str, ModuleVector]:
    """V_α for a morphism α: u ↦ α(u)."""
    return {u: ModuleVector.basis(field, v) for u, v in m.vertex_map.items()}
