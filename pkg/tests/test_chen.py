import pytest
from hypothesis import given, strategies as st

from repgraph.action import ModuleVector
from repgraph.algebra import parse_expr
from repgraph.chen import (ChenConstruction, EvPeriodicPath, PathPrefix, SinkPath, agreement_oracle,
                           chen_act, chen_agreement_oracle, check_chen_relations,
                           irrational_rep_graph, is_primitive, least_rotation, rational_rep_graph,
                           sink_rep_graph, smallest_period, tail_equivalent)
from repgraph.errors import InputError, NotASink, NotSimpleCycle, NotWeightOne, TruncatedError
from repgraph.field import QQ
from repgraph.fixtures import l22_graph, one_vertex_graph, sink_example, three_loop_graph, rational_efg
from repgraph.graph import Edge, WeightedGraph, parse_letter
from repgraph.representation import is_irreducible, isomorphism, validate

E3 = three_loop_graph()


def P(prefix, cycle):
    return EvPeriodicPath.make(tuple(prefix), tuple(cycle))


def test_periods():
    assert smallest_period("efgefg") == 3
    assert smallest_period("efgef") == 5
    assert is_primitive("efg") and not is_primitive("ee")
    assert least_rotation(("g", "e", "f")) == ("e", "f", "g")


def test_canonical_form():
    assert str(P("efgefg", "efgefg")) == "()(e.f.g)^inf"
    assert P("e", "fge") == P("", "efg")
    assert P("ee", "e") == P("", "e")
    assert P("fe", "fge") == P("f", "efg")


def test_tail_equivalence_examples():
    assert tail_equivalent(P("", "efg"), P("e", "fge"))
    assert not tail_equivalent(P("", "efg"), P("", "ef"))
    p = P("ff", "eg")
    assert tail_equivalent(p, p)


paths = st.tuples(st.text("efg", max_size=4), st.text("efg", min_size=1, max_size=4))


@given(paths)
def test_make_is_idempotent(pc):
    p = P(*pc)
    assert EvPeriodicPath.make(p.prefix, p.cycle) == p
    assert is_primitive(p.cycle)


@given(paths, st.integers(0, 12))
def test_canonical_form_preserves_the_infinite_word(pc, n):
    prefix, cycle = pc
    raw = list(prefix)
    while len(raw) < n + 20:
        raw.extend(cycle)
    assert P(prefix, cycle).head(n + 20) == tuple(raw[:n + 20])


@given(paths, paths, paths)
def test_tail_equivalence_is_an_equivalence(a, b, c):
    p, q, r = P(*a), P(*b), P(*c)
    assert tail_equivalent(p, p)
    assert tail_equivalent(p, q) == tail_equivalent(q, p)
    if tail_equivalent(p, q) and tail_equivalent(q, r):
        assert tail_equivalent(p, r)
    assert tail_equivalent(p, q) == (p.class_key() == q.class_key())


@given(paths, st.sampled_from("efg"))
def test_prepend_and_tail_are_inverse(pc, e):
    p = P(*pc)
    assert p.prepend(e).tail() == p
    assert tail_equivalent(p.prepend(e), p)


def test_chen_act_examples():
    x = ModuleVector.basis(QQ, P("", "efg"))
    assert chen_act(x, parse_expr("e[1] f[1] g[1]", E3), E3) == x
    assert chen_act(x, parse_expr("g[1]", E3), E3).is_zero()
    (y,) = chen_act(x, parse_expr("e[1]*", E3), E3).support
    assert y == P("e", "efg")
    assert y.head(10) == ("e",) + P("", "efg").head(9)
    assert chen_act(ModuleVector.basis(QQ, y), parse_expr("e[1]", E3), E3) == x


def test_chen_relations_hold_on_a_class():
    basis = [P("", "efg"), P("e", "fge"), P("g", "efg"), P("ff", "gef"), P("", "fge")]
    r = check_chen_relations(E3, basis)
    assert r.ok and r.checked > 0


def test_rational_single_loop_depth_zero():
    E = one_vertex_graph({"e": 1})
    C = rational_rep_graph(E, ["e"], 0)
    F = C.graph
    assert F.vertices == ("v1",)
    assert [(f.src, f.dst) for f in F.edges] == [("v1", "v1")]
    assert not F.frontier
    assert is_irreducible(F)


def test_rational_depth_one_is_rational_efg():
    C = rational_rep_graph(E3, ["e", "f", "g"], 1)
    assert len(C.graph.vertices) == 9
    assert isomorphism(C.graph, rational_efg()) is not None
    assert C.dictionary["v1"] == P("", "efg")
    assert C.dictionary["v2"] == P("", "fge")


@pytest.mark.parametrize("cycle,count", [("efg", 27), ("e", 9), ("ef", 18)])
def test_rational_depth_two(cycle, count):
    C = rational_rep_graph(E3, list(cycle), 2)
    F = C.graph
    assert len(F.vertices) == count
    assert validate(F).ok
    assert is_irreducible(F)
    assert len(set(C.dictionary.values())) == len(F.vertices)


def test_rational_errors():
    with pytest.raises(NotSimpleCycle):
        rational_rep_graph(E3, ["e", "e"], 1)
    with pytest.raises(NotSimpleCycle):
        rational_rep_graph(E3, [], 1)
    E = WeightedGraph(["a", "b"], [Edge("x", "a", "b"), Edge("y", "b", "a")])
    with pytest.raises(NotSimpleCycle):
        rational_rep_graph(E, ["x"], 1)
    with pytest.raises(InputError):
        rational_rep_graph(E, ["x", "z"], 1)
    with pytest.raises(NotWeightOne):
        rational_rep_graph(l22_graph(), ["e"], 1)


def test_sink_construction():
    E = sink_example()
    C = sink_rep_graph(E, "u", 1)
    F = C.graph
    assert F.vertices == ("v", "v:a")
    assert C.dictionary["v:a"] == SinkPath(("a",), "u")
    x = ModuleVector.basis(QQ, C.dictionary["v:a"])
    assert chen_act(x, parse_expr("a[1]", E), E) == ModuleVector.basis(QQ, SinkPath((), "u"))
    assert F.lift_step("v:a", parse_letter("a[1]")) == "v"


def test_sink_degenerate_cases():
    E = WeightedGraph(["u"], [])
    assert sink_rep_graph(E, "u", 3).graph.vertices == ("v",)
    assert sink_rep_graph(sink_example(), "u", 0).graph.vertices == ("v",)
    with pytest.raises(NotASink):
        sink_rep_graph(sink_example(), "x", 1)
    with pytest.raises(InputError):
        sink_rep_graph(sink_example(), "w", 1)


def test_sink_deep():
    C = sink_rep_graph(sink_example(), "u", 3)
    assert len(C.graph.vertices) == 2
    E = WeightedGraph(["x", "u"], [Edge("a", "x", "u"), Edge("b", "x", "x")])
    C = sink_rep_graph(E, "u", 3)
    assert len(C.graph.vertices) == 4
    assert validate(C.graph).ok
    assert agreement_oracle(C, 3).ok


def test_irrational_spine():
    C = irrational_rep_graph(E3, ["e"], 0)
    F = C.graph
    assert F.vertices == ("v1", "v2")
    assert len(F.edges) == 1
    assert C.dictionary["v1"] == PathPrefix(("e",), "v")
    assert F.frontier == {"v1", "v2"}
    C = irrational_rep_graph(E3, [], 2)
    assert C.graph.vertices == ("v1",) and C.frontier == {"v1"}


def test_irrational_prefix_of_five():
    C = irrational_rep_graph(E3, list("efeff"), 1)
    F = C.graph
    assert len(F.vertices) == 17
    assert validate(F).ok
    assert F.frontier == {v for v in F.vertices if ":" in v} | {"v6"}
    assert agreement_oracle(C, 3).ok


def test_truncated_chen_action():
    q = PathPrefix(("e", "f"), "v")
    x = ModuleVector.basis(QQ, q)
    assert chen_act(x, parse_expr("e[1] f[1]", E3), E3) == ModuleVector.basis(QQ, PathPrefix((), "v"))
    with pytest.raises(TruncatedError):
        chen_act(x, parse_expr("e[1] f[1] g[1]", E3), E3)


def test_oracle_on_three_loops():
    r = chen_agreement_oracle(E3, ["e", "f", "g"], 2, 3)
    assert r.ok and r.checked > 1000 and r.skipped > 0


def test_oracle_with_zero_budget_checks_idempotents_only():
    r = chen_agreement_oracle(E3, ["e", "f", "g"], 1, 0)
    assert r.ok
    assert r.checked == 3


def test_oracle_catches_a_corrupted_dictionary():
    C = rational_rep_graph(E3, ["e", "f", "g"], 2)
    d = dict(C.dictionary)
    d["v1:e"], d["v1:f"] = d["v1:f"], d["v1:e"]
    r = agreement_oracle(ChenConstruction(C.graph, d), 2)
    assert not r.ok
    assert {"vertex", "word", "graph", "expected", "graph_path"} <= set(r.mismatches[0])
