import warnings

import pytest
from hypothesis import given, strategies as st

from repgraph.algebra import AlgebraElement, multiply, parse_expr
from repgraph.errors import FieldMismatch, ParseError
from repgraph.field import F2, QQ, Field
from repgraph.fixtures import bipartite_base, l22_graph


def test_round_trip_printing():
    E = l22_graph()
    a = parse_expr("2*e[1] f[1]* - 1/3*v", E)
    assert str(a) == "2*e[1] f[1]* - 1/3*v"
    assert len(a) == 2


def test_like_terms_combine():
    E = l22_graph()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert str(parse_expr("2*v - 3*v", E)) == "-v"
    assert parse_expr("v - v", E).is_zero()


def test_non_composable_monomial_warns_and_vanishes():
    E = bipartite_base()
    with pytest.warns(UserWarning):
        a = parse_expr("e[1] f[1]", E)
    assert a.is_zero()


def test_vertex_idempotents():
    u, v = AlgebraElement.vertex(QQ, "u"), AlgebraElement.vertex(QQ, "v")
    assert multiply(v, v) == v
    assert multiply(v, u).is_zero()


def test_mismatched_term_is_dropped():
    E = bipartite_base()
    a = parse_expr("2*e[1] + u", E)
    b = parse_expr("e[1]*", E)
    assert str(multiply(a, b)) == "2*e[1] e[1]*"
    assert str(multiply(a, parse_expr("v", E))) == "2*e[1]"
    assert str(multiply(a, parse_expr("u", E))) == "u"


def test_parse_errors():
    E = l22_graph()
    for bad in ("", "e[3]", "w", "2*", "e[1] +", "e[1]] ", "3 e[1]", "e[1] $"):
        with pytest.raises(ParseError):
            parse_expr(bad, E)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_expr("e[1] + g[1]", l22_graph())
    assert info.value.position == 7


def test_denominator_not_invertible_in_f2():
    with pytest.raises(ParseError):
        parse_expr("1/2*e[1]", l22_graph(), F2)
    assert str(parse_expr("1/3*e[1]", l22_graph(), Field(5))) == "2*e[1]"


def test_field_mismatch():
    E = l22_graph()
    with pytest.raises(FieldMismatch):
        parse_expr("v", E) + parse_expr("v", E, F2)


monomials = st.lists(st.sampled_from(["e[1]", "e[1]*", "e[2]", "f[2]*", "f[1]", "v"]), min_size=1, max_size=4)
elements = st.lists(st.tuples(st.integers(-3, 3), monomials), min_size=1, max_size=3)


def _element(spec):
    E = l22_graph()
    total = AlgebraElement(QQ)
    for c, word in spec:
        total = total + parse_expr(" ".join(word), E).scale(c)
    return total


@given(elements, elements, elements)
def test_multiplication_is_associative_and_distributive(a, b, c):
    x, y, z = _element(a), _element(b), _element(c)
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    assert multiply(x, y + z) == multiply(x, y) + multiply(x, z)
