"""Elements of the weighted Leavitt path algebra as free linear combinations.

No normal form is computed: a monomial is a composable word in Ê_d (the empty
word at v stands for the idempotent v), and products are plain concatenation
with vanishing on endpoint mismatch.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import FieldMismatch, ParseError
from .field import QQ, Field, Scalar
from .graph import Letter, PathWord, TaggedEdge, WeightedGraph


class AlgebraElement:
    __slots__ = ("field", "terms")

    def __init__(self, field: Field = QQ, terms: Mapping[PathWord, Scalar | int] | None = None):
        self.field = field
        self.terms: dict[PathWord, Scalar] = {}
        for p, c in (terms or {}).items():
            c = field(c)
            if not c.is_zero():
                self.terms[p] = c

    @classmethod
    def monomial(cls, field: Field, word: PathWord, coeff=1) -> AlgebraElement:
        return cls(field, {word: coeff})

    @classmethod
    def vertex(cls, field: Field, v: str) -> AlgebraElement:
        return cls(field, {PathWord(v): 1})

    @classmethod
    def letter(cls, field: Field, E: WeightedGraph, x: Letter) -> AlgebraElement:
        return cls(field, {E.word(E.letter_source(x), [x]): 1})

    def _check(self, other: AlgebraElement):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field.name} element combined with {other.field.name}")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, self.field.zero) + c
        return AlgebraElement(self.field, out)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.field, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, k) -> AlgebraElement:
        k = self.field(k)
        return AlgebraElement(self.field, {p: k * c for p, c in self.terms.items()})

    def __rmul__(self, k) -> AlgebraElement:
        if isinstance(k, (int, Scalar)):
            return self.scale(k)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __iter__(self) -> Iterator[tuple[PathWord, Scalar]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        return format_terms((str(p), c) for p, c in self.terms.items())

    def __repr__(self) -> str:
        return f"AlgebraElement({self.field.name}: {self})"


def format_terms(items: Iterable[tuple[str, Scalar]]) -> str:
    out = []
    for name, c in items:
        neg = c.field.characteristic == 0 and c.value < 0
        mag = -c if neg else c
        body = name if mag == 1 else f"{mag}*{name}"
        out.append(("- " if neg else "+ ") + body)
    if not out:
        return "0"
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear concatenation; vertices act as idempotents."""
    a._check(b)
    out: dict[PathWord, Scalar] = {}
    for p, c in a.terms.items():
        for q, d in b.terms.items():
            r = p.concat(q)
            if r is not None:
                out[r] = out.get(r, a.field.zero) + c * d
    return AlgebraElement(a.field, out)


# expression parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][\w.]*)|(?P<op>[+\-*/\[\]]))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks, i = [], 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            raise ParseError(f"unexpected character {text[i]!r} at position {i}", position=i)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        i = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, E: WeightedGraph, field: Field):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.E = E
        self.field = field

    def peek(self, offset: int = 0) -> _Tok:
        return self.toks[min(self.k + offset, len(self.toks) - 1)]

    def take(self, text: str | None = None, kind: str | None = None) -> _Tok:
        t = self.peek()
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = text or kind
            got = t.text or "end of input"
            raise ParseError(f"expected {want!r} at position {t.pos}, got {got!r}", position=t.pos)
        self.k += 1
        return t

    def expr(self) -> AlgebraElement:
        total = AlgebraElement(self.field)
        sign = 1
        if self.peek().kind == "op" and self.peek().text in ("+", "-"):
            sign = -1 if self.take().text == "-" else 1
        while True:
            total = total + self.term().scale(sign)
            t = self.peek()
            if t.kind == "op" and t.text in ("+", "-"):
                self.k += 1
                sign = -1 if t.text == "-" else 1
                continue
            if t.kind != "end":
                raise ParseError(f"unexpected {t.text!r} at position {t.pos}", position=t.pos)
            return total

    def coeff(self) -> Scalar:
        num = self.take(kind="num")
        txt = num.text
        if self.peek().text == "/":
            self.k += 1
            txt += "/" + self.take(kind="num").text
        try:
            return self.field.parse_value(txt)
        except ParseError as exc:
            raise ParseError(f"{exc.message} at position {num.pos}", position=num.pos) from None

    def term(self) -> AlgebraElement:
        start = self.peek().pos
        c = self.field.one
        if self.peek().kind == "num":
            c = self.coeff()
            self.take("*")
        factors = [self.factor()]
        while self.peek().kind == "id":
            factors.append(self.factor())
        prod = factors[0]
        for f in factors[1:]:
            prod = multiply(prod, f)
        if prod.is_zero():
            warnings.warn(f"non-composable monomial at position {start} collapses to zero", stacklevel=3)
        return prod.scale(c)

    def factor(self) -> AlgebraElement:
        t = self.take(kind="id")
        if self.peek().text == "[":
            self.k += 1
            tag = int(self.take(kind="num").text)
            self.take("]")
            is_ghost = self.peek().text == "*"
            if is_ghost:
                self.k += 1
            x = Letter(TaggedEdge(t.text, tag), is_ghost)
            if not self.E.is_letter(x):
                raise ParseError(f"unknown letter {x} at position {t.pos}", position=t.pos)
            return AlgebraElement.letter(self.field, self.E, x)
        if t.text not in self.E._out:
            raise ParseError(f"unknown identifier {t.text!r} at position {t.pos}", position=t.pos)
        return AlgebraElement.vertex(self.field, t.text)


def parse_expr(text: str, E: WeightedGraph, field: Field = QQ) -> AlgebraElement:
    """Parse ``2*e[1] f[2]* - 1/3*v`` into an element over ``field``."""
    if not text.strip():
        raise ParseError("empty expression", position=0)
    return _Parser(text, E, field).expr()
