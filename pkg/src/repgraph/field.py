"""Exact scalars: the rationals and prime fields F_p.

A :class:`Field` is a small immutable descriptor; :class:`Scalar` values carry
their field and refuse to mix with values of another field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatch, InputError, ParseError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``characteristic == 0``, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise InputError(f"F_{self.characteristic}: characteristic must be prime")

    @classmethod
    def parse(cls, spec: str) -> Field:
        """Accept ``q`` or ``fp:<prime>``."""
        s = spec.strip().lower()
        if s in ("q", "qq", "rationals"):
            return QQ
        m = re.fullmatch(r"fp:(\d+)", s)
        if not m:
            raise InputError(f"unknown field {spec!r}; expected 'q' or 'fp:<prime>'", field="field")
        return cls(int(m.group(1)))

    @property
    def name(self) -> str:
        return "q" if self.characteristic == 0 else f"fp:{self.characteristic}"

    def _normalize(self, value):
        if self.characteristic == 0:
            return Fraction(value)
        p = self.characteristic
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} is not invertible mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def __call__(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field.name} value used over {self.name}")
            return value
        if isinstance(value, str):
            return self.parse_value(value)
        return Scalar(self, self._normalize(value))

    def parse_value(self, text: str) -> Scalar:
        """Parse ``"3"``, ``"-1/3"`` into this field."""
        m = re.fullmatch(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*", text)
        if not m:
            raise ParseError(f"bad scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        try:
            return Scalar(self, self._normalize(Fraction(num, den)))
        except ZeroDivisionError as exc:
            raise ParseError(f"{text!r}: {exc}") from None

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)


QQ = Field(0)
F2 = Field(2)


@dataclass(frozen=True)
class Scalar:
    field: Field
    value: Fraction | int

    def _other(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field.name} with {other.field.name}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field._normalize(self.value + o.value))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, self.field._normalize(-self.value))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field._normalize(self.value * o.value))

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        if self.field.characteristic == 0:
            return Scalar(self.field, 1 / self.value)
        return Scalar(self.field, pow(self.value, -1, self.field.characteristic))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field._normalize(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"Scalar({self.field.name}, {self.value})"
