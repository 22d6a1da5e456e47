"""Exact coefficient fields: the rationals and prime fields GF(p).

Rational values are plain :class:`fractions.Fraction`; prime-field values are
:class:`FpElement`.  A :class:`Field` object converts literals into its own
values and prints them back.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ContextMismatch, InputError

MAX_PRIME = 1 << 16

_LITERAL = re.compile(r"\s*([+-]?)\s*(\d+)(?:\s*/\s*(\d+))?\s*\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``[sign] int [/ den]``."""
    m = _LITERAL.match(text)
    if not m:
        raise InputError(f"bad scalar literal {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise InputError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign == "-" else value


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FpElement:
    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ContextMismatch(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise ContextMismatch(f"cannot combine GF({self.p}) element with {type(other).__name__}")

    def __add__(self, other):
        return FpElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FpElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FpElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def inverse(self) -> FpElement:
        if self.value == 0:
            raise ZeroDivisionError(f"inverting zero in GF({self.p})")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FpElement(self._coerce(other), self.p).inverse()

    def __rtruediv__(self, other):
        return FpElement(self._coerce(other), self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FpElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """Coefficient field tag plus conversion and printing."""

    name: str

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        return self(parse_rational(text))

    def format(self, x) -> str:
        return str(x)

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "QQ"

    def __call__(self, value) -> Fraction:
        if isinstance(value, FpElement):
            raise ContextMismatch("GF(p) element used where a rational was expected")
        return Fraction(value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        if p >= MAX_PRIME:
            raise InputError(f"prime {p} too large (limit {MAX_PRIME})")
        self.p = p
        self.name = f"GF({p})"

    def __call__(self, value) -> FpElement:
        if isinstance(value, FpElement):
            if value.p != self.p:
                raise ContextMismatch(f"mixing GF({self.p}) and GF({value.p})")
            return value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise InputError(f"{value} has no image in GF({self.p})")
            return FpElement(value.numerator, self.p) / value.denominator
        return FpElement(int(value), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def elements(self) -> list[FpElement]:
        return [FpElement(v, self.p) for v in range(self.p)]


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(text: str | int | None) -> Field:
    """``None``/``"QQ"`` for the rationals, a prime (or ``"GF(p)"``) otherwise."""
    if text is None or str(text).upper() in ("QQ", "Q", "RATIONALS"):
        return QQ
    s = str(text).strip()
    m = re.fullmatch(r"(?:GF\()?(\d+)\)?", s, re.IGNORECASE)
    if not m:
        raise InputError(f"unknown field {text!r}")
    return PrimeField(int(m.group(1)))
