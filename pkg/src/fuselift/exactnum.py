"""Exact rationals and their classes modulo 1.

Rationals are :class:`fractions.Fraction`. :class:`QZ` is a reduced
representative ``num/den`` with ``0 <= num < den``, so equality and hashing
are structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DomainError, ParseError

Rational = Fraction


class QZ:
    """An element of Q/Z."""

    __slots__ = ("num", "den")

    def __init__(self, num: int = 0, den: int = 1):
        if den == 0:
            raise DomainError("denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        self.num = num // g
        self.den = den // g

    @classmethod
    def of(cls, x: int | Fraction | QZ) -> QZ:
        if isinstance(x, QZ):
            return x
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @classmethod
    def parse(cls, text: str) -> QZ:
        """Read ``"p/q"`` or an integer string; any rational is reduced mod 1."""
        try:
            return cls.of(Fraction(str(text).strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {text!r}") from exc

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    def __add__(self, other: QZ) -> QZ:
        if not isinstance(other, QZ):
            return NotImplemented
        return QZ(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: QZ) -> QZ:
        if not isinstance(other, QZ):
            return NotImplemented
        return QZ(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> QZ:
        return QZ(-self.num, self.den)

    def __rmul__(self, n: int) -> QZ:
        if not isinstance(n, int):
            return NotImplemented
        return QZ(n * self.num, self.den)

    __mul__ = __rmul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QZ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == QZ.of(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __lt__(self, other: QZ) -> bool:
        return self.num * other.den < other.num * self.den

    def __str__(self) -> str:
        return "0" if self.num == 0 else f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"QZ({self})"


ZERO = QZ(0, 1)


def qz_make(p: int, q: int) -> QZ:
    if q < 1:
        raise DomainError(f"denominator must be positive, got {q}")
    return QZ(p, q)


def qz_add(a: QZ, b: QZ) -> QZ:
    return a + b


def qz_scale(n: int, a: QZ) -> QZ:
    return n * a
