"""Exact numbers of the form ``a + b*sqrt(q)`` with rational ``a``, ``b``."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

Scalar = Union[int, Fraction]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _square_part(r: int, limit: int = 1 << 20) -> tuple[int, int]:
    """``(s, t)`` with ``r = s^2 t``; ``t`` squarefree unless ``r`` has a huge square factor."""
    s = math.isqrt(r)
    if s * s == r:
        return s, 1
    out, f = 1, 2
    while f * f <= r and f < limit:
        while r % (f * f) == 0:
            r //= f * f
            out *= f
        f += 1
    return out, r


@total_ordering
class QuadraticSurd:
    """``rational + coefficient * sqrt(radicand)`` for a positive integer radicand.

    Square factors are pulled out of the radicand, so equal
    values always compare equal.  Ordering is decided by squaring, never by
    floating point.
    """

    __slots__ = ("rational", "coefficient", "radicand")

    def __init__(self, rational: Scalar = 0, coefficient: Scalar = 0, radicand: int = 1):
        if radicand < 1:
            raise ValueError("radicand must be a positive integer")
        a, b = Fraction(rational), Fraction(coefficient)
        outside, radicand = _square_part(radicand)
        b *= outside
        if radicand == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            radicand = 1
        self.rational = a
        self.coefficient = b
        self.radicand = radicand

    @classmethod
    def power(cls, coefficient: Scalar, q: int, exponent: Fraction) -> "QuadraticSurd":
        """``coefficient * q**exponent`` for a half-integer ``exponent``."""
        e = Fraction(exponent)
        if (2 * e).denominator != 1:
            raise ValueError("exponent must be a half integer")
        if e.denominator == 1:
            return cls(Fraction(coefficient) * Fraction(q) ** int(e))
        lower = e - Fraction(1, 2)
        return cls(0, Fraction(coefficient) * Fraction(q) ** int(lower), q)

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if self.radicand != other.radicand and 1 not in (self.radicand, other.radicand):
                raise ValueError("surds with different radicands")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(other)
        return NotImplemented

    def _radicand_with(self, other: "QuadraticSurd") -> int:
        return max(self.radicand, other.radicand)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(self.rational + o.rational, self.coefficient + o.coefficient,
                             self._radicand_with(o))

    __radd__ = __add__

    def __neg__(self) -> "QuadraticSurd":
        return QuadraticSurd(-self.rational, -self.coefficient, self.radicand)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        r = self._radicand_with(o)
        a = self.rational * o.rational + self.coefficient * o.coefficient * r
        b = self.rational * o.coefficient + self.coefficient * o.rational
        return QuadraticSurd(a, b, r)

    __rmul__ = __mul__

    def sign(self) -> int:
        a, b = self.rational, self.coefficient
        sa, sb = _sign(a), _sign(b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 * radicand
        diff = a * a - b * b * self.radicand
        return sa * _sign(diff)

    def __abs__(self) -> "QuadraticSurd":
        return -self if self.sign() < 0 else self

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() == 0

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self.coefficient == 0:
            return hash(self.rational)
        return hash((self.rational, self.coefficient, self.radicand))

    def is_rational(self) -> bool:
        return self.coefficient == 0

    def __float__(self) -> float:
        return float(self.rational) + float(self.coefficient) * math.sqrt(self.radicand)

    def __repr__(self) -> str:
        return f"QuadraticSurd({self.rational}, {self.coefficient}, {self.radicand})"

    def __str__(self) -> str:
        if self.coefficient == 0:
            return str(self.rational)
        root = f"sqrt({self.radicand})"
        b = self.coefficient
        tail = root if b == 1 else f"{b}*{root}"
        if self.rational == 0:
            return tail
        return f"{self.rational} + {tail}"
