"""Dense univariate polynomials over an exact coefficient field.

Coefficients may be ``int``, :class:`fractions.Fraction` or any field-like
value supporting ``+ - * /`` and ``== 0`` (the cyclotomic numbers in
:mod:`bettibounds.exactmath.cyclotomic` qualify).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Sequence


def _is_zero(c: Any) -> bool:
    return c == 0


class DensePolynomial:
    """Polynomial ``sum(coeffs[i] * t**i)`` with trailing zeros trimmed."""

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs: Iterable[Any] = (), zero: Any = Fraction(0)):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self.zero = cs[0] * 0 if cs else zero

    @classmethod
    def constant(cls, c: Any) -> "DensePolynomial":
        return cls([c], zero=c * 0)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Any:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.zero

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DensePolynomial):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"DensePolynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if i == 0:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def _wrap(self, other: Any) -> "DensePolynomial":
        if isinstance(other, DensePolynomial):
            return other
        return DensePolynomial([other], zero=self.zero)

    def __add__(self, other: Any) -> "DensePolynomial":
        o = self._wrap(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return DensePolynomial([self[i] + o[i] for i in range(n)], zero=self.zero)

    __radd__ = __add__

    def __neg__(self) -> "DensePolynomial":
        return DensePolynomial([-c for c in self.coeffs], zero=self.zero)

    def __sub__(self, other: Any) -> "DensePolynomial":
        return self + (-self._wrap(other))

    def __rsub__(self, other: Any) -> "DensePolynomial":
        return self._wrap(other) - self

    def __mul__(self, other: Any) -> "DensePolynomial":
        o = self._wrap(other)
        if not self.coeffs or not o.coeffs:
            return DensePolynomial([], zero=self.zero)
        out = [self.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return DensePolynomial(out, zero=self.zero)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "DensePolynomial":
        if e < 0:
            raise ValueError("negative exponent")
        result = DensePolynomial([self.zero + 1], zero=self.zero)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: Any) -> "DensePolynomial":
        return DensePolynomial([a * c for a in self.coeffs], zero=self.zero)

    def __call__(self, x: Any) -> Any:
        acc = self.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "DensePolynomial") -> tuple["DensePolynomial", "DensePolynomial"]:
        """Euclidean division over the coefficient field."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(rem) - len(other.coeffs)
        quo = [self.zero] * max(dq + 1, 0)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1]
            if _is_zero(c):
                continue
            c = c / lead
            quo[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
        return DensePolynomial(quo, zero=self.zero), DensePolynomial(rem, zero=self.zero)

    def __floordiv__(self, other: "DensePolynomial") -> "DensePolynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "DensePolynomial") -> "DensePolynomial":
        return self.divmod(other)[1]

    def monic(self) -> "DensePolynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.coeffs[-1] if not isinstance(self.coeffs[-1], int)
                          else Fraction(1, self.coeffs[-1]))

    def truncate(self, order: int) -> "DensePolynomial":
        """Drop all terms of degree ``>= order``."""
        return DensePolynomial(self.coeffs[:order], zero=self.zero)

    def reversed(self, degree: int | None = None) -> "DensePolynomial":
        d = self.degree if degree is None else degree
        return DensePolynomial([self[d - i] for i in range(d + 1)], zero=self.zero)


def poly_gcd(a: DensePolynomial, b: DensePolynomial) -> DensePolynomial:
    """Monic gcd over the coefficient field (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_from_ints(coeffs: Sequence[int]) -> DensePolynomial:
    return DensePolynomial([Fraction(c) for c in coeffs])
