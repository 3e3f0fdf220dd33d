"""Truncated univariate power series over an exact field."""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .polynomial import DensePolynomial


class TruncatedSeries:
    """Power series known modulo ``t**(order + 1)``.

    All arithmetic stays within the truncation order; nothing is read past it.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[Any], order: int | None = None):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        zero = cs[0] * 0 if cs else Fraction(0)
        cs = cs[: order + 1] + [zero] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def from_polynomial(cls, p: DensePolynomial, order: int) -> "TruncatedSeries":
        return cls([p[i] for i in range(order + 1)], order)

    def __getitem__(self, k: int) -> Any:
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TruncatedSeries) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r}, order={self.order})"

    def _coerce(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._coerce(other)
        return TruncatedSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._coerce(other)
        return TruncatedSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other: Any) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        n = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = a[0] * b[k]
            for i in range(1, k + 1):
                acc = acc + a[i] * b[k - i]
            out.append(acc)
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def invert(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = Fraction(1, c0) if isinstance(c0, int) else 1 / c0
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = self.coeffs[1] * out[k - 1]
            for i in range(2, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * inv0)
        return TruncatedSeries(out, self.order)

    def exp(self) -> "TruncatedSeries":
        """``exp`` of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a zero constant term")
        # E' = A' E  =>  k e_k = sum_{i=1..k} i a_i e_{k-i}
        one = self.coeffs[0] * 0 + 1
        e = [one]
        for k in range(1, self.order + 1):
            acc = self.coeffs[0] * 0
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * i * e[k - i]
            e.append(acc * Fraction(1, k))
        return TruncatedSeries(e, self.order)

    def log(self) -> "TruncatedSeries":
        """``log`` of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        # k b_k e_0 = k e_k - sum_{i=1..k-1} i b_i e_{k-i}
        zero = self.coeffs[0] * 0
        b = [zero]
        for k in range(1, self.order + 1):
            acc = self.coeffs[k] * k
            for i in range(1, k):
                acc = acc - b[i] * i * self.coeffs[k - i]
            b.append(acc * Fraction(1, k))
        return TruncatedSeries(b, self.order)


def series_coefficient(numer: Sequence[int], denom: Sequence[int], k: int) -> Fraction:
    """Degree-``k`` coefficient of ``numer / denom`` expanded at the origin.

    Polynomials are coefficient lists, constant term first.
    """
    if k < 0:
        raise ValueError("index must be nonnegative")
    if not denom or denom[0] == 0:
        raise ValueError("denominator must have a nonzero constant term")
    num = TruncatedSeries([Fraction(c) for c in numer] or [Fraction(0)], k)
    den = TruncatedSeries([Fraction(c) for c in denom], k)
    return (num * den.invert())[k]


def series_exp(a: Sequence[Any]) -> TruncatedSeries:
    """Coefficients of ``exp(sum_{m=1}^{M} a_m t^m / m)`` to order ``M``.

    ``a[0]`` is ``a_1``.  This is the generating function shared by zeta and
    L-functions built from point counts or character sums.
    """
    if len(a) < 1:
        raise ValueError("need at least one term")
    zero = a[0] * 0
    terms = [zero] + [a[m - 1] * Fraction(1, m) for m in range(1, len(a) + 1)]
    return TruncatedSeries(terms, len(a)).exp()


def series_log_sums(s: TruncatedSeries) -> list:
    """Inverse of :func:`series_exp`: recover ``a_1..a_M`` from ``exp(...)``."""
    lg = s.log()
    return [lg[m] * m for m in range(1, s.order + 1)]
