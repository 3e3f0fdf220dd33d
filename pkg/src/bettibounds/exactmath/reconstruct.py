"""Rational-function reconstruction from a truncated power series.

The minimal linear recurrence of the coefficient sequence is found with the
Berlekamp-Massey algorithm over the exact coefficient field.  A result is
only accepted once that recurrence has stopped changing over a trailing
window of terms; otherwise :data:`UNSTABLE` is returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .cyclotomic import Cyclotomic
from .polynomial import DensePolynomial, poly_gcd


class _Unstable:
    """Sentinel: the recurrence has not stabilized on the available terms."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "UNSTABLE"

    def __bool__(self) -> bool:
        return False


UNSTABLE = _Unstable()


@dataclass(frozen=True)
class RationalFunction:
    """``numerator / denominator`` in lowest terms with ``denominator(0) = 1``."""

    numerator: DensePolynomial
    denominator: DensePolynomial

    def __post_init__(self):
        if self.denominator.is_zero() or self.denominator[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")

    @classmethod
    def reduced(cls, num: DensePolynomial, den: DensePolynomial) -> "RationalFunction":
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        c = den[0]
        inv = Fraction(1, c) if isinstance(c, int) else 1 / c
        return cls(num.scale(inv), den.scale(inv))

    @property
    def total_degree(self) -> int:
        return max(self.numerator.degree, 0) + self.denominator.degree

    def series(self, order: int) -> list:
        """Expansion coefficients ``c_0..c_order``."""
        den = self.denominator
        inv0 = den[0]
        out = []
        for k in range(order + 1):
            acc = self.numerator[k]
            for i in range(1, min(k, den.degree) + 1):
                acc = acc - den[i] * out[k - i]
            out.append(acc / inv0 if inv0 != 1 else acc)
        return out

    def __str__(self) -> str:
        return f"({self.numerator}) / ({self.denominator})"


def _berlekamp_massey(seq: Sequence[Any], zero: Any, one: Any) -> list[tuple[int, tuple]]:
    """Run BM and return the state ``(L, C)`` after every prefix length."""
    C = [one]
    B = [one]
    L = 0
    m = 1
    b = one
    states = []
    for n, s in enumerate(seq):
        d = s
        for i in range(1, L + 1):
            if i < len(C):
                d = d + C[i] * seq[n - i]
        if d == 0:
            m += 1
        else:
            coef = d / b
            T = list(C)
            need = len(B) + m
            if len(C) < need:
                C = C + [zero] * (need - len(C))
            for i, bi in enumerate(B):
                C[i + m] = C[i + m] - coef * bi
            if 2 * L <= n:
                L = n + 1 - L
                B = T
                b = d
                m = 1
            else:
                m += 1
        while len(C) > 1 and C[-1] == 0:
            C.pop()
        states.append((L, tuple(C)))
    return states


def _field_unit(seq: Sequence[Any]) -> tuple[Any, Any]:
    cyclo = [c for c in seq if isinstance(c, Cyclotomic)]
    if cyclo:
        p = cyclo[0].p
        if any(c.p != p for c in cyclo):
            raise ValueError("sequence mixes different cyclotomic fields")
        return Cyclotomic(p, [0]), Cyclotomic(p, [1])
    for c in seq:
        if not isinstance(c, (int, Fraction)):
            raise ValueError(f"unsupported coefficient {c!r}")
    return Fraction(0), Fraction(1)


def rational_reconstruct(seq: Sequence[Any], window: int = 4):
    """Minimal rational function whose expansion begins with ``seq``.

    ``seq`` holds ``c_0..c_M``.  The reconstruction is accepted when the
    Berlekamp-Massey state is identical for each of the last ``window``
    prefix lengths; otherwise :data:`UNSTABLE` is returned.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    if len(seq) < 2:
        raise ValueError("need at least two coefficients")
    zero, one = _field_unit(seq)
    seq = [one * c if not isinstance(c, type(one)) else c for c in seq]
    if len(seq) < window:
        return UNSTABLE
    states = _berlekamp_massey(seq, zero, one)
    final = states[-1]
    if any(st != final for st in states[len(seq) - window:]):
        return UNSTABLE
    L, C = final
    Q = DensePolynomial(C, zero=zero)
    A = DensePolynomial(seq[:L], zero=zero)
    P = (A * Q).truncate(L)
    return RationalFunction.reduced(P, Q)
