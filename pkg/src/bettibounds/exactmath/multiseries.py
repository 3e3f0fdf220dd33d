"""Truncated power series in several variables, stored sparsely."""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterator, Mapping

Monomial = tuple[int, ...]


class MultivariateSeries:
    """Series in ``r`` variables known up to total degree ``order``."""

    __slots__ = ("nvars", "order", "terms")

    def __init__(self, nvars: int, order: int, terms: Mapping[Monomial, Any] = ()):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.nvars = nvars
        self.order = order
        clean: dict[Monomial, Any] = {}
        for w, c in dict(terms).items():
            w = tuple(w)
            if len(w) != nvars or any(x < 0 for x in w):
                raise ValueError(f"bad monomial {w}")
            if sum(w) <= order and c != 0:
                clean[w] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, order: int, c: Any = 1) -> "MultivariateSeries":
        return cls(nvars, order, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, order: int, i: int) -> "MultivariateSeries":
        w = [0] * nvars
        w[i] = 1
        return cls(nvars, order, {tuple(w): 1})

    def __getitem__(self, w: Monomial) -> Any:
        return self.terms.get(tuple(w), 0)

    def items(self) -> Iterator[tuple[Monomial, Any]]:
        return iter(sorted(self.terms.items()))

    def homogeneous_part(self, degree: int) -> dict[Monomial, Any]:
        return {w: c for w, c in sorted(self.terms.items()) if sum(w) == degree}

    def _check(self, other: "MultivariateSeries") -> int:
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, MultivariateSeries):
            other = MultivariateSeries.constant(self.nvars, self.order, other)
        order = self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, 0) + c
        return MultivariateSeries(self.nvars, order, acc)

    __radd__ = __add__

    def __neg__(self) -> "MultivariateSeries":
        return MultivariateSeries(self.nvars, self.order, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultivariateSeries):
            return MultivariateSeries(self.nvars, self.order,
                                      {w: c * other for w, c in self.terms.items()})
        order = self._check(other)
        acc: dict[Monomial, Any] = {}
        for w1, c1 in self.terms.items():
            d1 = sum(w1)
            for w2, c2 in other.terms.items():
                if d1 + sum(w2) > order:
                    continue
                w = tuple(a + b for a, b in zip(w1, w2))
                acc[w] = acc.get(w, 0) + c1 * c2
        return MultivariateSeries(self.nvars, order, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultivariateSeries":
        if k < 0:
            return self.invert() ** (-k)
        out = MultivariateSeries.constant(self.nvars, self.order)
        for _ in range(k):
            out = out * self
        return out

    def invert(self) -> "MultivariateSeries":
        """Multiplicative inverse; needs a nonzero constant term."""
        c0 = self[(0,) * self.nvars]
        if c0 == 0:
            raise ZeroDivisionError("constant term is zero")
        inv0 = Fraction(1, c0) if isinstance(c0, int) else 1 / c0
        # 1/(c0 (1 + y)) = inv0 * sum (-y)^k, y has no constant term
        y = self * inv0 - 1
        acc = MultivariateSeries.constant(self.nvars, self.order)
        power = MultivariateSeries.constant(self.nvars, self.order)
        for _ in range(self.order):
            power = power * (-y)
            acc = acc + power
        return acc * inv0

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultivariateSeries) and self.nvars == other.nvars
                and self.order == other.order and self.terms == other.terms)

    def __repr__(self) -> str:
        return f"MultivariateSeries({self.nvars}, {self.order}, {dict(self.items())!r})"
