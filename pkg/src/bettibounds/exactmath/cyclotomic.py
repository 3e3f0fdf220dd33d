"""Arithmetic in the cyclotomic field Q(zeta_p) and its ring of integers.

Elements are coordinate vectors in the basis ``1, zeta, ..., zeta^(p-2)``,
which is an integral basis of Z[zeta_p].  For ``p = 2`` the field is Q and
``zeta = -1``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

INF = math.inf
"""Valuation of zero."""

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**k``; raise ``ValueError`` when ``q`` is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _reduce_full(p: int, full: list) -> tuple:
    """Reduce a length-``p`` vector modulo ``1 + zeta + ... + zeta^(p-1)``."""
    top = full[p - 1]
    return tuple(_norm(c - top) for c in full[: p - 1])


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Cyclotomic:
    """An element of Q(zeta_p); integral elements form Z[zeta_p]."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable[Scalar]):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        cs = [_norm(Fraction(c) if not isinstance(c, int) else c) for c in coeffs]
        if len(cs) > p - 1:
            cs = _fold(p, cs)
        cs = cs + [0] * (p - 1 - len(cs))
        self.p = p
        self.coeffs: tuple = tuple(cs)

    # construction helpers
    @classmethod
    def zeta(cls, p: int, power: int = 1) -> "Cyclotomic":
        full = [0] * p
        full[power % p] = 1
        return cls(p, _reduce_full(p, full))

    @classmethod
    def from_scalar(cls, p: int, c: Scalar) -> "Cyclotomic":
        return cls(p, [c])

    @classmethod
    def from_powers(cls, p: int, counts: Iterable[int]) -> "Cyclotomic":
        """``sum_t counts[t] * zeta^t`` for ``t = 0..p-1``."""
        full = list(counts)
        full = full + [0] * (p - len(full))
        return cls(p, _reduce_full(p, full))

    # structure
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0])

    def _lift(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.p != self.p:
                raise ValueError(f"mixing Q(zeta_{self.p}) with Q(zeta_{other.p})")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.p, [other])
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cyclotomic):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"Cyclotomic({self.p}, {list(self.coeffs)!r})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                z = "z" if i == 1 else f"z^{i}"
                terms.append(z if c == 1 else f"{c}*{z}")
        return " + ".join(terms) if terms else "0"

    # ring operations
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.p, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.p, [c * other for c in self.coeffs])
        o = self._lift(other)
        if o is NotImplemented:
            return o
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b != 0:
                    full[(i + j) % p] += a * b
        return Cyclotomic(p, _reduce_full(p, full))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Cyclotomic":
        if e < 0:
            return (1 / self) ** (-e)
        result = Cyclotomic(self.p, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, b: int) -> "Cyclotomic":
        """Image under the automorphism ``zeta -> zeta^b`` (``p`` does not divide ``b``)."""
        p = self.p
        if b % p == 0:
            raise ValueError("b must be prime to p")
        full = [0] * p
        for i, c in enumerate(self.coeffs):
            full[(i * b) % p] += c
        return Cyclotomic(p, _reduce_full(p, full))

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Field norm to Q."""
        acc = Cyclotomic(self.p, [1])
        for b in range(1, self.p):
            acc = acc * self.galois(b)
        return acc.to_rational()

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        acc = Cyclotomic(self.p, [1])
        for b in range(2, self.p):
            acc = acc * self.galois(b)
        return acc / (acc * self).to_rational()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.p, [Fraction(c) / other for c in self.coeffs])
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __bool__(self) -> bool:
        return not self.is_zero()

    # valuation
    def valuation_pi(self) -> float | int:
        """Exact ``pi``-adic valuation with ``pi = 1 - zeta_p`` (``INF`` for 0)."""
        if self.is_zero():
            return INF
        p = self.p
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        x = [int(c * den) for c in self.coeffs]
        v = 0
        while den % p == 0:
            den //= p
            v -= p - 1
        mult = _pi_cofactor(p)
        while True:
            if all(c % p == 0 for c in x):
                x = [c // p for c in x]
                v += p - 1
                continue
            if sum(x) % p == 0:
                y = Cyclotomic(p, x) * mult
                x = [c // p for c in y.coeffs]
                v += 1
                continue
            return v


def _fold(p: int, cs: list) -> list:
    full = [0] * p
    for i, c in enumerate(cs):
        full[i % p] += c
    return list(_reduce_full(p, full))


@lru_cache(maxsize=None)
def _pi_cofactor(p: int) -> Cyclotomic:
    """``prod_{b=2}^{p-1} (1 - zeta^b)``, so that ``pi * cofactor = p``."""
    acc = Cyclotomic(p, [1])
    for b in range(2, p):
        acc = acc * (1 - Cyclotomic.zeta(p, b))
    return acc


def cyclotomic_valuation(x: Cyclotomic | Scalar, q: int) -> Fraction | float:
    """``ord_q(x) = v_pi(x) / ((p - 1) k)`` for ``q = p**k``; ``INF`` at zero."""
    p, k = prime_power(q)
    if not isinstance(x, Cyclotomic):
        x = Cyclotomic(p, [x])
    elif x.p != p:
        raise ValueError(f"element of Q(zeta_{x.p}) valued at q = {q}")
    v = x.valuation_pi()
    if v == INF:
        return INF
    return Fraction(v, (p - 1) * k)
