"""Finite fields F_{p^k} with table-driven, vectorized arithmetic.

An element is an integer ``0 <= x < p^k`` whose base-``p`` digits are its
coefficients in the polynomial basis ``1, t, ..., t^(k-1)``; ``t`` is a root
of the defining modulus.  The prime field is embedded as the constants.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..exactmath.cyclotomic import _is_prime

MAX_ORDER = 2 ** 64
MAX_TABLE = 2 ** 24


@dataclass(frozen=True)
class FieldSpec:
    """``F_p[t] / (modulus)``; ``modulus`` lists coefficients, constant term first."""

    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.k


# polynomial arithmetic over F_p on coefficient lists (constant first)

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _powmod_x(e: int, m: list[int], p: int) -> list[int]:
    """``x^e mod m``."""
    result, base = [1], [0, 1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(poly: tuple[int, ...] | list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    m = _trim([c % p for c in poly])
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _trim([(a - b) % p for a, b in itertools.zip_longest(_powmod_x(p ** k, m, p), x, fillvalue=0)]):
        return False
    for ell in _prime_factors(k):
        h = _powmod_x(p ** (k // ell), m, p)
        diff = _trim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        if len(_pgcd(m, diff, p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldSpec:
    """``F_{p^k}`` with the lexicographically least monic irreducible modulus.

    Coefficient vectors are compared constant term first.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be at least 1")
    if p ** k > MAX_ORDER:
        raise ValueError(f"field of order {p}^{k} exceeds 2^64")
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    for low in itertools.product(range(p), repeat=k):
        cand = tuple(low) + (1,)
        if cand[0] == 0:
            continue
        if is_irreducible(cand, p):
            return FieldSpec(p, k, cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """Runtime tables for F_{p^K}: log/exp, digits and absolute trace."""

    def __init__(self, spec: FieldSpec):
        p, k = spec.p, spec.k
        q = spec.q
        if q > MAX_TABLE:
            raise ValueError(f"field of order {q} is too large for table arithmetic")
        self.spec = spec
        self.p, self.k, self.q = p, k, q
        self.powers = np.array([p ** i for i in range(k)], dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        self.digits = np.stack([(idx // p ** i) % p for i in range(k)], axis=1).astype(np.int64)
        self.modulus = list(spec.modulus)
        gen = self._primitive_element()
        self.generator = gen
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self.mul_scalar(x, gen)
        if x != 1 or (log[1:] < 0).any():
            raise AssertionError("generator is not primitive")  # pragma: no cover
        self.exp = exp
        self.log = log
        # Tr is F_p-linear: tabulate it on the basis and extend by digits
        basis_tr = []
        for i in range(k):
            y = p ** i
            acc = 0
            for _ in range(k):
                acc = self.add_scalar(acc, y)
                y = self.pow_scalar(y, p)
            if acc >= p:
                raise AssertionError("trace left the prime field")  # pragma: no cover
            basis_tr.append(acc)
        self.trace = (self.digits @ np.array(basis_tr, dtype=np.int64)) % p

    # scalar helpers (used while building tables)
    def _to_poly(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _from_poly(self, a: list[int]) -> int:
        return sum(c * self.p ** i for i, c in enumerate(a))

    def add_scalar(self, x: int, y: int) -> int:
        a, b = self._to_poly(x), self._to_poly(y)
        return self._from_poly([(u + v) % self.p for u, v in zip(a, b)])

    def mul_scalar(self, x: int, y: int) -> int:
        prod = _pmul(_trim(self._to_poly(x)), _trim(self._to_poly(y)), self.p)
        return self._from_poly(_pmod(prod, self.modulus, self.p))

    def pow_scalar(self, x: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul_scalar(result, x)
            x = self.mul_scalar(x, x)
            e >>= 1
        return result

    def _primitive_element(self) -> int:
        order = self.q - 1
        if order == 1:
            return 1
        factors = _prime_factors(order)
        start = self.p if self.k > 1 else 2  # try t itself first
        for g in itertools.chain(range(start, self.q), range(2, start)):
            if all(self.pow_scalar(g, order // f) != 1 for f in factors):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    # vectorized arithmetic
    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.powers

    def scalar_multiple(self, c: int, a: np.ndarray) -> np.ndarray:
        """``c * a`` for ``c`` in the prime field."""
        c %= self.p
        if c == 0:
            return np.zeros_like(a)
        if c == 1:
            return a
        return ((self.digits[a] * c) % self.p) @ self.powers

    def monomial(self, cols: list[np.ndarray], exps: tuple[int, ...]) -> np.ndarray:
        """Value of ``prod x_i^{e_i}`` at each row (negative exponents need nonzero entries)."""
        n_rows = len(cols[0]) if cols else 1
        total = np.zeros(n_rows, dtype=np.int64)
        zero = np.zeros(n_rows, dtype=bool)
        for col, e in zip(cols, exps):
            if e == 0:
                continue
            lg = self.log[col]
            if e > 0:
                zero |= lg < 0
            total = total + e * np.where(lg < 0, 0, lg)
        vals = self.exp[np.mod(total, self.q - 1)] if self.q > 1 else np.ones(n_rows, dtype=np.int64)
        return np.where(zero, 0, vals)

    def evaluate(self, terms: dict, cols: list[np.ndarray]) -> np.ndarray:
        """Evaluate a polynomial with prime-field coefficients at every row."""
        n_rows = len(cols[0]) if cols else 1
        acc = np.zeros(n_rows, dtype=np.int64)
        for e, c in terms.items():
            c %= self.p
            if c == 0:
                continue
            acc = self.add(acc, self.scalar_multiple(c, self.monomial(cols, e)))
        return acc


@lru_cache(maxsize=32)
def field_tables(spec: FieldSpec) -> FiniteField:
    return FiniteField(spec)


def extension(base: FieldSpec, m: int) -> FieldSpec:
    """``F_{q^m}`` realized as degree ``k*m`` over F_p."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return make_field(base.p, base.k * m)


def embed_base_generator(base: FieldSpec, big: FiniteField) -> int:
    """An element of ``big`` that is a root of ``base.modulus``.

    Roots are searched one Frobenius orbit at a time; mapping the base
    generator there embeds F_q into the larger field.
    """
    if big.k % base.k:
        raise ValueError("base field does not embed: degree does not divide")
    if base.k == 1:
        return 0 if base.modulus == (0, 1) else (-base.modulus[0]) % base.p
    seen: set[int] = set()
    for x in range(big.q):
        if x in seen:
            continue
        # walk the orbit x, x^p, x^{p^2}, ...
        y = x
        while y not in seen:
            seen.add(y)
            y = big.pow_scalar(y, big.p)
        val = 0
        for c in reversed(base.modulus):
            val = big.add_scalar(big.mul_scalar(val, x), c % base.p)
        if val == 0:
            return x
    raise AssertionError("no root of the base modulus found")  # pragma: no cover
