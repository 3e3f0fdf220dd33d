"""Exhaustive point counts and additive character sums over F_{q^m}."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..exactmath.cyclotomic import Cyclotomic
from ..laurent import LaurentPolynomial
from .fields import FieldSpec, extension, field_tables

DEFAULT_BUDGET = 2 ** 32
DEFAULT_CHUNK = 1 << 18

DOMAINS = ("affine", "toric", "projective")


class BudgetExceeded(RuntimeError):
    """Enumeration refused: the domain is larger than the allowed budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} evaluations, budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class Domain:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in DOMAINS:
            raise ValueError(f"unknown domain {self.kind!r}")
        if self.n < 0:
            raise ValueError("dimension must be nonnegative")

    def __str__(self) -> str:
        return f"{self.kind}({self.n})"

    @classmethod
    def parse(cls, text: str) -> "Domain":
        text = text.strip()
        if "(" in text and text.endswith(")"):
            kind, n = text[:-1].split("(", 1)
            return cls(kind.strip(), int(n))
        raise ValueError(f"cannot parse domain {text!r}; expected e.g. affine(2)")

    def size(self, q: int) -> int:
        if self.kind == "affine":
            return q ** self.n
        if self.kind == "toric":
            return (q - 1) ** self.n
        return sum(q ** i for i in range(self.n + 1))

    @property
    def nvars(self) -> int:
        return self.n + 1 if self.kind == "projective" else self.n


@dataclass(frozen=True)
class CountRecord:
    domain: Domain
    system: tuple[LaurentPolynomial, ...]
    m: int
    count: int


@dataclass(frozen=True)
class CharSumRecord:
    f: LaurentPolynomial
    domain: Domain
    system: tuple[LaurentPolynomial, ...]
    m: int
    a: int
    value: Cyclotomic
    count: int = field(default=0)


def _validate(system: Sequence[LaurentPolynomial], f: LaurentPolynomial | None, domain: Domain) -> None:
    polys = list(system) + ([f] if f is not None else [])
    for g in polys:
        if g.n != domain.nvars:
            raise ValueError(f"polynomial in {g.n} variables used on {domain}")
        if domain.kind != "toric" and g.has_negative_exponent():
            raise ValueError("negative exponents are only allowed on toric domains")
    if domain.kind == "projective":
        for g in polys:
            degs = {sum(e) for e in g.terms}
            if len(degs) > 1:
                raise ValueError("projective systems must be homogeneous")


def _decode(start: int, stop: int, base: int, n: int, offset: int) -> list[np.ndarray]:
    idx = np.arange(start, stop, dtype=np.int64)
    cols = []
    for _ in range(n):
        cols.append(idx % base + offset)
        idx //= base
    return cols


def _scan(ff, system_terms, f_terms, kind: str, n: int, chunk: int, workers: int):
    """Zero count and trace histogram of ``f`` over the system's zero set."""
    if kind == "affine":
        base, offset, total = ff.q, 0, ff.q ** n
    else:
        base, offset, total = ff.q - 1, 1, (ff.q - 1) ** n
    p = ff.p

    def work(bounds):
        start, stop = bounds
        cols = _decode(start, stop, base, n, offset)
        size = stop - start
        mask = np.ones(size, dtype=bool)
        for terms in system_terms:
            mask &= ff.evaluate(terms, cols) == 0
        hits = int(mask.sum())
        if f_terms is None:
            return hits, None
        if cols:
            vals = ff.evaluate(f_terms, [c[mask] for c in cols])
        else:
            vals = ff.evaluate(f_terms, [])[mask]
        return hits, np.bincount(ff.trace[vals], minlength=p)

    if n == 0:
        ranges = [(0, 1)]
    else:
        ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, ranges))
    else:
        parts = [work(r) for r in ranges]
    hits = sum(h for h, _ in parts)
    if f_terms is None:
        return hits, None
    hist = np.zeros(p, dtype=np.int64)
    for _, h in parts:
        hist += h
    return hits, [int(x) for x in hist]


def _affine_pieces(domain: Domain, polys: list[LaurentPolynomial | None]):
    """Yield ``(kind, dim, substituted polys)`` covering the domain.

    Projective space is split into the charts ``x_0 = .. = x_{i-1} = 0,
    x_i = 1``, each an affine space of dimension ``n - i``.
    """
    if domain.kind != "projective":
        yield domain.kind, domain.n, polys
        return
    n = domain.n
    for i in range(n + 1):
        values = {j: 0 for j in range(i)}
        values[i] = 1
        yield "affine", n - i, [g.substitute(values) if g is not None else None for g in polys]


def _run(system, f, domain: Domain, spec: FieldSpec, m: int, budget: int,
         workers: int | None, chunk: int):
    _validate(system, f, domain)
    big = extension(spec, m)
    required = domain.size(big.q)
    if required > budget:
        raise BudgetExceeded(required, budget)
    ff = field_tables(big)
    workers = workers if workers is not None else min(8, os.cpu_count() or 1)
    hits = 0
    hist = [0] * spec.p if f is not None else None
    for kind, dim, polys in _affine_pieces(domain, list(system) + [f]):
        sys_terms = [g.mod(spec.p).terms for g in polys[:-1]]
        f_terms = polys[-1].mod(spec.p).terms if f is not None else None
        h, hh = _scan(ff, sys_terms, f_terms, kind, dim, chunk, workers)
        hits += h
        if hh is not None:
            hist = [a + b for a, b in zip(hist, hh)]
    return hits, hist


def count_points(system: Sequence[LaurentPolynomial], domain: Domain, spec: FieldSpec, m: int = 1,
                 budget: int = DEFAULT_BUDGET, workers: int | None = None,
                 chunk: int = DEFAULT_CHUNK) -> CountRecord:
    """Number of common zeros of ``system`` in the domain over F_{q^m}."""
    hits, _ = _run(system, None, domain, spec, m, budget, workers, chunk)
    return CountRecord(domain, tuple(system), m, hits)


def char_sum(f: LaurentPolynomial, system: Sequence[LaurentPolynomial], domain: Domain,
             spec: FieldSpec, m: int = 1, a: int = 1, budget: int = DEFAULT_BUDGET,
             workers: int | None = None, chunk: int = DEFAULT_CHUNK) -> CharSumRecord:
    """``sum zeta_p^(a * Tr f(x))`` over the zeros of ``system`` in the domain."""
    p = spec.p
    if a % p == 0:
        raise ValueError("the character index must be prime to p")
    hits, hist = _run(system, f, domain, spec, m, budget, workers, chunk)
    powers = [0] * p
    for t, c in enumerate(hist):
        powers[(a * t) % p] += c
    value = Cyclotomic.from_powers(p, powers)
    return CharSumRecord(f, domain, tuple(system), m, a % p, value, hits)
