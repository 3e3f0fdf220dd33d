"""Laurent polynomials with integer coefficients."""
from __future__ import annotations

from typing import Iterable, Mapping

Exponent = tuple[int, ...]


class LaurentPolynomial:
    """Sparse Laurent polynomial in ``x1..xn`` with integer coefficients.

    Zero coefficients are never stored.  Coefficients are plain integers;
    reduction modulo ``p`` happens when the polynomial is evaluated over a
    finite field.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        if n < 0:
            raise ValueError("number of variables must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not have length {n}")
            acc[e] = acc.get(e, 0) + int(c)
        self.n = n
        self.terms: dict[Exponent, int] = {e: c for e, c in sorted(acc.items()) if c != 0}

    @classmethod
    def constant(cls, n: int, c: int) -> "LaurentPolynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "LaurentPolynomial":
        """The coordinate ``x_{i+1}`` (``i`` is zero based)."""
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    def support(self) -> list[Exponent]:
        return list(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def has_negative_exponent(self) -> bool:
        return any(x < 0 for e in self.terms for x in e)

    @property
    def degree(self) -> int:
        """Total degree (sum of exponents) of the highest term; -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def mod(self, p: int) -> "LaurentPolynomial":
        return LaurentPolynomial(self.n, {e: c % p for e, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LaurentPolynomial) and self.n == other.n
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.terms.items())))

    def _check(self, other: "LaurentPolynomial") -> None:
        if self.n != other.n:
            raise ValueError("variable count mismatch")

    def __add__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            other = LaurentPolynomial.constant(self.n, other)
        self._check(other)
        return LaurentPolynomial(self.n, list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPolynomial":
        return (-self) + other

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial(self.n, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = []
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return LaurentPolynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have negative powers")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError("monomial with non-unit coefficient has no inverse")
            return LaurentPolynomial(self.n, {tuple(-x * -k for x in e): c ** -k})
        out = LaurentPolynomial.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def extend(self, n: int) -> "LaurentPolynomial":
        """Embed into ``n >= self.n`` variables (new variables unused)."""
        if n < self.n:
            raise ValueError("cannot shrink variable count")
        pad = (0,) * (n - self.n)
        return LaurentPolynomial(n, {e + pad: c for e, c in self.terms.items()})

    def substitute(self, values: Mapping[int, int]) -> "LaurentPolynomial":
        """Set the variables in ``values`` (zero-based index -> integer) and
        drop them, keeping the remaining variables in order."""
        keep = [i for i in range(self.n) if i not in values]
        out = []
        for e, c in self.terms.items():
            coef = c
            for i, v in values.items():
                if e[i] < 0:
                    if v not in (1, -1):
                        raise ValueError("negative power of a non-unit substitution")
                    coef *= v ** -e[i]
                else:
                    coef *= v ** e[i]
            out.append((tuple(e[i] for i in keep), coef))
        return LaurentPolynomial(len(keep), out)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.n}, {self.terms!r})"


def _monomial_text(e: Exponent) -> str:
    parts = []
    for i, x in enumerate(e):
        if x == 0:
            continue
        parts.append(f"x{i + 1}" if x == 1 else f"x{i + 1}^{x}")
    return "*".join(parts)


def format_polynomial(f: LaurentPolynomial) -> str:
    """Canonical text form, parseable by :func:`bettibounds.cli.textpoly.parse_polynomial`."""
    if f.is_zero():
        return "0"
    out = ""
    for idx, (e, c) in enumerate(sorted(f.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))):
        mono = _monomial_text(e)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = mono if (a == 1 and mono) else (f"{a}*{mono}" if mono else str(a))
        if idx == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += f" {sign} {body}"
    return out
