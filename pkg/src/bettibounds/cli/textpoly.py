"""Parser for polynomial text such as ``x1^2*x2 - 3`` or ``x1^-1 + x1``.

Grammar (whitespace ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT | VAR ('^' SIGNED_INT)? | '(' expr ')'
"""
from __future__ import annotations

import re

from ..laurent import LaurentPolynomial, format_polynomial

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d+)|(?P<op>[-+*^()]))")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, source: str):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.source = source


def _tokenize(src: str):
    pos, out = 0, []
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {src[pos]!r}", pos, src)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, n: int):
        self.src = src
        self.n = n
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, what: str):
        kind, text, off = self.peek()
        found = "end of input" if kind == "end" else repr(text)
        raise PolynomialSyntaxError(f"syntax error: expected {what}, found {found}", off, self.src)

    def expr(self) -> LaurentPolynomial:
        # one leading '-' is accepted so that printed negatives read back
        negate = self.peek()[:2] == ("op", "-")
        if negate:
            self.take()
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> LaurentPolynomial:
        acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> LaurentPolynomial:
        kind, text, off = self.peek()
        if kind == "int":
            self.take()
            return LaurentPolynomial.constant(self.n, int(text))
        if kind == "var":
            self.take()
            idx = int(text[1:])
            if not 1 <= idx <= self.n:
                raise PolynomialSyntaxError(
                    f"variable {text} out of range x1..x{self.n}", off, self.src)
            exp = 1
            if self.peek()[:2] == ("op", "^"):
                self.take()
                exp = self.signed_int()
            e = [0] * self.n
            e[idx - 1] = exp
            return LaurentPolynomial(self.n, {tuple(e): 1})
        if (kind, text) == ("op", "("):
            self.take()
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("')'")
            self.take()
            return inner
        self.fail("an integer, a variable or '('")

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        if self.peek()[0] != "int":
            self.fail("an integer exponent")
        return sign * int(self.take()[1])


def parse_polynomial(src: str, n: int) -> LaurentPolynomial:
    """Parse ``src`` into a Laurent polynomial in ``x1..xn``."""
    if n < 0:
        raise ValueError("number of variables must be nonnegative")
    parser = _Parser(src, n)
    if parser.peek()[0] == "end":
        parser.fail("an expression")
    poly = parser.expr()
    if parser.peek()[0] != "end":
        parser.fail("an operator or end of input")
    return poly


__all__ = ["PolynomialSyntaxError", "parse_polynomial", "format_polynomial"]
