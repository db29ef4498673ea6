"""Series expression grammar.

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ('^' exponent)?
    exponent := INT | '(' ['-'] INT ['/' INT] ')'
    atom     := INT | 't'INDEX | 'sqrt2' | NAME | 'O' '(' expr ')' | '(' expr ')'

``tK`` is the monomial t^(e_K) for the K-th unit vector, ``O(m)`` is the
zero series truncated at the exponent of the monomial ``m``.  Rendering
produces exactly this grammar and ``parse(render(s)) == s``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from dataclasses import field as _field
from fractions import Fraction
from typing import Mapping

from .coeff import Coeff, render_coeff
from .errors import ParseError, ZeroDivisor
from .group import ExpVec
from .series import Precision, Series, s_inverse, s_mul, s_power

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass
class Context:
    dim: int
    field: str = "qsqrt2"
    precision: Precision | None = None
    bindings: Mapping[str, Series] = _field(default_factory=dict)

    def prec(self) -> Precision:
        return self.precision or Precision.default(self.dim)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: Context) -> None:
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, v, pos = self.take()
        if v != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> Series:
        s = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos)
        return s

    def expr(self) -> Series:
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Series:
        acc = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op, pos = self.take()[1:]
            rhs = self.unary()
            if op == "*":
                acc = s_mul(acc, rhs)
            else:
                acc = divide(acc, rhs, self.ctx)
        return acc

    def unary(self) -> Series:
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Series:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            q = self.exponent()
            return power(base, q, self.ctx)
        return base

    def exponent(self) -> Fraction:
        kind, v, pos = self.take()
        if kind == "int":
            return Fraction(int(v))
        if v != "(":
            raise ParseError("exponent must be an integer or (p/q)", pos)
        neg = False
        if self.peek()[1] == "-":
            self.take()
            neg = True
        kind, num, pos = self.take()
        if kind != "int":
            raise ParseError("expected integer in exponent", pos)
        q = Fraction(int(num))
        if self.peek()[1] == "/":
            self.take()
            kind, den, pos = self.take()
            if kind != "int" or int(den) == 0:
                raise ParseError("expected nonzero integer denominator", pos)
            q /= int(den)
        self.expect(")")
        return -q if neg else q

    def atom(self) -> Series:
        kind, v, pos = self.take()
        n = self.ctx.dim
        if kind == "int":
            return Series.const(int(v), n)
        if kind == "name":
            if v == "sqrt2":
                if self.ctx.field == "q":
                    raise ParseError("sqrt2 is not in the coefficient field Q", pos)
                return Series.const(Coeff(0, 1), n)
            if v == "O" and self.peek()[1] == "(":
                self.take()
                inner = self.expr()
                self.expect(")")
                if not (inner.exact and len(inner.terms) == 1):
                    raise ParseError("O(...) takes a single monomial", pos)
                return Series.big_o(inner.terms[0][0])
            m = re.fullmatch(r"t(\d+)", v)
            if m:
                k = int(m.group(1))
                if not 1 <= k <= n:
                    raise ParseError(f"atom {v} outside dimension {n}", pos)
                return Series.gen(k, n)
            if v in self.ctx.bindings:
                return self.ctx.bindings[v]
            raise ParseError(f"unknown name {v!r}", pos)
        if v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def divide(f: Series, g: Series, ctx: Context) -> Series:
    if g.is_exact_zero():
        raise ZeroDivisor("division by zero")
    if g.exact and len(g.terms) == 1:
        return f / g
    return s_mul(f, s_inverse(g, ctx.prec()))


def power(f: Series, q: Fraction, ctx: Context) -> Series:
    if q.denominator == 1 and q >= 0:
        acc = Series.const(1, f.dim)
        for _ in range(int(q)):
            acc = s_mul(acc, f)
        return acc
    if f.exact and len(f.terms) == 1:
        e, c = f.terms[0]
        return Series.monomial(e * q, c.power(q, ctx.field))
    if q.denominator == 1:
        return power(s_inverse(f, ctx.prec()), -q, ctx)
    return s_power(f, q, ctx.prec(), ctx.field)


def parse(text: str, ctx: Context | int) -> Series:
    if isinstance(ctx, int):
        ctx = Context(ctx)
    return _Parser(text, ctx).parse()


# -- rendering ---------------------------------------------------------------

def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_monomial(e: ExpVec) -> str:
    parts = []
    for i, q in enumerate(e, start=1):
        if not q:
            continue
        if q == 1:
            parts.append(f"t{i}")
        elif q.denominator == 1 and q > 0:
            parts.append(f"t{i}^{q.numerator}")
        else:
            parts.append(f"t{i}^({_rat(q)})")
    return "*".join(parts)


def _negative_simple(c: Coeff) -> bool:
    return (not c.b and c.a < 0) or (not c.a and c.b < 0)


def _term(e: ExpVec, c: Coeff) -> str:
    mono = render_monomial(e)
    if not mono:
        return render_coeff(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{render_coeff(c)}*{mono}"


def render(s: Series) -> str:
    pieces: list[str] = []
    for e, c in s.terms:
        if not pieces:
            pieces.append(_term(e, c))
        elif _negative_simple(c):
            pieces.append(" - " + _term(e, -c))
        else:
            pieces.append(" + " + _term(e, c))
    if not s.exact:
        big_o = f"O({render_monomial(s.trunc) or '1'})"
        pieces.append(big_o if not pieces else " + " + big_o)
    return "".join(pieces) or "0"
