"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := atom ("^" INT)?
    atom    := INT | "i" | VAR | "(" expr ")"
    VAR     := "x" INT ("_" INT)?

``x3`` is the third coordinate; ``x1_2`` is coordinate 1 of particle 2 and
needs ``coords_per_particle``. ``/`` only divides by nonzero constants.
Positions in error messages are 1-based columns.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import PolyExpr

__all__ = ["parse_expression", "ParseError"]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: str | None = None):
        self.position = position
        self.expected = expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d+(?:_\d+)?)|(?P<i>i)|(?P<op>[-+*/^()]))")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int  # 1-based


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", i + 1)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start + 1))
        i = m.end()
    toks.append(_Tok("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text, nvars, coords_per_particle):
        self.toks = _tokenize(text)
        self.k = 0
        self.nvars = nvars
        self.cpp = coords_per_particle

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def eat(self, text=None):
        t = self.cur
        if text is not None and t.text != text:
            raise ParseError("syntax error", t.pos, repr(text))
        self.k += 1
        return t

    def expr(self) -> PolyExpr:
        out = self.term()
        while self.cur.text in ("+", "-"):
            op = self.eat().text
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> PolyExpr:
        out = self.unary()
        while self.cur.text in ("*", "/"):
            op = self.eat()
            rhs = self.unary()
            if op.text == "*":
                out = out * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("division by a non-constant or zero expression", op.pos)
                out = out.scale(1 / rhs.coeff((0,) * self.nvars))
        return out

    def unary(self) -> PolyExpr:
        if self.cur.text == "-":
            self.eat()
            return -self.unary()
        if self.cur.text == "+":
            self.eat()
            return self.unary()
        return self.power()

    def power(self) -> PolyExpr:
        base = self.atom()
        if self.cur.text == "^":
            self.eat()
            t = self.cur
            if t.text == "-":
                raise ParseError("exponent must be a nonnegative integer", t.pos, "integer")
            if t.kind != "int":
                raise ParseError("exponent must be a nonnegative integer", t.pos, "integer")
            self.eat()
            base = base ** int(t.text)
        return base

    def atom(self) -> PolyExpr:
        t = self.cur
        if t.kind == "int":
            self.eat()
            return PolyExpr.const(self.nvars, Fraction(int(t.text)))
        if t.kind == "i":
            self.eat()
            return PolyExpr.const(self.nvars, "0+1*i")
        if t.kind == "var":
            self.eat()
            return PolyExpr.var(self.nvars, self.var_index(t))
        if t.text == "(":
            self.eat()
            inner = self.expr()
            if self.cur.text != ")":
                raise ParseError("syntax error", self.cur.pos, "')'")
            self.eat()
            return inner
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"syntax error: unexpected {what}", t.pos, "number, 'i', variable or '('")

    def var_index(self, t: _Tok) -> int:
        name = t.text[1:]
        if "_" in name:
            mu, particle = (int(s) for s in name.split("_"))
            if not self.cpp:
                raise ParseError(f"particle alias {t.text} needs coordinates-per-particle", t.pos)
            if not 1 <= mu <= self.cpp:
                raise ParseError(f"unknown variable {t.text}", t.pos)
            idx = (particle - 1) * self.cpp + (mu - 1)
        else:
            idx = int(name) - 1
        if not 0 <= idx < self.nvars or int(name.split("_")[-1]) < 1:
            raise ParseError(f"unknown variable {t.text}", t.pos, f"x1..x{self.nvars}")
        return idx


def parse_expression(text: str, nvars: int, coords_per_particle: int | None = None) -> PolyExpr:
    """Parse ``text`` into a :class:`PolyExpr` on ``nvars`` variables.

    >>> str(parse_expression("(1/2)*i*x1^2", 2))
    '(1/2)*i*x1^2'
    """
    p = _Parser(text, nvars, coords_per_particle)
    out = p.expr()
    if p.cur.kind != "end":
        raise ParseError(f"syntax error: unexpected {p.cur.text!r}", p.cur.pos, "operator or end of input")
    return out
