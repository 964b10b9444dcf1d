"""Canonical text form for polynomials: ``3/2*z1^2*z2 - z2 + 1``."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .poly import MultiPoly, grevlex_key, merge_vars


class PolySyntaxError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UndeclaredVariableError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str, line: int):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise PolySyntaxError(f"unexpected character {text[col - 1]!r}", line, col)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, variables, line: int):
        self.toks = _tokenize(text, line)
        self.i = 0
        self.line = line
        self.declared = tuple(variables) if variables is not None else None
        self.ctx = self.declared if self.declared is not None else ()

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, self.line, tok[2])

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op_tok = self.take()
            q = self.unary()
            if op_tok[1] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    self.fail("division only by a nonzero constant", op_tok)
                p = p / q.constant_value()
        return p

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num" or "." in exp_tok[1]:
                self.fail("exponent must be a non-negative integer", exp_tok)
            return base ** int(exp_tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, text, col = tok
        if kind == "num":
            return MultiPoly.const(Fraction(text), self.ctx)
        if kind == "name":
            if self.declared is not None and text not in self.declared:
                raise UndeclaredVariableError(
                    f"line {self.line}, column {col}: undeclared variable {text!r}"
                )
            if text not in self.ctx:
                self.ctx = merge_vars(self.ctx, (text,))
            return MultiPoly.var(text, self.ctx)
        if kind == "op" and text == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return p
        self.fail(f"unexpected token {text!r}" if text else "unexpected end of input", tok)


def parse_poly(text: str, variables: Sequence[str] | None = None, line: int = 1) -> MultiPoly:
    """Parse ``text`` exactly. With ``variables`` given, other names are rejected."""
    p = _Parser(text, variables, line).parse()
    ctx = tuple(variables) if variables is not None else merge_vars(p.vars)
    return p.extend(ctx)


def format_coeff(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True):
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(p.vars, e) if k
        )
        a = abs(c)
        if not mono:
            body = format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coeff(a)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
