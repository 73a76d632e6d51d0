"""Tokenizer and recursive-descent parser for the textual element syntaxes.

One grammar serves every algebra in the package (field elements, Ore
polynomials, lambda-polynomials, multivariate equations)::

    expr   := term (('+' | '-') term)*
    term   := power (('*' | '/' | <juxtaposition>) power)*
    power  := unary ('^' ['-'] INT)?
    unary  := '-' unary | atom
    atom   := INT | IDENT | '(' expr ')'

The parser builds a small AST; :func:`evaluate` folds it through an *algebra*
object which decides what symbols mean and which operations are legal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'ident', 'op', 'end'
    value: str
    line: int
    col: int


def _position(text, index):
    line = text.count("\n", 0, index) + 1
    col = index - (text.rfind("\n", 0, index) + 1) + 1
    return line, col


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.lastindex is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        line, col = _position(text, start)
        num, ident, op = m.group(1), m.group(2), m.group(3)
        if num is not None:
            tokens.append(Token("num", num, line, col))
        elif ident is not None:
            tokens.append(Token("ident", ident, line, col))
        elif op in "+-*/^()":
            tokens.append(Token("op", op, line, col))
        else:
            raise ParseError(f"unexpected character {op!r}", line, col, text)
        pos = m.end()
    line, col = _position(text, len(text))
    tokens.append(Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col, self.text)

    def expect(self, value):
        tok = self.next()
        if tok.kind != "op" or tok.value != value:
            self.error(f"expected {value!r}", tok)
        return tok

    def parse(self):
        if self.peek().kind == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().value!r}")
        return node

    def expr(self):
        node = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "+-":
                self.next()
                rhs = self.term()
                node = ("add" if tok.value == "+" else "sub", tok, node, rhs)
            else:
                return node

    def _starts_atom(self, tok):
        return tok.kind in ("num", "ident") or (tok.kind == "op" and tok.value == "(")

    def term(self):
        node = self.power()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "*/":
                self.next()
                rhs = self.power()
                node = ("mul" if tok.value == "*" else "div", tok, node, rhs)
            elif self._starts_atom(tok):
                rhs = self.power()
                node = ("mul", tok, node, rhs)
            else:
                return node

    def power(self):
        base = self.unary()
        tok = self.peek()
        if tok.kind == "op" and tok.value == "^":
            self.next()
            sign = 1
            if self.peek().kind == "op" and self.peek().value == "-":
                self.next()
                sign = -1
            exp_tok = self.next()
            if exp_tok.kind != "num":
                self.error("exponent must be an integer literal", exp_tok)
            return ("pow", tok, base, sign * int(exp_tok.value))
        return base

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value == "-":
            self.next()
            return ("neg", tok, self.unary())
        return self.atom()

    def atom(self):
        tok = self.next()
        if tok.kind == "num":
            return ("num", tok, int(tok.value))
        if tok.kind == "ident":
            return ("sym", tok, tok.value)
        if tok.kind == "op" and tok.value == "(":
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {tok.value!r}", tok)


def parse(text):
    return _Parser(text).parse()


def evaluate(node, algebra, text=None):
    """Fold an AST through ``algebra``; algebra errors are re-raised with positions."""
    kind, tok = node[0], node[1]
    try:
        if kind == "num":
            return algebra.num(node[2])
        if kind == "sym":
            return algebra.sym(node[2])
        if kind == "neg":
            return algebra.neg(evaluate(node[2], algebra, text))
        if kind == "pow":
            return algebra.pow(evaluate(node[2], algebra, text), node[3])
        a = evaluate(node[2], algebra, text)
        b = evaluate(node[3], algebra, text)
        return getattr(algebra, kind)(a, b)
    except ParseError:
        raise
    except (ValueError, TypeError, ZeroDivisionError, ArithmeticError) as exc:
        raise ParseError(str(exc), tok.line, tok.col, text) from exc
    except Exception as exc:
        from .errors import DrinfeldError

        if isinstance(exc, DrinfeldError):
            raise ParseError(str(exc), tok.line, tok.col, text) from exc
        raise


def parse_with(text, algebra):
    return evaluate(parse(text), algebra, text)


class RingAlgebra:
    """Default algebra: elements support Python arithmetic operators."""

    def neg(self, a):
        return -a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def pow(self, a, n):
        return a ** n


class FieldAlgebra(RingAlgebra):
    """Host-field elements: integers, ``g`` and (RATFUNC only) ``t``."""

    def __init__(self, spec, allow_t=None):
        self.spec = spec
        self.allow_t = (not spec.is_finite) if allow_t is None else allow_t

    def num(self, n):
        return self.spec.const(n)

    def sym(self, name):
        if name == "g":
            return self.spec.const(self.spec.gf.gen)
        if name == "t":
            if not self.allow_t:
                raise ValueError("'t' is not available in FINITE mode")
            return self.spec.t()
        raise ValueError(f"unknown symbol {name!r}")

    def pow(self, a, n):
        if n < 0 and not a:
            raise ZeroDivisionError("negative power of zero")
        return a ** n


def parse_element(text, spec):
    """Parse a host-field element, e.g. ``(t^2+1)/(t+1)`` or ``g^3*t``."""
    return parse_with(text, FieldAlgebra(spec))
