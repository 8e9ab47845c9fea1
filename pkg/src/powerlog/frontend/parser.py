"""Expression grammar for equations and rational functions.

Integers, ``a/b``, the unit ``i``, variables ``x``, ``t``, ``y0``..``y99``,
the operators ``+ - * / ^`` and parentheses.  ``^`` takes a nonnegative
integer literal.  Juxtaposition is rejected rather than read as a product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..exact import QQ, GaussianRational, Poly, RatFunc
from .model import AlgebraicODE, DeltaPolynomial

__all__ = ["ParseError", "parse_expression", "parse_ode", "parse_ratfunc", "parse_delta_poly"]

MAX_Y = 99


class ParseError(ValueError):
    """Syntax or semantic error located at ``line``:``column`` (1-based)."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, LPAR, RPAR, END
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"(?P<ws>[ \t\r\n]+)|(?P<INT>\d+)|(?P<NAME>[A-Za-z_]\w*)|(?P<OP>[-+*/^])|(?P<LPAR>\()|(?P<RPAR>\))")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rfind("\n") + 1
        else:
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("END", "", line, pos - line_start + 1))
    return tokens


# -- AST -----------------------------------------------------------------
@dataclass(frozen=True)
class Num:
    value: int
    tok: Token


@dataclass(frozen=True)
class Var:
    name: str
    tok: Token


@dataclass(frozen=True)
class Unary:
    op: str
    arg: object
    tok: Token


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object
    tok: Token


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int
    tok: Token


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def parse(self):
        if self.tok.kind == "END":
            raise self.error("empty expression")
        node = self.expr()
        if self.tok.kind != "END":
            if self.tok.kind in ("INT", "NAME", "LPAR"):
                raise self.error("implicit multiplication is not allowed; use '*'")
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.advance()
            node = Binary(op.text, node, self.term(), op)
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "OP" and self.tok.text in "*/":
            op = self.advance()
            node = Binary(op.text, node, self.unary(), op)
        return node

    def unary(self):
        if self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.advance()
            return Unary(op.text, self.unary(), op)
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "OP" and self.tok.text == "^":
            op = self.advance()
            if self.tok.kind != "INT":
                raise self.error("exponent must be a nonnegative integer literal")
            e = int(self.advance().text)
            if self.tok.kind == "OP" and self.tok.text == "^":
                raise self.error("chained '^' is ambiguous; add parentheses")
            return Power(base, e, op)
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "INT":
            self.advance()
            return Num(int(tok.text), tok)
        if tok.kind == "NAME":
            self.advance()
            return Var(tok.text, tok)
        if tok.kind == "LPAR":
            self.advance()
            node = self.expr()
            if self.tok.kind != "RPAR":
                raise self.error("expected ')'")
            self.advance()
            return node
        if tok.kind == "END":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")


def parse_expression(text: str):
    """Parse to an AST; raises :class:`ParseError` with a location."""
    if not isinstance(text, str):
        raise TypeError("expression must be a string")
    return _Parser(text).parse()


# -- evaluation ------------------------------------------------------------
class _Algebra:
    """Callbacks turning AST leaves and operators into values."""

    def num(self, n):
        raise NotImplementedError

    def var(self, name, tok):
        raise NotImplementedError

    def div(self, a, b, tok):
        raise NotImplementedError


def _evaluate(node, alg):
    if isinstance(node, Num):
        return alg.num(node.value)
    if isinstance(node, Var):
        return alg.var(node.name, node.tok)
    if isinstance(node, Unary):
        v = _evaluate(node.arg, alg)
        return -v if node.op == "-" else v
    if isinstance(node, Power):
        return alg.pow(_evaluate(node.base, alg), node.exponent)
    a = _evaluate(node.left, alg)
    b = _evaluate(node.right, alg)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    return alg.div(a, b, node.tok)


class _RatFuncAlgebra(_Algebra):
    def num(self, n):
        return RatFunc.const(n)

    def var(self, name, tok):
        if name == "t":
            return RatFunc.t()
        if name == "i":
            return RatFunc.const(GaussianRational(0, 1))
        raise ParseError(f"unknown variable {name!r} in a function of t", tok.line, tok.column)

    def pow(self, a, e):
        return a ** e

    def div(self, a, b, tok):
        if b.is_zero():
            raise ParseError("division by zero", tok.line, tok.column)
        return a / b


class _DeltaAlgebra(_Algebra):
    def __init__(self, n):
        self.n = n

    def _const(self, c):
        return DeltaPolynomial(self.n, {(0, (0,) * (self.n + 1)): c})

    def num(self, n):
        return self._const(QQ(n))

    def var(self, name, tok):
        zero = (0,) * (self.n + 1)
        if name == "x":
            return DeltaPolynomial(self.n, {(1, zero): 1})
        if name == "i":
            return self._const(GaussianRational(0, 1))
        m = re.fullmatch(r"y(0|[1-9]\d?)", name)
        if not m:
            raise ParseError(f"unknown variable {name!r}", tok.line, tok.column)
        j = int(m.group(1))
        if j > self.n:
            raise ParseError(f"y{j} exceeds the declared order {self.n}", tok.line, tok.column)
        q = [0] * (self.n + 1)
        q[j] = 1
        return DeltaPolynomial(self.n, {(0, tuple(q)): 1})

    def pow(self, a, e):
        out = self._const(QQ(1))
        for _ in range(e):
            out = out * a
        return out

    def div(self, a, b, tok):
        zero = (0,) * (self.n + 1)
        if len(b.terms) != 1 or (0, zero) not in b.terms:
            if b.is_zero():
                raise ParseError("division by zero", tok.line, tok.column)
            raise ParseError("only division by a nonzero constant is allowed", tok.line, tok.column)
        inv = 1 / b.terms[(0, zero)]
        return DeltaPolynomial(self.n, {k: c * inv for k, c in a.terms.items()})


def _max_y_index(node) -> int:
    stack, best = [node], -1
    while stack:
        nd = stack.pop()
        if isinstance(nd, Var):
            m = re.fullmatch(r"y(0|[1-9]\d?)", nd.name)
            if m:
                best = max(best, int(m.group(1)))
        elif isinstance(nd, Unary):
            stack.append(nd.arg)
        elif isinstance(nd, Power):
            stack.append(nd.base)
        elif isinstance(nd, Binary):
            stack.extend((nd.left, nd.right))
    return best


def parse_delta_poly(text: str, order: int | None = None) -> DeltaPolynomial:
    """Parse a polynomial in ``x, y0..yn``; ``n`` is inferred unless given."""
    ast = parse_expression(text)
    n = _max_y_index(ast)
    if order is not None:
        if order < 0:
            raise ValueError("order must be nonnegative")
        n = order
    return _evaluate(ast, _DeltaAlgebra(max(n, 0)))


def parse_ode(text: str, order: int | None = None) -> AlgebraicODE:
    """Parse ``F(x, y0, ..., yn)``.

    Raises :class:`ParseError` for syntax errors and for ``y_j`` with ``j``
    above an explicitly declared ``order``; raises ``ValueError`` when the
    result does not involve any ``y_j``.
    """
    return AlgebraicODE.from_poly(parse_delta_poly(text, order))


def parse_ratfunc(text: str) -> RatFunc:
    """Parse a rational function of ``t`` into canonical form."""
    return _evaluate(parse_expression(text), _RatFuncAlgebra())


def parse_poly(text: str) -> Poly:
    f = parse_ratfunc(text)
    if not f.is_poly():
        raise ValueError(f"{text!r} is not a polynomial")
    return f.num
