"""Reader and writer for the plain-text ideal format.

A file looks like::

    # the cusp
    vars x,y;
    x^2 - y^3
    weights (3,2);
    chart z1=x, z2=y; vweights (3,2);

Statements end at ``;`` or at a newline outside parentheses.  ``weights``
may be followed by further ``(..)`` rows as separate statements, or
repeated once per row.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .polyarith import Polynomial, VariableContext, format_polynomial

KEYWORDS = ("vars", "weights", "coweight", "chart", "vweights")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>[-+*^/(),;=])
""", re.VERBOSE)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            out.append(Token("nl", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, col))
        pos = m.end()
    return out


def _statements(tokens: Sequence[Token]) -> List[List[Token]]:
    stmts, cur, depth = [], [], 0
    for tok in tokens:
        if tok.kind == "op" and tok.text == "(":
            depth += 1
        elif tok.kind == "op" and tok.text == ")":
            depth -= 1
        if (tok.kind == "op" and tok.text == ";") or (tok.kind == "nl" and depth <= 0):
            if cur:
                stmts.append(cur)
            cur, depth = [], 0
            continue
        if tok.kind == "nl":
            continue
        cur.append(tok)
    if cur:
        stmts.append(cur)
    return stmts


class _ExprParser:
    """Recursive descent over one statement's tokens."""

    def __init__(self, tokens: Sequence[Token], ctx: Optional[VariableContext]):
        self.toks = list(tokens)
        self.i = 0
        self.ctx = ctx

    def peek(self) -> Optional[Token]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else Token("eof", "", 1, 1)
            raise ParseError("unexpected end of expression", last.line, last.col + len(last.text))
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.take()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def at(self, *texts) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "op" and tok.text in texts

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)

    # grammar
    def expr(self) -> Polynomial:
        p = self.term()
        while self.at("+", "-"):
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.at("*", "/"):
            op = self.take()
            q = self.unary()
            if op.text == "*":
                p = p * q
            else:
                if not q.is_constant():
                    raise ParseError("can only divide by a constant", op.line, op.col)
                c = q.coefficient(self.ctx.zero_exponent())
                if not c:
                    raise ParseError("division by zero", op.line, op.col)
                p = p.scale(1 / c)
        return p

    def unary(self) -> Polynomial:
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.at("^"):
            caret = self.take()
            tok = self.peek()
            if tok is None or tok.kind != "int":
                raise ParseError("exponent must be a positive integer literal",
                                 caret.line, caret.col)
            self.take()
            k = int(tok.text)
            if k <= 0:
                raise ParseError("exponent must be a positive integer literal", tok.line, tok.col)
            if self.at("^"):
                t2 = self.peek()
                raise ParseError("chained exponents are ambiguous; use parentheses",
                                 t2.line, t2.col)
            base = base ** k
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "int":
            return Polynomial.constant(self.ctx, int(tok.text))
        if tok.kind == "ident":
            if tok.text not in self.ctx.names:
                raise ParseError(f"undeclared variable {tok.text!r}", tok.line, tok.col)
            return Polynomial.variable(self.ctx, tok.text)
        if tok.kind == "op" and tok.text == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)


def _int_tuple(tokens: Sequence[Token]) -> Tuple[int, ...]:
    """Parse ``( int, int, ... )`` allowing signed entries."""
    if not tokens or tokens[0].text != "(" or tokens[-1].text != ")":
        tok = tokens[0] if tokens else Token("eof", "", 1, 1)
        raise ParseError("expected a parenthesised integer row", tok.line, tok.col)
    vals, sign, expect_num = [], 1, True
    for tok in tokens[1:-1]:
        if expect_num:
            if tok.text == "-" and sign == 1:
                sign = -1
                continue
            if tok.kind != "int":
                raise ParseError(f"expected an integer, found {tok.text!r}", tok.line, tok.col)
            vals.append(sign * int(tok.text))
            sign, expect_num = 1, False
        else:
            if tok.text != ",":
                raise ParseError(f"expected ',', found {tok.text!r}", tok.line, tok.col)
            expect_num = True
    if expect_num:
        tok = tokens[-1]
        raise ParseError("row ends with a dangling comma", tok.line, tok.col)
    return tuple(vals)


def _is_int_tuple(tokens: Sequence[Token]) -> bool:
    if len(tokens) < 3 or tokens[0].text != "(" or tokens[-1].text != ")":
        return False
    return all(t.kind == "int" or t.text in (",", "-") for t in tokens[1:-1])


def _split_commas(tokens: Sequence[Token]) -> List[List[Token]]:
    parts, cur, depth = [], [], 0
    for tok in tokens:
        if tok.text == "(":
            depth += 1
        elif tok.text == ")":
            depth -= 1
        if tok.text == "," and depth == 0:
            parts.append(cur)
            cur = []
        else:
            cur.append(tok)
    parts.append(cur)
    return parts


@dataclass
class ChartSpec:
    """Raw chart declaration: ``(left name, right-hand tokens as text)`` pairs."""

    entries: List[Tuple[str, str]]
    weights: Optional[Tuple[int, ...]] = None


@dataclass
class IdealFile:
    context: VariableContext
    generators: List[Polynomial]
    weights: Optional[List[Tuple[int, ...]]] = None
    coweight: Optional[Tuple[int, ...]] = None
    chart: Optional[ChartSpec] = None
    directives: List[str] = field(default_factory=list)


def _is_directive(stmt: Sequence[Token]) -> bool:
    head = stmt[0]
    if head.kind != "ident" or head.text not in KEYWORDS:
        return False
    if len(stmt) == 1:
        return True
    nxt = stmt[1]
    return nxt.kind == "ident" or nxt.text == "("


def parse_file(text: str) -> IdealFile:
    """Parse a full ideal file (generators plus optional directives)."""
    stmts = _statements(tokenize(text))
    if not stmts:
        raise ParseError("empty input; expected 'vars ...;'", 1, 1)
    head = stmts[0]
    if head[0].text != "vars":
        raise ParseError("file must start with a 'vars' declaration", head[0].line, head[0].col)
    names = []
    for part in _split_commas(head[1:]):
        if len(part) != 1 or part[0].kind != "ident":
            tok = part[0] if part else head[0]
            raise ParseError("malformed variable list", tok.line, tok.col)
        names.append(part[0].text)
    if not names:
        raise ParseError("no variables declared", head[0].line, head[0].col)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable in 'vars'", head[0].line, head[0].col)
    ctx = VariableContext(tuple(names))
    out = IdealFile(ctx, [])
    last_directive = None
    for stmt in stmts[1:]:
        if _is_directive(stmt):
            kw = stmt[0].text
            body = stmt[1:]
            out.directives.append(kw)
            if kw == "vars":
                raise ParseError("'vars' may appear only once", stmt[0].line, stmt[0].col)
            if kw == "weights":
                # a repeated 'weights' statement adds a row
                out.weights = (out.weights or []) + [_int_tuple(body)]
            elif kw == "coweight":
                out.coweight = _int_tuple(body)
            elif kw == "vweights":
                if out.chart is None:
                    raise ParseError("'vweights' before 'chart'", stmt[0].line, stmt[0].col)
                out.chart.weights = _int_tuple(body)
            elif kw == "chart":
                entries = []
                for part in _split_commas(body):
                    if len(part) < 3 or part[0].kind != "ident" or part[1].text != "=":
                        tok = part[0] if part else stmt[0]
                        raise ParseError("chart entries look like 'name=expression'",
                                         tok.line, tok.col)
                    entries.append((part[0].text, " ".join(t.text for t in part[2:])))
                out.chart = ChartSpec(entries)
            last_directive = kw
            continue
        if last_directive == "weights" and _is_int_tuple(stmt):
            out.weights.append(_int_tuple(stmt))
            continue
        last_directive = None
        parser = _ExprParser(stmt, ctx)
        poly = parser.expr()
        parser.done()
        out.generators.append(poly)
    return out


def parse_ideal(text: str) -> Tuple[VariableContext, List[Polynomial]]:
    """Return the declared context and the generators, in canonical form."""
    f = parse_file(text)
    return f.context, f.generators


def parse_polynomial(text: str, ctx: VariableContext) -> Polynomial:
    parser = _ExprParser([t for t in tokenize(text) if t.kind != "nl"], ctx)
    p = parser.expr()
    parser.done()
    return p


def format_ideal(ctx: VariableContext, generators: Sequence[Polynomial],
                 weights: Optional[Sequence[Sequence[int]]] = None) -> str:
    """Inverse of :func:`parse_ideal` on canonical forms."""
    lines = [f"vars {','.join(ctx.names)};"]
    lines.extend(f"{format_polynomial(g)};" for g in generators)
    if weights:
        rows = "; ".join("(" + ",".join(str(v) for v in row) + ")" for row in weights)
        lines.append(f"weights {rows};")
    return "\n".join(lines) + "\n"


def parse_int_rows(text: str) -> List[Tuple[int, ...]]:
    """``"1,1;0,1"`` -> ``[(1, 1), (0, 1)]`` (command-line weight syntax)."""
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()")
        if not chunk:
            continue
        try:
            rows.append(tuple(int(v) for v in chunk.split(",")))
        except ValueError:
            raise ValueError(f"malformed weight row {chunk!r}") from None
    if not rows:
        raise ValueError("no weight rows given")
    return rows


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())
