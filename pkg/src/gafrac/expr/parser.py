"""Recursive-descent parser for the expression grammar.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' factor)?
    base   := NUMBER | 'x' | CONST | FUNC '(' expr ')'
            | 'pow' '(' expr ',' expr ')' | '(' expr ')'

Power is right-associative.  Unary minus is handled at factor level and
binds looser than '^', so -x^2 parses as -(x^2).  pow(a, b) is accepted
as call syntax for the same node '^' builds.  The named constants pi and
e fold to numeric literals during parsing.

Failures raise ParseError carrying the 0-based byte offset into the
UTF-8 encoding of the input plus the set of acceptable token kinds.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from . import nodes
from .nodes import CONSTANTS, FUNCTION_NAMES

__all__ = ["parse"]

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),])"
    r")"
)


class _Token:
    __slots__ = ("kind", "text", "offset")

    def __init__(self, kind, text, offset):
        self.kind = kind      # 'num' | 'ident' | exact operator char | 'end'
        self.text = text
        self.offset = offset  # byte offset in the UTF-8 input


def _tokenize(text):
    byte_offsets = []
    total = 0
    for ch in text:
        byte_offsets.append(total)
        total += len(ch.encode("utf-8"))
    byte_offsets.append(total)

    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            # Skip trailing whitespace before declaring a bad character.
            stripped = text[pos:].strip()
            if not stripped:
                break
            bad_at = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(
                f"unexpected character {text[bad_at]!r}",
                byte_offsets[bad_at],
            )
        if m.group("num") is not None:
            tokens.append(_Token("num", m.group("num"),
                                 byte_offsets[m.start("num")]))
        elif m.group("ident") is not None:
            tokens.append(_Token("ident", m.group("ident"),
                                 byte_offsets[m.start("ident")]))
        else:
            tokens.append(_Token(m.group("op"), m.group("op"),
                                 byte_offsets[m.start("op")]))
        pos = m.end()
    tokens.append(_Token("end", "", byte_offsets[n]))
    return tokens


_ATOM_EXPECTED = ("number", "'x'", "function name", "'('", "'-'")


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, expected_desc):
        if self.cur.kind != kind:
            raise ParseError(
                f"unexpected {self._describe(self.cur)}",
                self.cur.offset,
                (expected_desc,),
            )
        return self.advance()

    @staticmethod
    def _describe(tok):
        if tok.kind == "end":
            return "end of input"
        return f"token {tok.text!r}"

    def parse_expr(self):
        node = self.parse_term()
        while self.cur.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.parse_term()
            node = nodes.add(node, rhs) if op == "+" else nodes.sub(node, rhs)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.cur.kind in ("*", "/"):
            op = self.advance().kind
            rhs = self.parse_factor()
            node = nodes.mul(node, rhs) if op == "*" else nodes.div(node, rhs)
        return node

    def parse_factor(self):
        if self.cur.kind == "-":
            self.advance()
            return nodes.neg(self.parse_factor())
        base = self.parse_base()
        if self.cur.kind == "^":
            self.advance()
            exponent = self.parse_factor()
            return nodes.power(base, exponent)
        return base

    def parse_base(self):
        tok = self.cur
        if tok.kind == "num":
            self.advance()
            return nodes.Num(float(tok.text))
        if tok.kind == "(":
            self.advance()
            inner = self.parse_expr()
            self.expect(")", "')'")
            return inner
        if tok.kind == "ident":
            self.advance()
            name = tok.text
            if name == "x":
                return nodes.X
            if name in CONSTANTS:
                return nodes.Num(CONSTANTS[name])
            if name == "pow":
                self.expect("(", "'('")
                first = self.parse_expr()
                self.expect(",", "','")
                second = self.parse_expr()
                self.expect(")", "')'")
                return nodes.power(first, second)
            if name in FUNCTION_NAMES:
                self.expect("(", "'('")
                inner = self.parse_expr()
                self.expect(")", "')'")
                return nodes.func(name, inner)
            raise ParseError(
                f"unknown identifier {name!r}",
                tok.offset,
                ("'x'", "'pi'", "'e'", "function name"),
            )
        raise ParseError(
            f"unexpected {self._describe(tok)}",
            tok.offset,
            _ATOM_EXPECTED,
        )


def parse(text):
    """Parse expression text into an AST; raises ParseError on failure."""
    if not isinstance(text, str):
        raise TypeError("expression text must be a string")
    tokens = _tokenize(text)
    if tokens[0].kind == "end":
        raise ParseError("empty expression", tokens[0].offset, _ATOM_EXPECTED)
    parser = _Parser(tokens)
    node = parser.parse_expr()
    if parser.cur.kind != "end":
        raise ParseError(
            f"unexpected {parser._describe(parser.cur)} after a complete "
            "expression",
            parser.cur.offset,
            ("operator", "end of input"),
        )
    return node
