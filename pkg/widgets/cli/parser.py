"""Recursive-descent parser for the manifold expression language.

Grammar (whitespace-insensitive)::

    expr    := term ('#' term)*
    term    := INT '*' primary | primary
    primary := atom | '(' expr ')'
    atom    := 'S(' n ')' | 'SxS(' p ',' q ')' | 'TwS(' q ')' | 'CP(' n ')'
             | 'HP(' n ')' | 'W' | 'M(' k ')' | 'X(' i ')' | 'Surf(' g ')'
             | 'Sig0(' expr ')' | 'Sig1(' expr ')'

``Sig0`` / ``Sig1`` are evaluated by the suspension rewrite rules, so the
result is always canonical.
"""
from __future__ import annotations

import re
from typing import Dict, List, NamedTuple, Sequence

from widgets.errors import DslSyntaxError
from widgets.manifold import (
    ManifoldExpr,
    connected_sum,
    expr_of,
    m_atom,
    multiple,
    projective_space,
    sphere,
    sphere_product,
    surface,
    twisted_product,
    wu_manifold,
    x_atom,
)
from widgets.suspension import suspend

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<punct>[(),#*]))")

# name -> (number of integer arguments, constructor)
_INT_ATOMS: Dict[str, tuple] = {
    "S": (1, sphere),
    "SxS": (2, sphere_product),
    "TwS": (1, twisted_product),
    "CP": (1, lambda n: projective_space("C", n)),
    "HP": (1, lambda n: projective_space("H", n)),
    "W": (0, wu_manifold),
    "M": (1, m_atom),
    "X": (1, x_atom),
    "Surf": (1, surface),
}
_SUSPENSIONS = {"Sig0": 0, "Sig1": 1}
ATOM_NAMES = tuple(_INT_ATOMS) + tuple(_SUSPENSIONS)


class Token(NamedTuple):
    kind: str  # int | name | punct | eof
    text: str
    offset: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:]
            if rest.strip():
                bad = pos + (len(rest) - len(rest.lstrip()))
                raise DslSyntaxError(f"unexpected character {text[bad]!r}", _byte_offset(text, bad))
            tokens.append(Token("eof", "", _byte_offset(text, len(text))))
            return tokens
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), _byte_offset(text, m.start(kind))))
        pos = m.end()


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # ---- token helpers
    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _fail(self, message: str, expected: Sequence[str]) -> DslSyntaxError:
        return DslSyntaxError(message, self.current.offset, expected)

    def expect(self, text: str) -> Token:
        tok = self.current
        if tok.text != text or tok.kind == "eof":
            shown = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self._fail(f"unexpected {shown}", [repr(text)])
        self.pos += 1
        return tok

    def integer(self) -> int:
        tok = self.current
        if tok.kind != "int":
            shown = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self._fail(f"unexpected {shown}", ["integer"])
        self.pos += 1
        return int(tok.text)

    # ---- grammar
    def parse(self) -> ManifoldExpr:
        result = self.expr()
        if self.current.kind != "eof":
            raise self._fail(f"unexpected {self.current.text!r}", ["'#'", "end of input"])
        return result

    def expr(self) -> ManifoldExpr:
        result = self.term()
        while self.current.text == "#":
            self.pos += 1
            result = connected_sum(result, self.term())
        return result

    def term(self) -> ManifoldExpr:
        if self.current.kind == "int":
            count = self.integer()
            self.expect("*")
            return multiple(self.primary(), count)
        return self.primary()

    def primary(self) -> ManifoldExpr:
        tok = self.current
        if tok.text == "(" and tok.kind == "punct":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind != "name":
            shown = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self._fail(f"unexpected {shown}", ATOM_NAMES + ("'('", "integer"))
        if tok.text in _SUSPENSIONS:
            self.pos += 1
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return suspend(inner, _SUSPENSIONS[tok.text])
        if tok.text not in _INT_ATOMS:
            raise self._fail(f"unknown atom {tok.text!r}", ATOM_NAMES)
        self.pos += 1
        arity, build = _INT_ATOMS[tok.text]
        return expr_of(build(*self.arguments(arity)))

    def arguments(self, arity: int) -> List[int]:
        if arity == 0:
            return []
        self.expect("(")
        values = [self.integer()]
        for _ in range(arity - 1):
            self.expect(",")
            values.append(self.integer())
        self.expect(")")
        return values


def parse_expr(text: str) -> ManifoldExpr:
    return _Parser(text).parse()


def format_expr(m: ManifoldExpr) -> str:
    return m.to_dsl()
