"""Concrete syntax: recursive-descent parser and minimal-parenthesis printer.

Grammar, loosest to tightest::

    formula  := iff
    iff      := imp ("<->" imp)*
    imp      := or ("->" imp)?
    or       := and ("|" and)*
    and      := unary ("&" unary)*
    unary    := ("~" | "¬" | "[]" | "<>") unary | quant | atomexpr
    quant    := ("forall" | "exists") IDENT "." unary
    atomexpr := IDENT | IDENT "(" IDENT ")" | "false" | "_|_" | "(" formula ")"
"""
from __future__ import annotations

import re
from functools import lru_cache

from .errors import ParseError
from .formula import (
    And, Atom, Box, Dia, Exists, Falsum, FALSUM, Forall, Formula, Iff, Imp, Neg, Or,
    PredApp,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|_\|_|\[\]|<>|[~¬&|().])|(?P<ident>[A-Za-z][A-Za-z0-9_]*))"
)
_KEYWORDS = {"forall", "exists", "false"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", pos, frozenset({"formula token"}))
        start = m.start("op") if m.group("op") else m.start("ident")
        if m.group("op"):
            tok = m.group("op")
            tokens.append(("NOT" if tok == "¬" else tok, tok, start))
        else:
            word = m.group("ident")
            tokens.append((word if word in _KEYWORDS else "IDENT", word, start))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, *kinds: str) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] not in kinds:
            shown = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ParseError(f"unexpected {shown}", tok[2], frozenset(kinds))
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.imp()
        while self.peek() == "<->":
            self.take("<->")
            left = Iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.take("->")
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek() == "|":
            self.take("|")
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek() == "&":
            self.take("&")
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind = self.peek()
        if kind in ("~", "NOT"):
            self.take(kind)
            return Neg(self.unary())
        if kind == "[]":
            self.take("[]")
            return Box(self.unary())
        if kind == "<>":
            self.take("<>")
            return Dia(self.unary())
        if kind in ("forall", "exists"):
            self.take(kind)
            var = self.take("IDENT")[1]
            self.take(".")
            body = self.unary()
            return Forall(var, body) if kind == "forall" else Exists(var, body)
        return self.atomexpr()

    def atomexpr(self) -> Formula:
        kind = self.peek()
        if kind in ("false", "_|_"):
            self.take(kind)
            return FALSUM
        if kind == "(":
            self.take("(")
            inner = self.formula()
            self.take(")")
            return inner
        if kind == "IDENT":
            name = self.take("IDENT")[1]
            if self.peek() == "(":
                self.take("(")
                var = self.take("IDENT")[1]
                self.take(")")
                return PredApp(name, var)
            return Atom(name)
        self.take("IDENT", "(", "false", "_|_", "~", "NOT", "[]", "<>", "forall", "exists")
        raise AssertionError("unreachable")


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.take("EOF")
    return f


_IFF, _IMP, _OR, _AND, _UNARY = 1, 2, 3, 4, 5
_BINARY_OPS = {Iff: ("<->", _IFF), Imp: ("->", _IMP), Or: ("|", _OR), And: ("&", _AND)}
_PREFIX = {Neg: "~", Box: "[]", Dia: "<>"}


def _prec(f: Formula) -> int:
    op = _BINARY_OPS.get(type(f))
    return op[1] if op else _UNARY


def _wrap(f: Formula, need: int) -> str:
    s = render_formula(f)
    return f"({s})" if _prec(f) < need else s


@lru_cache(maxsize=1 << 16)
def render_formula(f: Formula) -> str:
    """Render with the fewest parentheses the grammar needs.

    Quantifiers directly under a prefix operator are parenthesised as well,
    purely for legibility (``~(exists x. f(x))``).
    """
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, PredApp):
        return f"{f.pred}({f.var})"
    if isinstance(f, Falsum):
        return "false"
    if isinstance(f, (Neg, Box, Dia)):
        body = f.body
        if isinstance(body, (Forall, Exists)):
            return f"{_PREFIX[type(f)]}({render_formula(body)})"
        return _PREFIX[type(f)] + _wrap(body, _UNARY)
    if isinstance(f, (Forall, Exists)):
        q = "forall" if isinstance(f, Forall) else "exists"
        return f"{q} {f.var}. {_wrap(f.body, _UNARY)}"
    sym, prec = _BINARY_OPS[type(f)]
    if isinstance(f, Imp):
        left, right = _wrap(f.left, prec + 1), _wrap(f.right, prec)
    else:
        left, right = _wrap(f.left, prec), _wrap(f.right, prec + 1)
    return f"{left} {sym} {right}"
