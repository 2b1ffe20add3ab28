"""Concrete syntax for propositions.

ASCII grammar (unicode connectives are accepted as synonyms)::

    prop    := imp
    imp     := or ('=>' or)*          left associative
    or      := and ('\\/' and)*
    and     := unary ('/\\' unary)*
    unary   := '~' unary | quant | primary
    quant   := ('forall' | 'exists') ident+ '.' prop
    primary := 'top' | 'bot' | '(' prop ')' | ident [ '(' term, ... ')' ]
    term    := ident [ '(' term, ... ')' ]

With a signature, bare identifiers in term position are constants when
declared as 0-ary functions and variables otherwise.  Without one, applied
identifiers are functions and bare ones are variables (``c()`` forces a
constant).
"""

from __future__ import annotations

import re
from typing import Optional

from .syntax import (
    BOT, TOP, And, Atom, Bot, Exists, Fn, Forall, Imp, Or, Prop, Signature,
    Term, Top, Var, neg,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<imp>=>|⊃)
      | (?P<and>/\\|∧|&)
      | (?P<or>\\/|∨|\|)
      | (?P<not>~|¬)
      | (?P<top>⊤)
      | (?P<bot>⊥)
      | (?P<forall>∀)
      | (?P<exists>∃)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)
      | (?P<punct>[().,])
    )""",
    re.VERBOSE,
)

_KEYWORDS = {"forall": "forall", "exists": "exists", "top": "top", "bot": "bot"}


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "ident" and value in _KEYWORDS:
            kind = _KEYWORDS[value]
        elif kind == "punct":
            kind = value
        out.append((kind, value, start))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, sig: Optional[Signature]):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig
        self.seen_preds: dict[str, int] = {}
        self.seen_funs: dict[str, int] = {}

    def peek(self) -> str:
        return self.toks[self.i][0]

    def pos(self) -> int:
        return self.toks[self.i][2]

    def take(self, kind: str) -> str:
        k, v, p = self.toks[self.i]
        if k != kind:
            what = "end of input" if k == "eof" else repr(v)
            raise ParseError(f"expected {kind!r} but found {what}", p, self.text)
        self.i += 1
        return v

    def error(self, msg: str, pos: Optional[int] = None):
        raise ParseError(msg, self.pos() if pos is None else pos, self.text)

    # propositions

    def prop(self) -> Prop:
        left = self.disj()
        while self.peek() == "imp":
            self.i += 1
            left = Imp(left, self.disj())
        return left

    def disj(self) -> Prop:
        left = self.conj()
        while self.peek() == "or":
            self.i += 1
            left = Or(left, self.conj())
        return left

    def conj(self) -> Prop:
        left = self.unary()
        while self.peek() == "and":
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Prop:
        k = self.peek()
        if k == "not":
            self.i += 1
            return neg(self.unary())
        if k in ("forall", "exists"):
            self.i += 1
            names = [self.take("ident")]
            while self.peek() == "ident":
                names.append(self.take("ident"))
            self.take(".")
            body = self.prop()
            cls = Forall if k == "forall" else Exists
            for name in reversed(names):
                body = cls(name, body)
            return body
        return self.primary()

    def primary(self) -> Prop:
        k = self.peek()
        if k == "top":
            self.i += 1
            return TOP
        if k == "bot":
            self.i += 1
            return BOT
        if k == "(":
            self.i += 1
            p = self.prop()
            self.take(")")
            return p
        if k == "ident":
            start = self.pos()
            name = self.take("ident")
            args: tuple[Term, ...] = ()
            if self.peek() == "(":
                args = self.term_args()
            self.check_symbol(name, len(args), start, predicate=True)
            return Atom(name, args)
        if k == "eof":
            self.error("unexpected end of input")
        self.error(f"unexpected token {self.toks[self.i][1]!r}")

    # terms

    def term_args(self) -> tuple[Term, ...]:
        self.take("(")
        if self.peek() == ")":
            self.i += 1
            return ()
        args = [self.term()]
        while self.peek() == ",":
            self.i += 1
            args.append(self.term())
        self.take(")")
        return tuple(args)

    def term(self) -> Term:
        start = self.pos()
        name = self.take("ident")
        if self.peek() == "(":
            args = self.term_args()
            self.check_symbol(name, len(args), start, predicate=False)
            return Fn(name, args)
        if self.sig is not None and name in self.sig.functions:
            self.check_symbol(name, 0, start, predicate=False)
            return Fn(name)
        return Var(name)

    def check_symbol(self, name: str, arity: int, pos: int, predicate: bool):
        kind = "predicate" if predicate else "function"
        if self.sig is not None:
            table = self.sig.predicates if predicate else self.sig.functions
            if name not in table:
                self.error(f"unknown {kind} symbol {name!r}", pos)
            if table[name] != arity:
                self.error(f"arity mismatch for {name!r}: expected {table[name]}, got {arity}", pos)
        else:
            seen = self.seen_preds if predicate else self.seen_funs
            other = self.seen_funs if predicate else self.seen_preds
            if name in other:
                self.error(f"{name!r} used both as predicate and function", pos)
            if seen.setdefault(name, arity) != arity:
                self.error(f"arity mismatch for {name!r}: expected {seen[name]}, got {arity}", pos)


def parse_prop(text: str, sig: Optional[Signature] = None) -> Prop:
    p = _Parser(text, sig)
    out = p.prop()
    if p.peek() != "eof":
        p.error(f"unexpected token {p.toks[p.i][1]!r}")
    return out


def parse_term(text: str, sig: Optional[Signature] = None) -> Term:
    p = _Parser(text, sig)
    out = p.term()
    if p.peek() != "eof":
        p.error(f"unexpected token {p.toks[p.i][1]!r}")
    return out


# ---------------------------------------------------------------------------
# Printing

_ASCII = {"imp": "=>", "and": "/\\", "or": "\\/", "top": "top", "bot": "bot",
          "forall": "forall ", "exists": "exists "}
_UNICODE = {"imp": "⊃", "and": "∧", "or": "∨", "top": "⊤", "bot": "⊥",
            "forall": "∀", "exists": "∃"}

_PREC = {Imp: 1, Or: 2, And: 3}
_OP = {Imp: "imp", Or: "or", And: "and"}


def print_term(t: Term) -> str:
    return str(t)


def print_prop(p: Prop, unicode: bool = False) -> str:
    return _print(p, 0, _UNICODE if unicode else _ASCII)


def pretty(p: Prop) -> str:
    return print_prop(p, unicode=True)


def _print(p: Prop, ctx: int, sym: dict) -> str:
    if isinstance(p, Atom):
        if not p.args:
            return p.pred
        return f"{p.pred}({', '.join(map(str, p.args))})"
    if isinstance(p, Top):
        return sym["top"]
    if isinstance(p, Bot):
        return sym["bot"]
    if isinstance(p, (Imp, Or, And)):
        prec = _PREC[type(p)]
        s = f"{_print(p.lhs, prec, sym)} {sym[_OP[type(p)]]} {_print(p.rhs, prec + 1, sym)}"
        return f"({s})" if ctx > prec else s
    if isinstance(p, (Forall, Exists)):
        q = sym["forall"] if isinstance(p, Forall) else sym["exists"]
        s = f"{q}{p.var}. {_print(p.body, 0, sym)}"
        return f"({s})" if ctx > 0 else s
    raise TypeError(p)
