"""Concrete syntax for commands, assertions and Hoare triples.

Commands::

    skip | X := a | c ; c | c || c
    if b then { c } else { c }
    while b [inv A] do { c }

``||`` binds weaker than ``;``.  Branch and loop bodies may omit the braces
when they are a single simple command.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from ..errors import ParseError
from .syntax import (
    FALSE, SKIP, TRUE, Add, And, Assign, Com, Eq, Exists, Forall, If, Implies,
    IntVar, Le, Loc, Mul, Not, Num, Or, ParC, SeqC, Sub, While,
)

KEYWORDS = frozenset({
    "skip", "if", "then", "else", "while", "do", "inv", "true", "false",
    "not", "and", "or", "forall", "exists", "pre", "prog", "post",
})

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>:=|\|\||<=|=>|[-+*=;(){}\[\].:])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0
        self.assertion = False

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message}, found {found}", tok.line, tok.col)

    def at(self, text):
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def accept(self, text):
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            raise self.error(f"expected {text!r}")

    def at_eof(self):
        return self.tok.kind == "eof"

    # -- commands

    def com(self) -> Com:
        c = self.seq()
        while self.accept("||"):
            c = ParC(c, self.seq())
        return c

    def seq(self) -> Com:
        c = self.simple()
        while self.accept(";"):
            c = SeqC(c, self.simple())
        return c

    def simple(self) -> Com:
        tok = self.tok
        if self.accept("skip"):
            return SKIP
        if self.accept("("):
            c = self.com()
            self.expect(")")
            return c
        if self.accept("{"):
            c = self.com()
            self.expect("}")
            return c
        if self.accept("if"):
            cond = self.bexp()
            self.expect("then")
            then = self.simple()
            self.expect("else")
            return If(cond, then, self.simple())
        if self.accept("while"):
            cond = self.bexp()
            inv = None
            if self.accept("["):
                self.expect("inv")
                saved, self.assertion = self.assertion, True
                inv = self.implication()
                self.assertion = saved
                self.expect("]")
            self.expect("do")
            return While(cond, self.simple(), inv)
        if tok.kind == "ident" and tok.text[0].isupper():
            self.i += 1
            self.expect(":=")
            return Assign(tok.text, self.aexp())
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            raise self.error("only locations (uppercase names) can be assigned")
        raise self.error("expected a command")

    # -- arithmetic

    def aexp(self):
        a = self.term()
        while True:
            if self.accept("+"):
                a = Add(a, self.term())
            elif self.accept("-"):
                a = Sub(a, self.term())
            else:
                return a

    def term(self):
        a = self.factor()
        while self.accept("*"):
            a = Mul(a, self.factor())
        return a

    def factor(self):
        tok = self.tok
        if self.accept("-"):
            num = self.tok
            if num.kind != "num":
                raise self.error("expected a number after unary '-'")
            self.i += 1
            return Num(-int(num.text))
        if tok.kind == "num":
            self.i += 1
            return Num(int(tok.text))
        if self.accept("("):
            a = self.aexp()
            self.expect(")")
            return a
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.i += 1
            if tok.text[0].isupper():
                return Loc(tok.text)
            if not self.assertion:
                raise ParseError(
                    f"integer variable {tok.text!r} may only appear in assertions",
                    tok.line, tok.col)
            return IntVar(tok.text)
        raise self.error("expected an arithmetic expression")

    # -- booleans / assertions

    def bexp(self):
        return self.implication() if self.assertion else self.disjunction()

    def implication(self):
        left = self.disjunction()
        if self.assertion and self.accept("=>"):
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        b = self.conjunction()
        while self.accept("or"):
            b = Or(b, self.conjunction())
        return b

    def conjunction(self):
        b = self.negation()
        while self.accept("and"):
            b = And(b, self.negation())
        return b

    def negation(self):
        if self.accept("not"):
            return Not(self.negation())
        if self.at("forall") or self.at("exists"):
            if not self.assertion:
                raise self.error("quantifiers may only appear in assertions")
            quant = Forall if self.tok.text == "forall" else Exists
            self.i += 1
            var = self.tok
            if var.kind != "ident" or not var.text[0].islower() or var.text in KEYWORDS:
                raise self.error("expected an integer variable")
            self.i += 1
            self.expect(".")
            return quant(var.text, self.implication())
        return self.batom()

    def batom(self):
        if self.accept("true"):
            return TRUE
        if self.accept("false"):
            return FALSE
        if self.at("("):
            start = self.i
            try:
                return self.comparison()
            except ParseError:
                self.i = start
            self.expect("(")
            b = self.bexp()
            self.expect(")")
            return b
        return self.comparison()

    def comparison(self):
        left = self.aexp()
        if self.accept("="):
            return Eq(left, self.aexp())
        if self.accept("<="):
            return Le(left, self.aexp())
        raise self.error("expected '=' or '<='")


def _finish(p, value):
    if not p.at_eof():
        raise p.error("unexpected trailing input")
    return value


def parse_ippl(text: str) -> Com:
    p = _Parser(text)
    return _finish(p, p.com())


def parse_bexp(text: str):
    p = _Parser(text)
    return _finish(p, p.bexp())


def parse_aexp(text: str, allow_intvars=False):
    p = _Parser(text)
    p.assertion = allow_intvars
    return _finish(p, p.aexp())


def parse_assertion(text: str):
    p = _Parser(text)
    p.assertion = True
    return _finish(p, p.implication())


def parse_triple(text: str):
    """Parse ``pre: A  prog: c  post: B`` into ``(pre, command, post)``."""
    p = _Parser(text)
    p.expect("pre")
    p.expect(":")
    p.assertion = True
    pre = p.implication()
    p.assertion = False
    p.expect("prog")
    p.expect(":")
    com = p.com()
    p.expect("post")
    p.expect(":")
    p.assertion = True
    post = p.implication()
    return _finish(p, (pre, com, post))
