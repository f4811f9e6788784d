"""Parser for process term files.

File layout::

    # comment
    race a b;
    comm a b -> c;
    A = a . b;
    main = A || c;

Operators by binding strength: ``||`` (tightest), ``.``, ``+``.  ``{a, b}``
denotes a literal synchronous step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..errors import ContextError, ParseError, UndefinedConstant
from .terms import (
    RESERVED_ACTIONS, Alt, Atom, ConcurrencyContext, Const, Par, ProcTerm, Seq,
    Step,
)

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\|\||->|[.+(){},;=])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # 'ident', 'op' or 'eof'
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
        elif kind in ("ident", "op"):
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message}, found {found}", tok.line, tok.col)

    def accept(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            raise self.error(f"expected {text!r}")

    def ident(self, what="identifier") -> Token:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"expected {what}")
        self.i += 1
        return tok

    def action(self) -> str:
        tok = self.ident("action name")
        return _action_name(tok)

    # term := seq ('+' seq)*
    def term(self) -> ProcTerm:
        t = self.seq()
        while self.accept("+"):
            t = Alt(t, self.seq())
        return t

    def seq(self) -> ProcTerm:
        t = self.par()
        while self.accept("."):
            t = Seq(t, self.par())
        return t

    def par(self) -> ProcTerm:
        t = self.primary()
        while self.accept("||"):
            t = Par(t, self.primary())
        return t

    def primary(self) -> ProcTerm:
        tok = self.tok
        if self.accept("("):
            t = self.term()
            if not self.accept(")"):
                raise self.error(f"unclosed parenthesis opened at {tok.line}:{tok.col}")
            return t
        if self.accept("{"):
            names = [self.action()]
            while self.accept(","):
                names.append(self.action())
            self.expect("}")
            if len(names) == 1:
                return Atom(names[0], (tok.line, tok.col))
            return Step(tuple(sorted(names)))
        if tok.kind != "ident":
            raise self.error("expected an action, a constant or '('")
        self.i += 1
        if tok.text[0].isupper():
            return Const(tok.text, (tok.line, tok.col))
        return Atom(_action_name(tok), (tok.line, tok.col))


def _action_name(tok: Token) -> str:
    if not tok.text[0].islower():
        raise ParseError(f"action names start with a lowercase letter: {tok.text!r}",
                         tok.line, tok.col)
    if tok.text in RESERVED_ACTIONS:
        raise ParseError(f"{tok.text!r} is reserved and not part of the term language",
                         tok.line, tok.col)
    return tok.text


def parse_term(text: str) -> ProcTerm:
    """Parse a single term with no declarations."""
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        raise p.error("unexpected trailing input")
    return t


def parse_spec(text: str) -> Tuple[Dict[str, ProcTerm], ProcTerm, ConcurrencyContext]:
    """Parse a term file into ``(definitions, main, context)``.

    Definitions other than ``main`` must have uppercase names.  Every
    constant used must be defined somewhere in the file.
    """
    p = _Parser(text)
    defs: Dict[str, ProcTerm] = {}
    uses = []
    race, comm = [], {}
    decl_tok = {}
    while p.tok.kind != "eof":
        if p.accept(";"):
            continue
        head = p.tok
        if head.kind == "ident" and head.text in ("race", "comm") and p.peek().text != "=":
            p.i += 1
            a, b = p.action(), p.action()
            if head.text == "race":
                if a == b:
                    raise ParseError(f"an action cannot race with itself: {a}", head.line, head.col)
                race.append((a, b))
                decl_tok[("race",) + tuple(sorted((a, b)))] = head
            else:
                p.expect("->")
                c = p.action()
                key = tuple(sorted((a, b)))
                if key in comm and comm[key] != c:
                    raise ParseError(f"conflicting communication for {a}, {b}", head.line, head.col)
                comm[key] = c
                decl_tok[("comm",) + key] = head
            if p.tok.kind != "eof":
                p.expect(";")
            continue
        name = p.ident("definition name")
        if name.text != "main" and not name.text[0].isupper():
            raise ParseError(f"definition names are uppercase or 'main': {name.text!r}",
                             name.line, name.col)
        if name.text in defs:
            raise ParseError(f"duplicate definition of {name.text!r}", name.line, name.col)
        p.expect("=")
        start = p.i
        defs[name.text] = p.term()
        uses.extend(t for t in p.tokens[start:p.i] if t.kind == "ident" and t.text[0].isupper())
        if p.tok.kind != "eof":
            p.expect(";")
    if "main" not in defs:
        tok = p.tok
        raise ParseError("no 'main' definition", tok.line, tok.col)
    for tok in uses:
        if tok.text not in defs:
            raise UndefinedConstant(tok.text, (tok.line, tok.col))
    overlap = sorted(set(tuple(sorted(r)) for r in race) & set(comm))
    if overlap:
        tok = decl_tok[("comm",) + overlap[0]]
        raise ParseError(f"pair {overlap[0][0]}, {overlap[0][1]} is declared both racing "
                         "and communicating", tok.line, tok.col)
    try:
        ctx = ConcurrencyContext.build(race, comm)
    except ContextError as exc:  # pragma: no cover - guarded above
        raise ParseError(str(exc)) from exc
    return defs, defs["main"], ctx
