"""Abstract syntax of the imperative parallel language and of assertions.

Assertions reuse the boolean expression nodes and add implication and
quantifiers over integer variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


# -- arithmetic ---------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Loc:
    name: str


@dataclass(frozen=True)
class IntVar:
    name: str


@dataclass(frozen=True)
class Add:
    left: "Aexp"
    right: "Aexp"


@dataclass(frozen=True)
class Sub:
    left: "Aexp"
    right: "Aexp"


@dataclass(frozen=True)
class Mul:
    left: "Aexp"
    right: "Aexp"


Aexp = Union[Num, Loc, IntVar, Add, Sub, Mul]


# -- booleans and assertions --------------------------------------------------

@dataclass(frozen=True)
class BoolConst:
    value: bool


TRUE = BoolConst(True)
FALSE = BoolConst(False)


@dataclass(frozen=True)
class Eq:
    left: Aexp
    right: Aexp


@dataclass(frozen=True)
class Le:
    left: Aexp
    right: Aexp


@dataclass(frozen=True)
class Not:
    arg: "Bexp"


@dataclass(frozen=True)
class And:
    left: "Bexp"
    right: "Bexp"


@dataclass(frozen=True)
class Or:
    left: "Bexp"
    right: "Bexp"


@dataclass(frozen=True)
class Implies:
    left: "Assertion"
    right: "Assertion"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Assertion"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Assertion"


Bexp = Union[BoolConst, Eq, Le, Not, And, Or]
Assertion = Union[Bexp, Implies, Forall, Exists]


# -- commands -----------------------------------------------------------------

@dataclass(frozen=True)
class Skip:
    pass


@dataclass(frozen=True)
class Assign:
    loc: str
    expr: Aexp


@dataclass(frozen=True)
class SeqC:
    first: "Com"
    second: "Com"


@dataclass(frozen=True)
class If:
    cond: Bexp
    then: "Com"
    orelse: "Com"


@dataclass(frozen=True)
class While:
    cond: Bexp
    body: "Com"
    inv: Optional[Assertion] = None


@dataclass(frozen=True)
class ParC:
    left: "Com"
    right: "Com"


Com = Union[Skip, Assign, SeqC, If, While, ParC]

SKIP = Skip()


def conj(*parts: Assertion) -> Assertion:
    parts = [p for p in parts if p != TRUE]
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


# -- printing -----------------------------------------------------------------

_ARITH = {Add: ("+", 1), Sub: ("-", 1), Mul: ("*", 2)}


def render_aexp(a: Aexp) -> str:
    if isinstance(a, Num):
        return str(a.value)
    if isinstance(a, (Loc, IntVar)):
        return a.name
    symbol, level = _ARITH[type(a)]

    def operand(x, right_side):
        text = render_aexp(x)
        sub = _ARITH.get(type(x))
        if sub and (sub[1] < level or (sub[1] == level and right_side)):
            return f"({text})"
        return text

    return f"{operand(a.left, False)} {symbol} {operand(a.right, True)}"


# implication 1 (right assoc), or 2, and 3, not 4, atoms 5; quantifiers 0
def _blevel(b) -> int:
    if isinstance(b, (Forall, Exists)):
        return 0
    if isinstance(b, Implies):
        return 1
    if isinstance(b, Or):
        return 2
    if isinstance(b, And):
        return 3
    if isinstance(b, Not):
        return 4
    return 5


def render_bexp(b: Assertion) -> str:
    if isinstance(b, BoolConst):
        return "true" if b.value else "false"
    if isinstance(b, Eq):
        return f"{render_aexp(b.left)} = {render_aexp(b.right)}"
    if isinstance(b, Le):
        return f"{render_aexp(b.left)} <= {render_aexp(b.right)}"
    if isinstance(b, Not):
        inner = render_bexp(b.arg)
        return f"not {inner}" if _blevel(b.arg) >= 4 else f"not ({inner})"
    if isinstance(b, (Forall, Exists)):
        word = "forall" if isinstance(b, Forall) else "exists"
        return f"{word} {b.var}. {render_bexp(b.body)}"
    level = _blevel(b)
    symbol = {1: "=>", 2: "or", 3: "and"}[level]
    # and/or associate left, => associates right
    left_ok = level + 1 if level == 1 else level
    right_ok = level if level == 1 else level + 1
    left = render_bexp(b.left)
    if _blevel(b.left) < left_ok:
        left = f"({left})"
    right = render_bexp(b.right)
    if _blevel(b.right) < right_ok:
        right = f"({right})"
    return f"{left} {symbol} {right}"


def _block(c: Com) -> str:
    return "{ " + render_com(c) + " }"


def _clevel(c) -> int:
    if isinstance(c, ParC):
        return 1
    if isinstance(c, SeqC):
        return 2
    return 3


def render_com(c: Com) -> str:
    if isinstance(c, Skip):
        return "skip"
    if isinstance(c, Assign):
        return f"{c.loc} := {render_aexp(c.expr)}"
    if isinstance(c, If):
        return f"if {render_bexp(c.cond)} then {_block(c.then)} else {_block(c.orelse)}"
    if isinstance(c, While):
        inv = "" if c.inv is None else f" [inv {render_bexp(c.inv)}]"
        return f"while {render_bexp(c.cond)}{inv} do {_block(c.body)}"
    level = _clevel(c)
    symbol = " || " if level == 1 else "; "
    a, b = (c.left, c.right) if level == 1 else (c.first, c.second)
    left = render_com(a)
    if _clevel(a) < level:
        left = f"({left})"
    right = render_com(b)
    if _clevel(b) <= level:
        right = f"({right})"
    return f"{left}{symbol}{right}"


def size(node) -> int:
    """Number of AST nodes (commands and expressions)."""
    if isinstance(node, (Num, Loc, IntVar, BoolConst, Skip)):
        return 1
    if isinstance(node, Assign):
        return 1 + size(node.expr)
    if isinstance(node, Not):
        return 1 + size(node.arg)
    if isinstance(node, (Forall, Exists)):
        return 1 + size(node.body)
    if isinstance(node, If):
        return 1 + size(node.cond) + size(node.then) + size(node.orelse)
    if isinstance(node, While):
        return 1 + size(node.cond) + size(node.body)
    if isinstance(node, SeqC):
        return 1 + size(node.first) + size(node.second)
    return 1 + size(node.left) + size(node.right)
