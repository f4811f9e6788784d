"""Evaluation of arithmetic and boolean expressions in a store."""

from __future__ import annotations

from ..errors import TruconcError
from .syntax import Add, And, BoolConst, Eq, IntVar, Le, Loc, Mul, Not, Num, Or, Sub


class UnboundLocation(TruconcError):
    def __init__(self, loc):
        self.loc = loc
        super().__init__(f"location {loc} is not bound in the store")


class UnboundIntVar(TruconcError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"integer variable {name} has no value")


def eval_aexp(a, state, env=None) -> int:
    if isinstance(a, Num):
        return a.value
    if isinstance(a, Loc):
        try:
            return state[a.name]
        except KeyError:
            raise UnboundLocation(a.name) from None
    if isinstance(a, IntVar):
        if env is None or a.name not in env:
            raise UnboundIntVar(a.name)
        return env[a.name]
    left = eval_aexp(a.left, state, env)
    right = eval_aexp(a.right, state, env)
    if isinstance(a, Add):
        return left + right
    if isinstance(a, Sub):
        return left - right
    if isinstance(a, Mul):
        return left * right
    raise TypeError(f"not an arithmetic expression: {a!r}")


def eval_bexp(b, state, env=None) -> bool:
    if isinstance(b, BoolConst):
        return b.value
    if isinstance(b, Eq):
        return eval_aexp(b.left, state, env) == eval_aexp(b.right, state, env)
    if isinstance(b, Le):
        return eval_aexp(b.left, state, env) <= eval_aexp(b.right, state, env)
    if isinstance(b, Not):
        return not eval_bexp(b.arg, state, env)
    if isinstance(b, And):
        return eval_bexp(b.left, state, env) and eval_bexp(b.right, state, env)
    if isinstance(b, Or):
        return eval_bexp(b.left, state, env) or eval_bexp(b.right, state, env)
    raise TypeError(f"not a boolean expression: {b!r}")
