"""Evaluation, substitution and light simplification of assertions."""

from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, Mapping, Optional, Sequence

from ..ippl.evaluate import eval_aexp
from ..ippl.syntax import (
    FALSE, TRUE, Add, And, BoolConst, Eq, Exists, Forall, Implies, IntVar, Le,
    Loc, Mul, Not, Num, Or, Sub,
)

_ARITH = (Add, Sub, Mul)
_BINARY_BOOL = (And, Or, Implies)


def holds(a, state, env: Optional[Mapping[str, int]] = None,
          qbound: Sequence[int] = range(-4, 5)) -> bool:
    """Truth of assertion ``a``; quantifiers range over ``qbound``."""
    env = dict(env or {})
    if isinstance(a, BoolConst):
        return a.value
    if isinstance(a, Eq):
        return eval_aexp(a.left, state, env) == eval_aexp(a.right, state, env)
    if isinstance(a, Le):
        return eval_aexp(a.left, state, env) <= eval_aexp(a.right, state, env)
    if isinstance(a, Not):
        return not holds(a.arg, state, env, qbound)
    if isinstance(a, And):
        return holds(a.left, state, env, qbound) and holds(a.right, state, env, qbound)
    if isinstance(a, Or):
        return holds(a.left, state, env, qbound) or holds(a.right, state, env, qbound)
    if isinstance(a, Implies):
        return not holds(a.left, state, env, qbound) or holds(a.right, state, env, qbound)
    if isinstance(a, (Forall, Exists)):
        test = all if isinstance(a, Forall) else any
        return test(holds(a.body, state, {**env, a.var: v}, qbound) for v in qbound)
    raise TypeError(f"not an assertion: {a!r}")


def free_intvars(a) -> FrozenSet[str]:
    if isinstance(a, IntVar):
        return frozenset({a.name})
    if isinstance(a, (Num, Loc, BoolConst)):
        return frozenset()
    if isinstance(a, Not):
        return free_intvars(a.arg)
    if isinstance(a, (Forall, Exists)):
        return free_intvars(a.body) - {a.var}
    return free_intvars(a.left) | free_intvars(a.right)


def all_intvars(a) -> FrozenSet[str]:
    if isinstance(a, (Forall, Exists)):
        return all_intvars(a.body) | {a.var}
    if isinstance(a, IntVar):
        return frozenset({a.name})
    if isinstance(a, (Num, Loc, BoolConst)):
        return frozenset()
    if isinstance(a, Not):
        return all_intvars(a.arg)
    return all_intvars(a.left) | all_intvars(a.right)


def _fresh(base: str, avoid) -> str:
    for n in itertools.count(1):
        name = f"{base}{n}"
        if name not in avoid:
            return name


def _rename(a, old: str, new: str):
    """Rename free occurrences of integer variable ``old``."""
    if isinstance(a, IntVar):
        return IntVar(new) if a.name == old else a
    if isinstance(a, (Num, Loc, BoolConst)):
        return a
    if isinstance(a, Not):
        return Not(_rename(a.arg, old, new))
    if isinstance(a, (Forall, Exists)):
        if a.var == old:
            return a
        return type(a)(a.var, _rename(a.body, old, new))
    return type(a)(_rename(a.left, old, new), _rename(a.right, old, new))


def subst_many(a, mapping: Mapping[str, object]):
    """Simultaneously replace each location ``X`` in ``mapping`` by ``mapping[X]``.

    Bound integer variables are renamed when they would capture a variable
    of a substituted expression.
    """
    if not mapping:
        return a
    incoming = frozenset().union(*(free_intvars(e) for e in mapping.values()))

    def go(x):
        if isinstance(x, Loc):
            return mapping.get(x.name, x)
        if isinstance(x, (Num, IntVar, BoolConst)):
            return x
        if isinstance(x, Not):
            return Not(go(x.arg))
        if isinstance(x, (Forall, Exists)):
            var, body = x.var, x.body
            if var in incoming:
                new = _fresh(var, incoming | all_intvars(body))
                body = _rename(body, var, new)
                var = new
            return type(x)(var, go(body))
        return type(x)(go(x.left), go(x.right))

    return go(a)


def subst(a, loc: str, expr):
    """``a[expr/loc]``."""
    return subst_many(a, {loc: expr})


def simplify(a):
    """Fold constant arithmetic and boolean connectives with constant operands."""
    if isinstance(a, (Num, Loc, IntVar, BoolConst)):
        return a
    if isinstance(a, _ARITH):
        left, right = simplify(a.left), simplify(a.right)
        if isinstance(left, Num) and isinstance(right, Num):
            return Num(eval_aexp(type(a)(left, right), None))
        return type(a)(left, right)
    if isinstance(a, (Eq, Le)):
        left, right = simplify(a.left), simplify(a.right)
        if isinstance(left, Num) and isinstance(right, Num):
            return TRUE if (left.value == right.value if isinstance(a, Eq)
                            else left.value <= right.value) else FALSE
        if isinstance(a, Eq) and left == right:
            return TRUE
        return type(a)(left, right)
    if isinstance(a, Not):
        arg = simplify(a.arg)
        if isinstance(arg, BoolConst):
            return BoolConst(not arg.value)
        return Not(arg)
    if isinstance(a, (Forall, Exists)):
        body = simplify(a.body)
        return body if isinstance(body, BoolConst) else type(a)(a.var, body)
    left, right = simplify(a.left), simplify(a.right)
    if isinstance(a, And):
        if left == FALSE or right == FALSE:
            return FALSE
        if left == TRUE:
            return right
        if right == TRUE or left == right:
            return left
        return And(left, right)
    if isinstance(a, Or):
        if left == TRUE or right == TRUE:
            return TRUE
        if left == FALSE:
            return right
        if right == FALSE or left == right:
            return left
        return Or(left, right)
    if isinstance(a, Implies):
        if left == FALSE or right == TRUE or left == right:
            return TRUE
        if left == TRUE:
            return right
        return Implies(left, right)
    raise TypeError(f"not an assertion: {a!r}")


def interpretations(names, qbound) -> Dict:
    """Every assignment of ``qbound`` values to ``names`` in lexicographic order."""
    names = sorted(names)
    for combo in itertools.product(list(qbound), repeat=len(names)):
        yield dict(zip(names, combo))
