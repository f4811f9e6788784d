"""Weakest preconditions and verification-condition generation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..errors import MissingInvariant, UnsupportedConstruct
from ..ippl.analysis import expr_locations, locations
from ..ippl.syntax import (
    TRUE, And, Assign, Eq, If, Implies, Loc, Not, ParC, SeqC, Skip, While, conj,
    render_com,
)
from .assertions import simplify, subst, subst_many

Path = Tuple[object, Dict[str, object]]


def paths(c) -> List[Path]:
    """Symbolic runs of a loop-free command.

    Each path is ``(guard, updates)``: when ``guard`` holds in the initial
    store, the command is defined and ends with every location ``X`` holding
    the initial-store value of ``updates.get(X, X)``.  Guards of different
    paths exclude each other; their disjunction is where ``c`` is defined.
    """
    if isinstance(c, Skip):
        return [(TRUE, {})]
    if isinstance(c, Assign):
        return [(TRUE, {c.loc: c.expr})]
    if isinstance(c, SeqC):
        return [_then(p, q) for p in paths(c.first) for q in paths(c.second)]
    if isinstance(c, If):
        return ([(conj(c.cond, g), s) for g, s in paths(c.then)]
                + [(conj(Not(c.cond), g), s) for g, s in paths(c.orelse)])
    if isinstance(c, ParC):
        out = []
        for g1, s1 in paths(SeqC(c.left, c.right)):
            for g2, s2 in paths(SeqC(c.right, c.left)):
                same = _same_final(s1, s2)
                out.append((conj(g1, g2, same), s1))
        return out
    if isinstance(c, While):
        raise UnsupportedConstruct("loops have no finite path set")
    raise TypeError(f"not a command: {c!r}")


def _then(p: Path, q: Path) -> Path:
    g1, s1 = p
    g2, s2 = q
    updates = dict(s1)
    for loc, e in s2.items():
        updates[loc] = subst_many(e, s1)
    return conj(g1, subst_many(g2, s1)), updates


def _same_final(s1, s2):
    eqs = [Eq(s1.get(x, Loc(x)), s2.get(x, Loc(x))) for x in sorted(set(s1) | set(s2))]
    return conj(*eqs)


def orders_agree(c0, c1):
    """Holds where both sequential orders, when both defined, end in the same store."""
    parts = []
    for g1, s1 in paths(SeqC(c0, c1)):
        for g2, s2 in paths(SeqC(c1, c0)):
            same = _same_final(s1, s2)
            if same != TRUE:
                parts.append(Implies(conj(g1, g2), same))
    return conj(*parts)


def wp(c, post):
    """Weakest precondition for a loop-free command.

    ``s`` satisfies ``wp(c, post)`` exactly when ``c`` has a final store from
    ``s`` and that store satisfies ``post``.  For ``c0 || c1`` this takes both
    nestings ``wp(c0, wp(c1, post))`` and ``wp(c1, wp(c0, post))`` together
    with the requirement that the two orders end in the same store.
    """
    if isinstance(c, Skip):
        return post
    if isinstance(c, Assign):
        return subst(post, c.loc, c.expr)
    if isinstance(c, SeqC):
        return wp(c.first, wp(c.second, post))
    if isinstance(c, If):
        return And(Implies(c.cond, wp(c.then, post)), Implies(Not(c.cond), wp(c.orelse, post)))
    if isinstance(c, ParC):
        return conj(wp(c.left, wp(c.right, post)), wp(c.right, wp(c.left, post)),
                    orders_agree(c.left, c.right))
    if isinstance(c, While):
        raise UnsupportedConstruct("wp of a while loop needs an invariant; use vc_gen")
    raise TypeError(f"not a command: {c!r}")


@dataclass(frozen=True)
class HoareTriple:
    pre: object
    command: object
    post: object


@dataclass(frozen=True)
class VC:
    description: str
    assertion: object


def vc_gen(triple: HoareTriple) -> List[VC]:
    """Verification conditions for a partial-correctness triple.

    The first condition is ``pre => P`` where ``P`` is the backward
    precondition; every loop adds a preservation and an exit condition for
    its invariant.  For ``c0 || c1`` the intermediate assertions are
    ``C = pre(c1, B)`` and ``D = pre(c0, B)``, giving the obligations
    ``{A} c0 {C}``, ``{C} c1 {B}``, ``{A} c1 {D}``, ``{D} c0 {B}``.
    """
    side: List[VC] = []

    def pre(c, q):
        if isinstance(c, Skip):
            return q
        if isinstance(c, Assign):
            return subst(q, c.loc, c.expr)
        if isinstance(c, SeqC):
            return pre(c.first, pre(c.second, q))
        if isinstance(c, If):
            return And(Implies(c.cond, pre(c.then, q)), Implies(Not(c.cond), pre(c.orelse, q)))
        if isinstance(c, ParC):
            mid_c = pre(c.right, q)
            mid_d = pre(c.left, q)
            return conj(pre(c.left, mid_c), pre(c.right, mid_d))
        if isinstance(c, While):
            if c.inv is None:
                raise MissingInvariant(render_com(c))
            body_pre = pre(c.body, c.inv)
            _add(side, VC(f"invariant preserved by: {render_com(c)}",
                          Implies(And(c.inv, c.cond), body_pre)))
            _add(side, VC(f"invariant and exit imply postcondition of: {render_com(c)}",
                          Implies(And(c.inv, Not(c.cond)), q)))
            return c.inv
        raise TypeError(f"not a command: {c!r}")

    first = VC("precondition implies weakest precondition",
               Implies(triple.pre, pre(triple.command, triple.post)))
    return [first] + side


def _add(vcs, vc):
    if vc not in vcs:
        vcs.append(vc)


def simplified(vcs: List[VC]) -> List[VC]:
    return [VC(v.description, simplify(v.assertion)) for v in vcs]


def triple_locations(triple: HoareTriple):
    return locations(triple.command) | expr_locations(triple.pre) | expr_locations(triple.post) \
        | _invariant_locations(triple.command)


def _invariant_locations(c):
    if isinstance(c, While):
        inv = frozenset() if c.inv is None else expr_locations(c.inv)
        return inv | _invariant_locations(c.body)
    if isinstance(c, SeqC):
        return _invariant_locations(c.first) | _invariant_locations(c.second)
    if isinstance(c, ParC):
        return _invariant_locations(c.left) | _invariant_locations(c.right)
    if isinstance(c, If):
        return _invariant_locations(c.then) | _invariant_locations(c.orelse)
    return frozenset()
