"""Canonical normal forms of closed process terms.

A normal form is a sum of summands.  Each summand is a sequence of
multi-actions, optionally followed by a parenthesized sum where the
behaviour branches again::

    a . b + b . a + a || b          # flat
    a . (b . c + c)                 # branching after a

When nothing branches after a common prefix this is the familiar flat shape
(alternatives of sequences of parallel atoms).  Keeping the branching tail is
what makes the form step-bisimilar to its source: ``a . (b + c)`` and
``a . b + a . c`` have the same traces but are not bisimilar.

Normalization works on behaviour trees (frozensets of ``(multi_action,
subtree_or_None)`` pairs, ``None`` being successful termination).  Sum is
set union, so duplicate alternatives vanish and order is irrelevant; the
tree is then printed in a fixed order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

from ..errors import ParseError
from .parser import parse_term
from .terms import (
    EMPTY_CONTEXT, Alt, Atom, ConcurrencyContext, Const, MultiAction, Par,
    ProcTerm, Seq, Step, multi_action_key,
)


@dataclass(frozen=True)
class Summand:
    steps: Tuple[MultiAction, ...]
    tail: Optional["NormalForm"] = None

    @cached_property
    def key(self):
        tail = () if self.tail is None else (tuple(s.key for s in self.tail.summands),)
        return (tuple(multi_action_key(m) for m in self.steps), tail)


@dataclass(frozen=True)
class NormalForm:
    summands: Tuple[Summand, ...]

    def __str__(self):
        return render(self)


# -- behaviour trees ---------------------------------------------------------

def _cross(left, right):
    return [(a, b) for a in sorted(set(left)) for b in sorted(set(right))]


def _remove_one(m, name):
    i = m.index(name)
    return m[:i] + m[i + 1:]


def _trees(ctx: ConcurrencyContext):
    par_memo = {}

    def seq(t, u):
        return frozenset((m, u if r is None else seq(r, u)) for m, r in t)

    def join(r1, r2):
        if r1 is None:
            return r2
        if r2 is None:
            return r1
        return par(r1, r2)

    def par(t, u):
        key = (t, u)
        if key in par_memo:
            return par_memo[key]
        out = set()
        for m, r in t:
            out.add((m, join(r, u)))
        for m, r in u:
            out.add((m, join(t, r)))
        for m1, r1 in t:
            for m2, r2 in u:
                if ctx.any_cross_race(m1, m2):
                    continue
                rest = join(r1, r2)
                out.add((tuple(sorted(m1 + m2)), rest))
                for a, b in _cross(m1, m2):
                    c = ctx.gamma(a, b)
                    if c is None:
                        continue
                    others = _remove_one(m1, a) + _remove_one(m2, b)
                    if any(ctx.races(c, o) for o in others):
                        continue
                    out.add((tuple(sorted(others + (c,))), rest))
        result = frozenset(out)
        par_memo[key] = result
        return result

    def tree(term):
        if isinstance(term, Atom):
            return frozenset({((term.name,), None)})
        if isinstance(term, Step):
            return frozenset({(term.actions, None)})
        if isinstance(term, Alt):
            return tree(term.left) | tree(term.right)
        if isinstance(term, Seq):
            return seq(tree(term.left), tree(term.right))
        if isinstance(term, Par):
            return par(tree(term.left), tree(term.right))
        if isinstance(term, Const):
            raise ValueError(f"term still contains constant {term.name!r}; expand it first")
        raise TypeError(f"not a process term: {term!r}")

    return tree


def behaviour_tree(term: ProcTerm, ctx: ConcurrencyContext = EMPTY_CONTEXT):
    return _trees(ctx)(term)


def from_tree(tree) -> NormalForm:
    memo = {}

    def convert(t):
        if t in memo:
            return memo[t]
        summands = []
        for m, rest in t:
            steps = [m]
            while rest is not None and len(rest) == 1:
                (m2, rest), = rest
                steps.append(m2)
            tail = None if rest is None else convert(rest)
            summands.append(Summand(tuple(steps), tail))
        summands.sort(key=lambda s: s.key)
        nf = NormalForm(tuple(summands))
        memo[t] = nf
        return nf

    return convert(tree)


def to_tree(nf: NormalForm):
    def summand(s):
        rest = None if s.tail is None else to_tree(s.tail)
        for m in reversed(s.steps):
            node = (m, rest)
            rest = frozenset({node})
        return node

    return frozenset(summand(s) for s in nf.summands)


def normalize(term: ProcTerm, ctx: ConcurrencyContext = EMPTY_CONTEXT) -> NormalForm:
    """Canonical normal form of a constant-free term under ``ctx``.

    Parallel composition expands into both interleavings, the synchronous
    step (unless a cross pair races) and one communication step per
    communicating cross pair.
    """
    return from_tree(behaviour_tree(term, ctx))


# -- embedding, printing, shape recognition ----------------------------------

def _step_term(m: MultiAction) -> ProcTerm:
    return Atom(m[0]) if len(m) == 1 else Step(m)


def _chain(parts, cls):
    out = parts[0]
    for p in parts[1:]:
        out = cls(out, p)
    return out


def embed(nf: NormalForm) -> ProcTerm:
    """The normal form as a term; synchronous steps become :class:`Step` literals."""
    def summand(s):
        parts = [_step_term(m) for m in s.steps]
        if s.tail is not None:
            parts.append(embed(s.tail))
        return _chain(parts, Seq)

    return _chain([summand(s) for s in nf.summands], Alt)


def render(nf: NormalForm) -> str:
    def summand(s):
        text = " . ".join(" || ".join(m) for m in s.steps)
        if s.tail is not None:
            text += " . (" + render(s.tail) + ")"
        return text

    return " + ".join(summand(s) for s in nf.summands)


def _flatten(term, cls):
    if isinstance(term, cls):
        return _flatten(term.left, cls) + _flatten(term.right, cls)
    return [term]


def _read_step(term) -> Optional[MultiAction]:
    if isinstance(term, Atom):
        return (term.name,)
    if isinstance(term, Step):
        return term.actions
    if isinstance(term, Par):
        parts = _flatten(term, Par)
        if not all(isinstance(p, Atom) for p in parts):
            return None
        names = tuple(p.name for p in parts)
        return names if list(names) == sorted(names) else None
    return None


def _read_summand(term) -> Optional[Summand]:
    parts = _flatten(term, Seq)
    steps = []
    for p in parts[:-1]:
        m = _read_step(p)
        if m is None:
            return None
        steps.append(m)
    last = parts[-1]
    m = _read_step(last)
    if m is not None:
        return Summand(tuple(steps + [m]))
    if isinstance(last, Alt) and steps:
        tail = read_normal_form(last)
        if tail is not None:
            return Summand(tuple(steps), tail)
    return None


def read_normal_form(term: ProcTerm) -> Optional[NormalForm]:
    """Read ``term`` as a normal form, or return None if it is not one."""
    summands = []
    for part in _flatten(term, Alt):
        s = _read_summand(part)
        if s is None:
            return None
        summands.append(s)
    keys = [s.key for s in summands]
    if any(a >= b for a, b in zip(keys, keys[1:])):
        return None
    return NormalForm(tuple(summands))


def is_normal_form(term: ProcTerm) -> bool:
    return read_normal_form(term) is not None


def parse_normal_form(text: str) -> NormalForm:
    """Inverse of :func:`render`: ``||`` is read as a synchronous step here."""
    nf = read_normal_form(parse_term(text))
    if nf is None:
        raise ParseError("text is not in normal form")
    return nf
