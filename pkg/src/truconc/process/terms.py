"""Abstract syntax of process terms and the concurrency context they run in."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Tuple, Union

from ..errors import ContextError, RecursionUnsupported, UndefinedConstant

ACTION_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
RESERVED_ACTIONS = frozenset({"tau", "delta"})

#: A multi-action is a sorted tuple of action names (a multiset).
MultiAction = Tuple[str, ...]


def check_action_name(name: str) -> str:
    if not ACTION_RE.match(name):
        raise ValueError(f"invalid action name {name!r}")
    if name in RESERVED_ACTIONS:
        raise ValueError(f"action name {name!r} is reserved")
    return name


def multi_action(*names: str) -> MultiAction:
    if not names:
        raise ValueError("a multi-action needs at least one action")
    return tuple(sorted(names))


def multi_action_key(m: MultiAction):
    # Singletons before synchronous steps, then lexicographic.
    return (len(m), m)


@dataclass(frozen=True)
class Atom:
    name: str
    pos: Optional[Tuple[int, int]] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Step:
    """A literal synchronous step: all actions fire together and nothing else."""

    actions: MultiAction

    def __post_init__(self):
        if len(self.actions) < 2:
            raise ValueError("a Step literal needs two or more actions; use Atom")
        if tuple(sorted(self.actions)) != self.actions:
            object.__setattr__(self, "actions", tuple(sorted(self.actions)))


@dataclass(frozen=True)
class Seq:
    left: "ProcTerm"
    right: "ProcTerm"


@dataclass(frozen=True)
class Alt:
    left: "ProcTerm"
    right: "ProcTerm"


@dataclass(frozen=True)
class Par:
    left: "ProcTerm"
    right: "ProcTerm"


@dataclass(frozen=True)
class Const:
    name: str
    pos: Optional[Tuple[int, int]] = field(default=None, compare=False, repr=False)


ProcTerm = Union[Atom, Step, Seq, Alt, Par, Const]


def _pair(a: str, b: str) -> Tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class ConcurrencyContext:
    """Race relation and communication function over action names.

    ``race`` holds unordered pairs as sorted 2-tuples, ``comm`` holds
    ``((a, b), c)`` entries with ``a <= b``.
    """

    race: frozenset = frozenset()
    comm: Tuple[Tuple[Tuple[str, str], str], ...] = ()

    def __post_init__(self):
        race = frozenset(_pair(a, b) for a, b in self.race)
        for a, b in race:
            if a == b:
                raise ContextError(f"race relation must be irreflexive: {a} % {a}")
        table = {}
        for (a, b), c in self.comm:
            key = _pair(a, b)
            if key in table and table[key] != c:
                raise ContextError(
                    f"conflicting communications for {key[0]}, {key[1]}: "
                    f"{table[key]} and {c}")
            table[key] = c
        overlap = sorted(race & set(table))
        if overlap:
            a, b = overlap[0]
            raise ContextError(f"pair {a}, {b} is declared both racing and communicating")
        object.__setattr__(self, "race", race)
        object.__setattr__(self, "comm", tuple(sorted(table.items())))
        object.__setattr__(self, "_gamma", table)

    @classmethod
    def build(cls, race=(), comm: Optional[Mapping] = None) -> "ConcurrencyContext":
        return cls(frozenset(race), tuple((comm or {}).items()))

    def races(self, a: str, b: str) -> bool:
        return _pair(a, b) in self.race

    def gamma(self, a: str, b: str) -> Optional[str]:
        return self._gamma.get(_pair(a, b))

    def has_race(self, actions) -> bool:
        """True if any two members of ``actions`` are racing."""
        names = sorted(set(actions))
        return any(self.races(a, b) for i, a in enumerate(names) for b in names[i + 1:])

    def any_cross_race(self, left, right) -> bool:
        return any(self.races(a, b) for a in set(left) for b in set(right))


EMPTY_CONTEXT = ConcurrencyContext()


def atoms(term: ProcTerm):
    """Action occurrences of ``term`` in left-to-right order."""
    if isinstance(term, Atom):
        return [term.name]
    if isinstance(term, Step):
        return list(term.actions)
    if isinstance(term, Const):
        return []
    return atoms(term.left) + atoms(term.right)


def constants(term: ProcTerm):
    if isinstance(term, Const):
        return {term.name}
    if isinstance(term, (Atom, Step)):
        return set()
    return constants(term.left) | constants(term.right)


def expand_constants(term: ProcTerm, defs: Mapping[str, ProcTerm]) -> ProcTerm:
    """Substitute every constant by its definition.

    Raises :class:`RecursionUnsupported` when a constant reaches itself and
    :class:`UndefinedConstant` for names missing from ``defs``.
    """
    done = {}

    def expand(t, stack):
        if isinstance(t, (Atom, Step)):
            return t
        if isinstance(t, Const):
            if t.name in stack:
                cycle = stack[stack.index(t.name):] + [t.name]
                raise RecursionUnsupported(cycle)
            if t.name not in defs:
                raise UndefinedConstant(t.name, t.pos)
            if t.name not in done:
                done[t.name] = expand(defs[t.name], stack + [t.name])
            return done[t.name]
        left = expand(t.left, stack)
        right = expand(t.right, stack)
        if left is t.left and right is t.right:
            return t
        return type(t)(left, right)

    return expand(term, [])


# Binding strength used by the printer: || tightest, then ., then +.
_LEVEL = {Alt: 1, Seq: 2, Par: 3}
_SYMBOL = {Alt: " + ", Seq: " . ", Par: " || "}


def render_term(term: ProcTerm) -> str:
    """Print ``term`` so that parsing the text gives back the same tree.

    Binary operators associate to the left, so a right-nested operand of the
    same operator is parenthesized.
    """
    if isinstance(term, (Atom, Const)):
        return term.name
    if isinstance(term, Step):
        return "{" + ", ".join(term.actions) + "}"
    level = _LEVEL[type(term)]

    def operand(t, right_side):
        text = render_term(t)
        sub = _LEVEL.get(type(t))
        if sub is None:
            return text
        if sub < level or (sub == level and right_side):
            return f"({text})"
        return text

    return operand(term.left, False) + _SYMBOL[type(term)] + operand(term.right, True)
