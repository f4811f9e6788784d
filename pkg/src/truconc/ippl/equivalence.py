"""Behavioural equivalence of commands and the semantics agreement oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .denotational import denote
from .operational import DEFAULT_FUEL, ExecOutcome, Final, exec_bigstep
from .state import State, StateDomain


def _final(outcome: ExecOutcome) -> Optional[State]:
    return outcome.state if isinstance(outcome, Final) else None


@dataclass(frozen=True)
class Difference:
    state: State
    left: ExecOutcome
    right: ExecOutcome


def find_difference(c0, c1, dom: StateDomain, fuel: int = DEFAULT_FUEL) -> Optional[Difference]:
    """First store (in enumeration order) where the two commands differ."""
    for s in dom.states():
        o0, o1 = exec_bigstep(c0, s, fuel), exec_bigstep(c1, s, fuel)
        if _final(o0) != _final(o1):
            return Difference(s, o0, o1)
    return None


def check_equiv(c0, c1, dom: StateDomain, fuel: int = DEFAULT_FUEL) -> bool:
    """``c0 ~ c1`` on ``dom``: same final store, or none, from every store."""
    return find_difference(c0, c1, dom, fuel) is None


@dataclass(frozen=True)
class Mismatch:
    state: State
    operational: ExecOutcome
    denotational: Optional[State]


def agreement_mismatches(c, dom: StateDomain, fuel: int = DEFAULT_FUEL) -> List[Mismatch]:
    relation = denote(c, dom).as_dict()
    out = []
    for s in dom.states():
        outcome = exec_bigstep(c, s, fuel, bounds=dom)
        if _final(outcome) != relation.get(s):
            out.append(Mismatch(s, outcome, relation.get(s)))
    return out


def agreement_check(c, dom: StateDomain, fuel: int = DEFAULT_FUEL) -> bool:
    """The denotation equals the graph of the interpreter on ``dom``.

    Both sides use the bounded store model of ``dom``; stores without a
    final result (divergence, disagreement, out-of-range) must be exactly
    those missing from the denotation.
    """
    return not agreement_mismatches(c, dom, fuel)
