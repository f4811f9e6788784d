"""Syntactic read/write footprints and the static race report."""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List

from .syntax import (
    Assign, BoolConst, Exists, Forall, If, IntVar, Loc, Not, Num, ParC, SeqC, Skip,
    While, render_com,
)


def expr_locations(e) -> FrozenSet[str]:
    """Locations mentioned by an arithmetic or boolean expression."""
    if isinstance(e, Loc):
        return frozenset({e.name})
    if isinstance(e, (Num, IntVar, BoolConst)):
        return frozenset()
    if isinstance(e, Not):
        return expr_locations(e.arg)
    if isinstance(e, (Forall, Exists)):
        return expr_locations(e.body)
    return expr_locations(e.left) | expr_locations(e.right)


@dataclass(frozen=True)
class Footprint:
    reads: FrozenSet[str]
    writes: FrozenSet[str]

    def __or__(self, other):
        return Footprint(self.reads | other.reads, self.writes | other.writes)

    @property
    def locations(self):
        return self.reads | self.writes


def footprint(c) -> Footprint:
    if isinstance(c, Skip):
        return Footprint(frozenset(), frozenset())
    if isinstance(c, Assign):
        return Footprint(expr_locations(c.expr), frozenset({c.loc}))
    if isinstance(c, SeqC):
        return footprint(c.first) | footprint(c.second)
    if isinstance(c, If):
        cond = Footprint(expr_locations(c.cond), frozenset())
        return cond | footprint(c.then) | footprint(c.orelse)
    if isinstance(c, While):
        return Footprint(expr_locations(c.cond), frozenset()) | footprint(c.body)
    if isinstance(c, ParC):
        return footprint(c.left) | footprint(c.right)
    raise TypeError(f"not a command: {c!r}")


def locations(c) -> FrozenSet[str]:
    """Every location a command reads or writes."""
    return footprint(c).locations


def disjoint(*cmds) -> bool:
    """True if no command writes a location another one reads or writes."""
    prints = [footprint(c) for c in cmds]
    for i, a in enumerate(prints):
        for b in prints[i + 1:]:
            if a.writes & b.locations or b.writes & a.locations:
                return False
    return True


@dataclass(frozen=True)
class RaceReport:
    location: str
    kind: str          # "write/write", "write/read" or "read/write"
    command: str       # the offending parallel composition, printed


def check_interference(c) -> List[RaceReport]:
    """Report every location shared unsafely by the branches of a ``||``."""
    reports = []

    def visit(node):
        if isinstance(node, ParC):
            left, right = footprint(node.left), footprint(node.right)
            text = render_com(node)
            shared = (left.writes & right.locations) | (right.writes & left.locations)
            for loc in sorted(shared):
                if loc in left.writes and loc in right.writes:
                    kind = "write/write"
                elif loc in left.writes:
                    kind = "write/read"
                else:
                    kind = "read/write"
                reports.append(RaceReport(loc, kind, text))
            visit(node.left)
            visit(node.right)
        elif isinstance(node, SeqC):
            visit(node.first)
            visit(node.second)
        elif isinstance(node, If):
            visit(node.then)
            visit(node.orelse)
        elif isinstance(node, While):
            visit(node.body)

    visit(c)
    return reports
