"""Labelled transition systems of process terms and step bisimulation.

Transition labels are multi-actions (sorted tuples of action names).  A
residual of ``None`` stands for successful termination.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from .process.terms import (
    EMPTY_CONTEXT, Alt, Atom, ConcurrencyContext, Const, MultiAction, Par,
    ProcTerm, Seq, Step, multi_action_key, render_term,
)

Residual = Optional[ProcTerm]


def _par(x: Residual, y: Residual) -> Residual:
    # x || done = x
    if x is None:
        return y
    if y is None:
        return x
    return Par(x, y)


def derive_steps(term: ProcTerm, ctx: ConcurrencyContext = EMPTY_CONTEXT
                 ) -> FrozenSet[Tuple[MultiAction, Residual]]:
    """All one-step derivations ``(label, residual)`` of ``term``."""
    if isinstance(term, Atom):
        return frozenset({((term.name,), None)})
    if isinstance(term, Step):
        return frozenset({(term.actions, None)})
    if isinstance(term, Alt):
        return derive_steps(term.left, ctx) | derive_steps(term.right, ctx)
    if isinstance(term, Seq):
        return frozenset(
            (label, term.right if rest is None else Seq(rest, term.right))
            for label, rest in derive_steps(term.left, ctx))
    if isinstance(term, Par):
        left = derive_steps(term.left, ctx)
        right = derive_steps(term.right, ctx)
        steps = set()
        for label, rest in left:
            steps.add((label, _par(rest, term.right)))
        for label, rest in right:
            steps.add((label, _par(term.left, rest)))
        for l1, x1 in left:
            for l2, y1 in right:
                if any(ctx.races(a, b) for a in l1 for b in l2):
                    continue
                target = _par(x1, y1)
                steps.add((tuple(sorted(l1 + l2)), target))
                for a in set(l1):
                    for b in set(l2):
                        c = ctx.gamma(a, b)
                        if c is None:
                            continue
                        rest_l = list(l1)
                        rest_l.remove(a)
                        rest_r = list(l2)
                        rest_r.remove(b)
                        others = rest_l + rest_r
                        if any(ctx.races(c, o) for o in others):
                            continue
                        steps.add((tuple(sorted(others + [c])), target))
        return frozenset(steps)
    if isinstance(term, Const):
        raise ValueError(f"term still contains constant {term.name!r}; expand it first")
    raise TypeError(f"not a process term: {term!r}")


@dataclass(frozen=True)
class Lts:
    """States are numbered from 0; ``states[i]`` is the residual term of state i."""

    states: Tuple[Residual, ...]
    initial: int
    final: int
    transitions: Tuple[Tuple[int, MultiAction, int], ...]

    def successors(self, state: int):
        return [(label, dst) for src, label, dst in self.transitions if src == state]


def _order_key(step):
    label, rest = step
    return (multi_action_key(label), "" if rest is None else render_term(rest))


def build_lts(term: ProcTerm, ctx: ConcurrencyContext = EMPTY_CONTEXT) -> Lts:
    """Breadth-first closure of :func:`derive_steps`; numbering is deterministic."""
    ids = {term: 0}
    states: List[Residual] = [term]
    transitions = []
    queue = deque([term])
    while queue:
        current = queue.popleft()
        src = ids[current]
        for label, rest in sorted(derive_steps(current, ctx), key=_order_key):
            if rest not in ids:
                ids[rest] = len(states)
                states.append(rest)
                if rest is not None:
                    queue.append(rest)
            transitions.append((src, label, ids[rest]))
    if None not in ids:
        ids[None] = len(states)
        states.append(None)
    return Lts(tuple(states), 0, ids[None], tuple(transitions))


# -- step bisimulation --------------------------------------------------------

def _refinement(l1: Lts, l2: Lts):
    """Partition refinement on the disjoint union.

    Returns the list of block assignments per round; round 0 separates the
    terminated state from the rest.
    """
    nodes = [(0, s) for s in range(len(l1.states))] + [(1, s) for s in range(len(l2.states))]
    succ = {n: [] for n in nodes}
    for side, lts in ((0, l1), (1, l2)):
        for src, label, dst in lts.transitions:
            succ[(side, src)].append((label, (side, dst)))
    final = {(0, l1.final), (1, l2.final)}
    block = {n: (0 if n in final else 1) for n in nodes}
    rounds = [block]
    count = len(set(block.values()))
    while True:
        sigs = {
            n: (block[n], tuple(sorted({(multi_action_key(lab), block[d]) for lab, d in succ[n]})))
            for n in nodes
        }
        numbering = {sig: i for i, sig in enumerate(sorted(set(sigs.values())))}
        new_block = {n: numbering[sigs[n]] for n in nodes}
        rounds.append(new_block)
        new_count = len(numbering)
        if new_count == count:
            return rounds, succ
        block, count = new_block, new_count


def step_bisimilar(l1: Lts, l2: Lts) -> bool:
    rounds, _ = _refinement(l1, l2)
    last = rounds[-1]
    return last[(0, l1.initial)] == last[(1, l2.initial)]


def distinguishing_trace(l1: Lts, l2: Lts) -> Optional[List[MultiAction]]:
    """A label sequence along which the two systems can be told apart.

    Returns None when the systems are step-bisimilar.  The sequence is
    followed from the side that can perform it; after the last label the
    other side either has no matching transition or differs in termination.
    """
    rounds, succ = _refinement(l1, l2)
    s, t = (0, l1.initial), (1, l2.initial)
    if rounds[-1][s] == rounds[-1][t]:
        return None
    trace = []
    while True:
        k = next(i for i, b in enumerate(rounds) if b[s] != b[t])
        if k == 0:
            return trace
        prev = rounds[k - 1]
        moves_s = {(multi_action_key(lab), prev[d]) for lab, d in succ[s]}
        moves_t = {(multi_action_key(lab), prev[d]) for lab, d in succ[t]}
        if moves_s - moves_t:
            key = min(moves_s - moves_t)
            here, there = s, t
        else:
            key = min(moves_t - moves_s)
            here, there = t, s
        label = key[0][1]
        nxt = min((d for lab, d in succ[here] if lab == label and prev[d] == key[1]))
        trace.append(label)
        answers = sorted(d for lab, d in succ[there] if lab == label)
        if not answers:
            return trace
        s, t = nxt, answers[0]


# -- export -------------------------------------------------------------------

def format_label(label: MultiAction) -> str:
    return "{" + ",".join(label) + "}"


def dump_lts(lts: Lts) -> str:
    lines = [f"initial: {lts.initial}", f"final: {lts.final}"]
    lines += [f"{src} -{format_label(label)}-> {dst}" for src, label, dst in lts.transitions]
    return "\n".join(lines) + "\n"


def to_dot(lts: Lts, name: str = "lts") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for i, term in enumerate(lts.states):
        if i == lts.final:
            lines.append(f'  {i} [shape=doublecircle, label="√"];')
        else:
            text = render_term(term).replace('"', '\\"')
            shape = "box" if i == lts.initial else "ellipse"
            lines.append(f'  {i} [shape={shape}, label="{text}"];')
    for src, label, dst in lts.transitions:
        lines.append(f'  {src} -> {dst} [label="{format_label(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
