"""Bounded validity checking and the triple prover."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple, Union

from ..ippl.operational import DEFAULT_FUEL, exec_bigstep
from ..ippl.state import State, StateDomain
from .assertions import free_intvars, holds, interpretations
from .wp import VC, HoareTriple, triple_locations, vc_gen


@dataclass(frozen=True)
class Counterexample:
    state: State
    env: Tuple[Tuple[str, int], ...] = ()

    def __str__(self):
        text = str(self.state)
        if self.env:
            text += " with " + ",".join(f"{k}={v}" for k, v in self.env)
        return text


def check_valid(a, dom: StateDomain, qbound: Iterable[int],
                extra_states: Iterable[State] = ()) -> Optional[Counterexample]:
    """First counterexample to ``a``, or None if it holds everywhere checked.

    Stores of ``dom`` are tried in enumeration order, then ``extra_states``;
    free integer variables range over ``qbound`` like quantified ones.  This
    is a bounded check, not a decision procedure.
    """
    qbound = list(qbound)
    names = sorted(free_intvars(a))
    seen = set()
    for state in _chain(dom.states(), extra_states):
        if state in seen:
            continue
        seen.add(state)
        for env in interpretations(names, qbound):
            if not holds(a, state, env, qbound):
                return Counterexample(state, tuple(sorted(env.items())))
    return None


def _chain(*iterables):
    for it in iterables:
        yield from it


@dataclass(frozen=True)
class Proven:
    vcs: Tuple[VC, ...]
    bounds: Dict = field(default_factory=dict, compare=False)
    code = "proven"


@dataclass(frozen=True)
class Refuted:
    vc: VC
    witness: Counterexample
    vcs: Tuple[VC, ...] = ()
    bounds: Dict = field(default_factory=dict, compare=False)
    code = "refuted"


@dataclass(frozen=True)
class Unsupported:
    reason: str
    code = "unsupported"


Verdict = Union[Proven, Refuted, Unsupported]


def visited_states(triple: HoareTriple, dom: StateDomain, qbound,
                   fuel: int = DEFAULT_FUEL) -> List[State]:
    """Stores reached by runs from the precondition states of ``dom``."""
    qbound = list(qbound)
    names = sorted(free_intvars(triple.pre))
    found: Dict[State, None] = {}
    for s in dom.states():
        if any(holds(triple.pre, s, env, qbound) for env in interpretations(names, qbound)):
            exec_bigstep(triple.command, s, fuel, visit=lambda x: found.setdefault(x))
    return [s for s in found if s not in dom]


def _prepare(triple, dom, qbound, fuel):
    missing = triple_locations(triple) - set(dom.locations)
    if missing:
        dom = StateDomain(dom.locations + tuple(missing), dom.lo, dom.hi)
    vcs = tuple(vc_gen(triple))
    extra = visited_states(triple, dom, qbound, fuel)
    bounds = {"lo": dom.lo, "hi": dom.hi, "qlo": min(qbound), "qhi": max(qbound),
              "extra_states": len(extra)}
    return dom, vcs, extra, bounds


def check_vcs(triple: HoareTriple, dom: StateDomain, qbound: Iterable[int],
              fuel: int = DEFAULT_FUEL):
    """Every verification condition with its counterexample (None if it passed)."""
    qbound = list(qbound)
    dom, vcs, extra, bounds = _prepare(triple, dom, qbound, fuel)
    return [(vc, check_valid(vc.assertion, dom, qbound, extra)) for vc in vcs], bounds


def prove_triple(triple: HoareTriple, dom: StateDomain, qbound: Iterable[int],
                 fuel: int = DEFAULT_FUEL) -> Verdict:
    """Generate the verification conditions and check each one.

    Conditions are checked on every store of ``dom`` and additionally on
    every store actually reached when running the command from a store of
    ``dom`` satisfying the precondition, so a loop leaving the value range
    cannot slip past the bounded check.  Locations of the triple missing
    from ``dom`` are added to it.

    Raises :class:`MissingInvariant` for unannotated loops.
    """
    qbound = list(qbound)
    dom, vcs, extra, bounds = _prepare(triple, dom, qbound, fuel)
    for vc in vcs:
        witness = check_valid(vc.assertion, dom, qbound, extra)
        if witness is not None:
            return Refuted(vc, witness, vcs, bounds)
    return Proven(vcs, bounds)
