"""Big-step interpreter with a step budget.

``c0 || c1`` runs both sequential orders from the same store.  It has a
final store only when both orders terminate in the same store; otherwise
the run reports the two stores as a disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from ..errors import TruconcError
from .evaluate import eval_aexp, eval_bexp
from .state import State, StateDomain
from .syntax import Assign, If, ParC, SeqC, Skip, While

DEFAULT_FUEL = 10_000


@dataclass(frozen=True)
class Final:
    state: State
    code = "final"


@dataclass(frozen=True)
class Divergent:
    code = "divergent"


@dataclass(frozen=True)
class Disagreement:
    first: State   # left branch ran first
    second: State  # right branch ran first
    code = "disagreement"


@dataclass(frozen=True)
class RuntimeFault:
    description: str
    code = "fault"


ExecOutcome = Union[Final, Divergent, Disagreement, RuntimeFault]


class _OutOfFuel(Exception):
    pass


class _Disagree(Exception):
    def __init__(self, first, second):
        self.first, self.second = first, second


class _Fault(Exception):
    pass


def exec_bigstep(c, state: State, fuel: int = DEFAULT_FUEL, *,
                 bounds: Optional[StateDomain] = None,
                 visit: Optional[Callable[[State], None]] = None) -> ExecOutcome:
    """Run ``c`` from ``state``.

    Every command evaluation and every loop iteration costs one unit of
    fuel.  With ``bounds``, an assignment producing a value outside the
    domain's range is a fault (the bounded store model used for comparison
    with the denotation).  ``visit`` is called on every intermediate store.
    """
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    budget = [fuel]

    def tick():
        if budget[0] <= 0:
            raise _OutOfFuel
        budget[0] -= 1

    def run(c, s):
        tick()
        if visit is not None:
            visit(s)
        if isinstance(c, Skip):
            return s
        if isinstance(c, Assign):
            value = eval_aexp(c.expr, s)
            if c.loc not in s:
                raise _Fault(f"location {c.loc} is not bound in the store")
            if bounds is not None and not bounds.in_range(value):
                raise _Fault(f"{c.loc} := {value} leaves the range [{bounds.lo}, {bounds.hi}]")
            out = s.set(c.loc, value)
        elif isinstance(c, SeqC):
            out = run(c.second, run(c.first, s))
        elif isinstance(c, If):
            out = run(c.then if eval_bexp(c.cond, s) else c.orelse, s)
        elif isinstance(c, While):
            while eval_bexp(c.cond, s):
                tick()
                s = run(c.body, s)
            out = s
        elif isinstance(c, ParC):
            first = run(c.right, run(c.left, s))
            second = run(c.left, run(c.right, s))
            if first != second:
                raise _Disagree(first, second)
            out = first
        else:
            raise TypeError(f"not a command: {c!r}")
        if visit is not None:
            visit(out)
        return out

    try:
        return Final(run(c, state))
    except _OutOfFuel:
        return Divergent()
    except _Disagree as exc:
        return Disagreement(exc.first, exc.second)
    except _Fault as exc:
        return RuntimeFault(str(exc))
    except TruconcError as exc:
        return RuntimeFault(str(exc))
    except RecursionError:
        return RuntimeFault("nesting too deep")


def format_outcome(outcome: ExecOutcome) -> str:
    if isinstance(outcome, Final):
        return f"final {outcome.state}"
    if isinstance(outcome, Disagreement):
        return f"disagreement {{{outcome.first}}} vs {{{outcome.second}}}"
    if isinstance(outcome, RuntimeFault):
        return f"fault {outcome.description}"
    return "divergent"
