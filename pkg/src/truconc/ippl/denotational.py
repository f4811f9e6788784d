"""Denotations of commands as explicit partial functions on finite domains."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

from ..errors import DenotationError
from .analysis import locations
from .evaluate import eval_aexp, eval_bexp
from .state import State, StateDomain
from .syntax import Assign, If, ParC, SeqC, Skip, While

MAX_LOOP_STATES = 100_000


@dataclass(frozen=True)
class DenotRelation:
    """Graph of a partial function; ``mapping`` holds the defined inputs."""

    mapping: Tuple[Tuple[State, State], ...]

    @classmethod
    def from_dict(cls, d: Dict[State, State]) -> "DenotRelation":
        return cls(tuple(sorted(d.items(), key=lambda kv: kv[0].items)))

    def as_dict(self) -> Dict[State, State]:
        return dict(self.mapping)

    def __iter__(self) -> Iterator[Tuple[State, State]]:
        return iter(self.mapping)

    def __len__(self):
        return len(self.mapping)

    def get(self, state: State) -> Optional[State]:
        return self.as_dict().get(state)

    def dump(self) -> str:
        return "".join(f"{{{a}}} -> {{{b}}}\n" for a, b in self.mapping)


def _compile(c, dom: Optional[StateDomain]):
    """Turn ``c`` into a memoized function from stores to stores or None.

    ``dom`` given: assignments leaving its value range are undefined.
    """
    if isinstance(c, Skip):
        return lambda s: s
    if isinstance(c, Assign):
        def assign(s):
            value = eval_aexp(c.expr, s)
            if dom is not None and not dom.in_range(value):
                return None
            return s.set(c.loc, value)
        return assign
    if isinstance(c, SeqC):
        f, g = _compile(c.first, dom), _compile(c.second, dom)

        def seq(s):
            mid = f(s)
            return None if mid is None else g(mid)
        return seq
    if isinstance(c, If):
        f, g = _compile(c.then, dom), _compile(c.orelse, dom)
        return lambda s: f(s) if eval_bexp(c.cond, s) else g(s)
    if isinstance(c, ParC):
        f, g = _compile(c.left, dom), _compile(c.right, dom)

        def par(s):
            mid = f(s)
            first = None if mid is None else g(mid)
            if first is None:
                return None
            mid = g(s)
            second = None if mid is None else f(mid)
            return first if first == second else None
        return par
    if isinstance(c, While):
        return _loop(c, _compile(c.body, dom))
    raise TypeError(f"not a command: {c!r}")


def _loop(c, body):
    table: Dict[State, Optional[State]] = {}

    def reachable(start):
        seen = {start}
        order = []
        stack = [start]
        while stack:
            s = stack.pop()
            order.append(s)
            if eval_bexp(c.cond, s):
                nxt = body(s)
                if nxt is not None and nxt not in seen and nxt not in table:
                    if len(seen) >= MAX_LOOP_STATES:
                        raise DenotationError(
                            f"loop visits more than {MAX_LOOP_STATES} states")
                    seen.add(nxt)
                    stack.append(nxt)
        return order

    def run(s):
        if s in table:
            return table[s]
        universe = reachable(s)
        # Kleene iteration of the loop functional, restricted to the
        # forward-closed set of stores the loop can reach from s.
        approx: Dict[State, State] = {}
        while True:
            nxt: Dict[State, State] = {}
            for x in universe:
                if not eval_bexp(c.cond, x):
                    nxt[x] = x
                    continue
                y = body(x)
                if y is None:
                    continue
                result = table[y] if y in table else approx.get(y)
                if result is not None:
                    nxt[x] = result
            if nxt == approx:
                break
            approx = nxt
        for x in universe:
            table[x] = approx.get(x)
        return table[s]

    return run


def denote(c, dom: StateDomain, *, bounded: bool = True) -> DenotRelation:
    """The denotation of ``c`` restricted to inputs in ``dom``.

    With ``bounded`` (the default) the store model is the finite domain
    itself, so values leaving ``[dom.lo, dom.hi]`` make the result undefined.
    Unbounded denotations may raise :class:`DenotationError` for loops whose
    reachable stores cannot be enumerated.
    """
    missing = locations(c) - set(dom.locations)
    if missing:
        raise ValueError(f"domain lacks locations {sorted(missing)}")
    f = _compile(c, dom if bounded else None)
    out = {}
    for s in dom.states():
        r = f(s)
        if r is not None:
            out[s] = r
    return DenotRelation.from_dict(out)
