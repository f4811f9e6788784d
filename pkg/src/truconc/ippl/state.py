"""Stores over a fixed set of locations, and finite domains of stores."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from ..errors import ParseError


@dataclass(frozen=True)
class State:
    """Immutable store; ``items`` is sorted by location name."""

    items: Tuple[Tuple[str, int], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, int] = None, **values: int) -> "State":
        merged = dict(mapping or {}, **values)
        return cls(tuple(sorted(merged.items())))

    def as_dict(self) -> Dict[str, int]:
        return dict(self.items)

    @property
    def locations(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.items)

    def __contains__(self, loc: str) -> bool:
        return any(name == loc for name, _ in self.items)

    def __getitem__(self, loc: str) -> int:
        for name, value in self.items:
            if name == loc:
                return value
        raise KeyError(loc)

    def set(self, loc: str, value: int) -> "State":
        d = dict(self.items)
        d[loc] = value
        return State(tuple(sorted(d.items())))

    def extend(self, locations: Iterable[str], default: int = 0) -> "State":
        d = dict(self.items)
        for loc in locations:
            d.setdefault(loc, default)
        return State(tuple(sorted(d.items())))

    def __str__(self):
        return ",".join(f"{name}={value}" for name, value in self.items)


_BINDING_RE = re.compile(r"\s*([A-Z][A-Za-z0-9_]*)\s*=\s*(-?[0-9]+)\s*")


def parse_state(text: str) -> State:
    """Parse a state literal such as ``X=3, Y=0`` (braces optional)."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    values = {}
    if text.strip():
        for part in text.split(","):
            m = _BINDING_RE.fullmatch(part)
            if m is None:
                raise ParseError(f"malformed binding {part.strip()!r} in state literal")
            if m.group(1) in values:
                raise ParseError(f"location {m.group(1)} bound twice in state literal")
            values[m.group(1)] = int(m.group(2))
    return State.of(values)


@dataclass(frozen=True)
class StateDomain:
    """All stores over ``locations`` with every value in ``[lo, hi]``."""

    locations: Tuple[str, ...]
    lo: int = 0
    hi: int = 3

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty value range [{self.lo}, {self.hi}]")
        object.__setattr__(self, "locations", tuple(sorted(set(self.locations))))

    def states(self) -> Iterator[State]:
        values = range(self.lo, self.hi + 1)
        for combo in itertools.product(values, repeat=len(self.locations)):
            yield State(tuple(zip(self.locations, combo)))

    def __iter__(self):
        return self.states()

    def __len__(self):
        return (self.hi - self.lo + 1) ** len(self.locations)

    def in_range(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    def __contains__(self, state: State) -> bool:
        return state.locations == self.locations and all(
            self.in_range(v) for _, v in state.items)
