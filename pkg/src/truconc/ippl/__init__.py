"""The imperative parallel language: syntax, stores and semantics."""

from .analysis import Footprint, RaceReport, check_interference, disjoint, footprint, locations
from .denotational import DenotRelation, denote
from .equivalence import (
    Difference, Mismatch, agreement_check, agreement_mismatches, check_equiv,
    find_difference,
)
from .evaluate import UnboundLocation, eval_aexp, eval_bexp
from .operational import (
    DEFAULT_FUEL, Disagreement, Divergent, ExecOutcome, Final, RuntimeFault,
    exec_bigstep, format_outcome,
)
from .parser import parse_aexp, parse_assertion, parse_bexp, parse_ippl, parse_triple
from .state import State, StateDomain, parse_state
from .syntax import *  # noqa: F401,F403
