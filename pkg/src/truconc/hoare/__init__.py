"""Assertions, weakest preconditions and the bounded Hoare-triple prover."""

from .assertions import free_intvars, holds, simplify, subst, subst_many
from .checker import (
    Counterexample, Proven, check_vcs, Refuted, Unsupported, Verdict, check_valid, prove_triple,
    visited_states,
)
from .wp import VC, HoareTriple, orders_agree, paths, vc_gen, wp

__all__ = [
    "VC", "Counterexample", "HoareTriple", "Proven", "Refuted", "Unsupported", "Verdict",
    "check_valid", "check_vcs", "free_intvars", "holds", "orders_agree", "paths", "prove_triple",
    "simplify", "subst", "subst_many", "vc_gen", "visited_states", "wp",
]
