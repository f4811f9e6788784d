"""Process terms, their parser and canonical normal forms."""

from .normal_form import (
    NormalForm, Summand, behaviour_tree, embed, from_tree, is_normal_form,
    normalize, parse_normal_form, read_normal_form, render, to_tree,
)
from .parser import parse_spec, parse_term
from .terms import (
    EMPTY_CONTEXT, Alt, Atom, ConcurrencyContext, Const, MultiAction, Par,
    ProcTerm, Seq, Step, atoms, expand_constants, multi_action, render_term,
)

__all__ = [
    "Alt", "Atom", "ConcurrencyContext", "Const", "EMPTY_CONTEXT", "MultiAction",
    "NormalForm", "Par", "ProcTerm", "Seq", "Step", "Summand", "atoms",
    "behaviour_tree", "embed", "expand_constants", "from_tree", "is_normal_form",
    "multi_action", "normalize", "parse_normal_form", "parse_spec", "parse_term",
    "read_normal_form", "render", "render_term", "to_tree",
]
