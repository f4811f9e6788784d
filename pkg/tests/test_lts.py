"""Step derivations, transition systems and step bisimulation."""

import random

import pytest

from truconc.lts import (
    build_lts, derive_steps, distinguishing_trace, dump_lts, format_label, step_bisimilar,
    to_dot,
)
from truconc.process import (
    EMPTY_CONTEXT, Alt, Atom, ConcurrencyContext, Par, Seq, parse_term,
)

from generators import random_context, random_term

a, b = Atom("a"), Atom("b")
RACE_AB = ConcurrencyContext.build([("a", "b")])
COMM_AB = ConcurrencyContext.build(comm={("a", "b"): "c"})


def lts(text, ctx=EMPTY_CONTEXT):
    return build_lts(parse_term(text), ctx)


# -- derive_steps ----------------------------------------------------------------

def test_par_steps_without_race():
    assert derive_steps(Par(a, b)) == {(("a",), b), (("b",), a), (("a", "b"), None)}


def test_par_steps_with_race():
    assert derive_steps(Par(a, b), RACE_AB) == {(("a",), b), (("b",), a)}


def test_par_steps_with_communication():
    assert derive_steps(Par(a, b), COMM_AB) == {
        (("a",), b), (("b",), a), (("a", "b"), None), (("c",), None)}


def test_seq_head_step():
    assert derive_steps(Seq(a, b)) == {(("a",), b)}


def test_communication_output_suppressed_when_it_races():
    # a || (b || d) offers {a,b,d}; replacing a,b by c leaves {c,d}, but c races d
    ctx = ConcurrencyContext.build([("c", "d")], {("a", "b"): "c"})
    labels = {m for m, _ in derive_steps(parse_term("a || (b || d)"), ctx)}
    assert ("a", "b", "d") in labels
    assert ("c", "d") not in labels


def test_label_size_bounded_by_atoms():
    rng = random.Random(3)
    for _ in range(200):
        t = random_term(rng, 5)
        n = sum(1 for _ in _atoms(t))
        for m, _ in derive_steps(t, random_context(rng)):
            assert 1 <= len(m) <= n


def _atoms(t):
    if isinstance(t, Atom):
        yield t
    else:
        yield from _atoms(t.left)
        yield from _atoms(t.right)


# -- build_lts ----------------------------------------------------------------------

@pytest.mark.parametrize("text,states,transitions", [
    ("a", 2, 1),
    ("a || b", 4, 5),
    ("a + a", 2, 1),
    ("a . b", 3, 2),
])
def test_lts_sizes(text, states, transitions):
    graph = lts(text)
    assert (len(graph.states), len(graph.transitions)) == (states, transitions)


def test_dump_format():
    assert dump_lts(lts("a . b")) == "initial: 0\nfinal: 2\n0 -{a}-> 1\n1 -{b}-> 2\n"


def test_dot_export_mentions_every_transition():
    text = to_dot(lts("a || b"))
    assert text.startswith("digraph lts {")
    assert text.count("->") == 5
    assert 'label="{a,b}"' in text


def test_format_label():
    assert format_label(("a", "b")) == "{a,b}"


def test_build_is_deterministic():
    rng = random.Random(8)
    for _ in range(50):
        t, ctx = random_term(rng), random_context(rng)
        assert build_lts(t, ctx) == build_lts(t, ctx)


# -- step bisimulation ----------------------------------------------------------------

def test_expansion_law_is_bisimilar():
    assert step_bisimilar(lts("a . b + b . a + {a, b}"), lts("a || b"))


def test_different_actions_not_bisimilar():
    assert not step_bisimilar(lts("a"), lts("b"))
    assert distinguishing_trace(lts("a"), lts("b")) == [("a",)]


def test_trace_equivalent_but_not_bisimilar():
    left, right = lts("a . (b + c)"), lts("a . b + a . c")
    assert not step_bisimilar(left, right)
    trace = distinguishing_trace(left, right)
    assert trace and trace[0] == ("a",)


def test_termination_distinguishes():
    # a can stop after one step, a . b cannot
    assert distinguishing_trace(lts("a"), lts("a . b")) == [("a",)]


def test_bisimilar_returns_no_trace():
    assert distinguishing_trace(lts("a + a"), lts("a")) is None


def test_idempotence_random():
    rng = random.Random(9)
    for _ in range(100):
        t, ctx = random_term(rng, 5), random_context(rng)
        assert step_bisimilar(build_lts(Alt(t, t), ctx), build_lts(t, ctx))


def test_equivalence_relation_on_random_triples():
    rng = random.Random(10)
    for _ in range(150):
        ctx = random_context(rng, ("a", "b"))
        p, q, r = (build_lts(random_term(rng, 5, ("a", "b")), ctx) for _ in range(3))
        assert step_bisimilar(p, p)
        assert step_bisimilar(p, q) == step_bisimilar(q, p)
        if step_bisimilar(p, q) and step_bisimilar(q, r):
            assert step_bisimilar(p, r)


def _bisimilar_pairs(rng, ctx, want):
    """Pairs of distinct small terms that are bisimilar, found by search."""
    pool = [random_term(rng, 4, ("a", "b")) for _ in range(120)]
    graphs = [build_lts(t, ctx) for t in pool]
    pairs = []
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            if pool[i] != pool[j] and step_bisimilar(graphs[i], graphs[j]):
                pairs.append((pool[i], pool[j]))
                if len(pairs) == want:
                    return pairs
    return pairs


@pytest.mark.parametrize("ctx", [EMPTY_CONTEXT, RACE_AB, COMM_AB], ids=["plain", "race", "comm"])
def test_congruence(ctx):
    rng = random.Random(13)
    pairs = _bisimilar_pairs(rng, ctx, 30)
    assert len(pairs) >= 10
    for (p, p2), (q, q2) in zip(pairs, pairs[1:] + pairs[:1]):
        for op in (Seq, Alt, Par):
            assert step_bisimilar(build_lts(op(p, q), ctx), build_lts(op(p2, q2), ctx))


def test_distinguishing_trace_exists_iff_not_bisimilar():
    rng = random.Random(14)
    for _ in range(150):
        ctx = random_context(rng, ("a", "b"))
        p, q = (build_lts(random_term(rng, 4, ("a", "b")), ctx) for _ in range(2))
        trace = distinguishing_trace(p, q)
        assert (trace is None) == step_bisimilar(p, q)
        if trace:
            assert _executable(p, trace) or _executable(q, trace)


def _executable(graph, trace):
    current = {graph.initial}
    for label in trace:
        current = {d for s in current for m, d in graph.successors(s) if m == label}
    return bool(current)
