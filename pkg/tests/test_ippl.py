"""IPPL: parsing, evaluation, footprints, execution and denotation."""

import random

import pytest

from truconc.errors import ParseError
from truconc.ippl import (
    SKIP, Add, Assign, Disagreement, Divergent, Eq, Final, If, Le, Loc, Num, ParC,
    RuntimeFault, SeqC, State, StateDomain, Sub, UnboundLocation, While,
    agreement_check, agreement_mismatches, check_equiv, check_interference, denote,
    eval_aexp, eval_bexp, exec_bigstep, find_difference, footprint, format_outcome,
    parse_assertion, parse_bexp, parse_ippl, parse_state, parse_triple, render_bexp,
    render_com,
)

from generators import random_assertion, random_com, terminating_loop

XY = ("X", "Y")


def run(text, state="X=0, Y=0", fuel=1000):
    return exec_bigstep(parse_ippl(text), parse_state(state), fuel)


# -- parsing ---------------------------------------------------------------------

def test_parse_parallel():
    assert parse_ippl("X := 1 || Y := 2") == ParC(Assign("X", Num(1)), Assign("Y", Num(2)))


def test_parse_while():
    assert parse_ippl("while X <= 3 do X := X + 1") == \
        While(Le(Loc("X"), Num(3)), Assign("X", Add(Loc("X"), Num(1))))


def test_parse_if():
    assert parse_ippl("if X = 0 then skip else X := 0") == \
        If(Eq(Loc("X"), Num(0)), SKIP, Assign("X", Num(0)))


def test_parse_invariant():
    c = parse_ippl("while X <= 2 [inv X <= 3] do X := X + 1")
    assert c.inv == Le(Loc("X"), Num(3))


def test_sequence_binds_tighter_than_parallel():
    c = parse_ippl("X := 1; Y := 2 || Z := 3")
    assert c == ParC(SeqC(Assign("X", Num(1)), Assign("Y", Num(2))), Assign("Z", Num(3)))


def test_subtraction_is_left_associative():
    assert eval_aexp(parse_ippl("X := 5 - 2 - 1").expr, State.of()) == 2


@pytest.mark.parametrize("text", [
    "X := i",               # integer variable in executable position
    "X := ",
    "X = 1",
    "if X then skip else skip",
    "while X <= 1 X := 1",
    "X := 1 ||",
    "x := 1",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_ippl(text)


def test_parse_error_location():
    with pytest.raises(ParseError) as info:
        parse_ippl("X := 1;\nY := )")
    assert info.value.line == 2


def test_assertion_syntax():
    a = parse_assertion("forall i. X <= i => exists j. j = X + i")
    assert render_bexp(parse_assertion(render_bexp(a))) == render_bexp(a)


def test_triple_sections():
    pre, com, post = parse_triple("pre: X = 0\nprog: X := X + 1\npost: X = 1\n")
    assert (pre, com, post) == (Eq(Loc("X"), Num(0)), Assign("X", Add(Loc("X"), Num(1))),
                                Eq(Loc("X"), Num(1)))


def test_command_round_trip_random():
    rng = random.Random(20)
    for _ in range(300):
        c = random_com(rng, ["X", "Y", "Z"], max_nodes=12, loops=True)
        assert parse_ippl(render_com(c)) == c


def test_assertion_round_trip_random():
    rng = random.Random(21)
    for _ in range(300):
        a = random_assertion(rng, ["X", "Y"])
        assert parse_assertion(render_bexp(a)) == a


# -- states and evaluation ------------------------------------------------------------

def test_state_literal():
    s = parse_state("{Y=2, X=-1}")
    assert str(s) == "X=-1,Y=2"
    assert s["Y"] == 2


def test_domain_enumeration_order():
    dom = StateDomain(("Y", "X"), 0, 1)
    assert [str(s) for s in dom] == ["X=0,Y=0", "X=0,Y=1", "X=1,Y=0", "X=1,Y=1"]
    assert len(dom) == 4


def test_eval_examples():
    assert eval_aexp(Add(Num(2), Num(3)), State.of()) == 5
    assert eval_aexp(Loc("X"), State.of(X=7)) == 7
    assert eval_bexp(Le(Sub(Loc("X"), Loc("Y")), Num(0)), State.of(X=1, Y=2)) is True


def test_eval_unbound_location():
    with pytest.raises(UnboundLocation):
        eval_aexp(Loc("Q"), State.of(X=1))


def test_arbitrary_precision():
    c = parse_ippl("X := 1000000000 * 1000000000 * 1000000000")
    assert exec_bigstep(c, State.of(X=0)) == Final(State.of(X=10 ** 27))


# -- footprints and interference ------------------------------------------------------

def test_footprint_examples():
    fp = footprint(parse_ippl("X := Y + 1"))
    assert (fp.reads, fp.writes) == ({"Y"}, {"X"})
    fp = footprint(SKIP)
    assert (fp.reads, fp.writes) == (set(), set())
    assert footprint(parse_ippl("X := 1 || X := 2")).writes == {"X"}


@pytest.mark.parametrize("text,expected", [
    ("X := 1 || Y := 2", []),
    ("X := 1 || X := 2", [("X", "write/write")]),
    ("X := 1 || Y := X", [("X", "write/read")]),
    ("Y := X || X := 1", [("X", "read/write")]),
])
def test_interference_examples(text, expected):
    reports = check_interference(parse_ippl(text))
    assert [(r.location, r.kind) for r in reports] == expected


def test_footprint_monotone():
    rng = random.Random(22)
    for _ in range(200):
        c = random_com(rng, ["X", "Y", "Z"], loops=True)
        outer = footprint(c)
        for sub in _children(c):
            inner = footprint(sub)
            assert inner.reads <= outer.reads and inner.writes <= outer.writes


def _children(c):
    for name in ("first", "second", "then", "orelse", "body", "left", "right"):
        if hasattr(c, name):
            yield getattr(c, name)


def test_race_free_programs_never_disagree():
    rng = random.Random(23)
    dom = StateDomain(("X", "Y", "Z"), 0, 2)
    checked = 0
    for _ in range(400):
        c = random_com(rng, ["X", "Y", "Z"])
        if check_interference(c):
            continue
        checked += 1
        for s in dom:
            assert not isinstance(exec_bigstep(c, s, 1000), Disagreement)
    assert checked >= 50


# -- interpreter -------------------------------------------------------------------------

def test_exec_examples():
    assert run("X := 1 || Y := 2") == Final(State.of(X=1, Y=2))
    assert run("X := 1 || X := 2") == Disagreement(State.of(X=2, Y=0), State.of(X=1, Y=0))
    assert run("skip || skip", "X=3") == Final(State.of(X=3))
    assert run("while true do skip") == Divergent()
    assert run("while true do skip", fuel=0) == Divergent()


def test_exec_while():
    assert run("while X <= 3 do X := X + 1") == Final(State.of(X=4, Y=0))


def test_unbound_assignment_is_fault():
    outcome = exec_bigstep(parse_ippl("Q := 1"), State.of(X=0))
    assert isinstance(outcome, RuntimeFault)


def test_bounded_execution_faults_out_of_range():
    outcome = exec_bigstep(parse_ippl("X := X + 1"), State.of(X=2), bounds=StateDomain(("X",), 0, 2))
    assert isinstance(outcome, RuntimeFault)


def test_format_outcome():
    assert format_outcome(run("X := 1 || Y := 2")) == "final X=1,Y=2"
    assert format_outcome(run("X := 1 || X := 2", "X=0")) == "disagreement {X=2} vs {X=1}"
    assert format_outcome(Divergent()) == "divergent"


def test_fuel_is_shared_between_orders():
    c = parse_ippl("X := 1 || Y := 2")
    # root + two orders of two assignments each
    assert isinstance(exec_bigstep(c, State.of(X=0, Y=0), 4), Divergent)
    assert isinstance(exec_bigstep(c, State.of(X=0, Y=0), 5), Final)


# -- denotation ---------------------------------------------------------------------------

def test_denote_parallel_disjoint():
    dom = StateDomain(XY, 0, 2)
    relation = denote(parse_ippl("X := 1 || Y := 2"), dom).as_dict()
    assert relation == {s: State.of(X=1, Y=2) for s in dom}


def test_denote_parallel_racy_is_empty():
    assert denote(parse_ippl("X := 1 || X := 2"), StateDomain(XY, 0, 2)).as_dict() == {}


def test_denote_skip_is_identity():
    dom = StateDomain(XY, 0, 2)
    assert denote(SKIP, dom).as_dict() == {s: s for s in dom}


def test_denote_bounded_assignment_is_partial():
    relation = denote(parse_ippl("X := X + 1"), StateDomain(("X",), 0, 2)).as_dict()
    assert relation == {State.of(X=0): State.of(X=1), State.of(X=1): State.of(X=2)}


def test_denote_unbounded_follows_arithmetic():
    relation = denote(parse_ippl("X := X + 1"), StateDomain(("X",), 0, 2), bounded=False)
    assert relation.as_dict()[State.of(X=2)] == State.of(X=3)


def test_denote_while_fixpoint():
    dom = StateDomain(("X",), 0, 5)
    relation = denote(parse_ippl("while X <= 2 do X := X + 1"), dom).as_dict()
    assert relation == {s: (State.of(X=3) if s["X"] <= 2 else s) for s in dom}


def test_denote_nonterminating_loop_is_undefined():
    dom = StateDomain(("X",), 0, 2)
    relation = denote(parse_ippl("while X <= 1 do X := X"), dom).as_dict()
    assert relation == {State.of(X=2): State.of(X=2)}


def test_dump_format():
    text = denote(parse_ippl("X := 1"), StateDomain(("X",), 0, 1)).dump()
    assert text.splitlines() == ["{X=0} -> {X=1}", "{X=1} -> {X=1}"]


def test_denotation_is_functional():
    rng = random.Random(24)
    dom = StateDomain(XY, 0, 2)
    for _ in range(100):
        relation = denote(random_com(rng, list(XY), loops=True), dom)
        inputs = [a for a, _ in relation]
        assert len(inputs) == len(set(inputs))
        assert all(a in dom for a in inputs)


# -- equivalence and agreement -------------------------------------------------------------

def test_check_equiv_examples():
    dom = StateDomain(("X",), 0, 2)
    assert not check_equiv(parse_ippl("X := 1"), parse_ippl("X := 2"), dom)
    assert check_equiv(parse_ippl("X := 1; X := X + 1"), parse_ippl("X := 2"), dom)


def test_find_difference_reports_first_state():
    dom = StateDomain(("X",), 0, 2)
    diff = find_difference(parse_ippl("skip"), parse_ippl("X := 0"), dom)
    assert diff.state == State.of(X=1)


def test_interchange_counterexample():
    c0, c1, c2 = parse_ippl("X := 1"), parse_ippl("Z := X + Y"), parse_ippl("Y := 1")
    dom = StateDomain(("X", "Y", "Z"), 0, 2)
    lhs, rhs = ParC(SeqC(c0, c1), c2), SeqC(ParC(c0, c2), c1)
    diff = find_difference(lhs, rhs, dom)
    assert diff is not None
    assert diff.state["Y"] != 1
    assert isinstance(diff.left, Disagreement) and isinstance(diff.right, Final)


def test_agreement_examples():
    assert agreement_check(SKIP, StateDomain(XY, 0, 2))
    assert agreement_check(parse_ippl("X := 1 || X := 2"), StateDomain(XY, 0, 2))
    assert agreement_check(parse_ippl("while X <= 2 do X := X + 1"), StateDomain(("X",), 0, 5))


def test_agreement_with_divergence():
    assert agreement_check(parse_ippl("while X <= 1 do X := X"), StateDomain(("X",), 0, 2), 500)


def test_agreement_random_programs_with_loops():
    rng = random.Random(25)
    dom = StateDomain(XY, 0, 2)
    for _ in range(100):
        c = random_com(rng, list(XY), loops=True)
        assert agreement_mismatches(c, dom, 2000) == [], render_com(c)


def test_agreement_terminating_loops():
    rng = random.Random(26)
    dom = StateDomain(XY, 0, 2)
    for _ in range(30):
        assert agreement_check(terminating_loop(rng, list(XY)), dom)


def test_parallel_commutes_on_random_programs():
    rng = random.Random(27)
    dom = StateDomain(XY, 0, 2)
    for _ in range(100):
        c0, c1 = random_com(rng, list(XY), 5), random_com(rng, list(XY), 5)
        assert check_equiv(ParC(c0, c1), ParC(c1, c0), dom)


def test_parse_bexp_rejects_intvars():
    with pytest.raises(ParseError):
        parse_bexp("i <= X")
