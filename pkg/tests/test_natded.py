import random

import pytest
from hypothesis import given, strategies as st

from modulo import natded as nd
from modulo.natded import (
    FULL, LEFTMOST_OUTERMOST, App, Cycle, Fst, I, Lam, Normal, Pair, PVar, alpha_equal,
    build_loop_example, build_self_application, parse_term, print_term, reduce, reduce_step,
    type_check,
)
from modulo.parser import parse_prop as pp
from modulo.rewrite import RewriteSystem, system

EMPTY = RewriteSystem()


def test_parse_and_print():
    t = parse_term("\\x. fst(x I) (\\z. x I)")
    assert t == Lam("x", App(Fst(App(PVar("x"), I)), Lam("z", App(PVar("x"), I))))
    assert parse_term(print_term(t)) == t
    assert parse_term(print_term(t, unicode=True)) == t
    assert parse_term("\\(x : P). x") == Lam("x", PVar("x"), pp("P"))
    assert parse_term("[<I, I>]") == Pair(I, I)


def test_parse_error():
    with pytest.raises(nd.TermParseError):
        parse_term("\\x x")


def test_alpha_equality():
    assert alpha_equal(parse_term("\\x. x"), parse_term("\\y. y"))
    assert not alpha_equal(parse_term("\\x. y"), parse_term("\\y. y"))


def test_substitution_avoids_capture():
    t = nd.subst(parse_term("\\y. x y"), "x", PVar("y"))
    assert alpha_equal(t, parse_term("\\w. y w"))


def test_self_application_types_modulo():
    R = system(("P", "P => Q"))
    assert type_check(parse_term("\\x. x x"), pp("P => Q"), R).ok
    assert not type_check(parse_term("\\x. x x"), pp("P => Q"), EMPTY).ok


def test_loop_components_type_check():
    ex = build_loop_example()
    assert type_check(ex.t1, pp("(top => P) => P"), ex.R).ok
    assert type_check(ex.t2, pp("top => P"), ex.R).ok
    assert type_check(ex.typed_loop, pp("P"), ex.R).ok


def test_pair_of_units():
    assert type_check(Pair(I, I), pp("top /\\ top"), EMPTY).ok


def test_type_errors_are_refutations():
    v = type_check(parse_term("\\x. x"), pp("P => Q"), EMPTY)
    assert v.status == "refuted"
    v = type_check(PVar("y"), pp("P"), EMPTY)
    assert v.status == "refuted"


def test_context_entries():
    assert type_check(App(PVar("f"), PVar("p")), pp("Q"), EMPTY, {"f": pp("P => Q"), "p": pp("P")}).ok


def test_undecided_congruence_is_unknown():
    R = system(("P", "P => Q"), ("S", "S => Q"))
    v = type_check(PVar("x"), pp("S"), R, {"x": pp("P")}, fuel=40)
    assert v.status == "unknown"


@pytest.mark.parametrize("t, want", [("(\\x. x) I", "I"), ("fst(<I, \\z. z>)", "I"), ("snd(<I, I>)", "I")])
def test_single_steps(t, want):
    assert reduce_step(parse_term(t)) == parse_term(want)


def test_normal_forms():
    assert reduce(PVar("x")) == Normal(PVar("x"), 0)
    assert isinstance(reduce(Pair(I, I)), Normal)


def test_loop_cycles_with_period_three():
    ex = build_loop_example()
    t1, t2 = ex.t1, ex.t2
    r = reduce(ex.loop, 50, FULL)
    assert isinstance(r, Cycle) and r.period == 3 and r.start == 0
    expected = [
        App(t1, t2),
        App(Fst(App(t2, I)), Lam("z", App(t2, I))),
        App(Fst(Pair(t1, t1)), Lam("z", Pair(t1, t1))),
    ]
    assert all(alpha_equal(a, b) for a, b in zip(r.trace, expected))


def test_loop_under_leftmost_outermost_keeps_growing():
    ex = build_loop_example()
    r = reduce(ex.loop, 60, LEFTMOST_OUTERMOST)
    assert isinstance(r, nd.FuelExhausted)


def test_omega():
    t, R, goal = build_self_application()
    assert type_check(t, goal, R).ok
    for strategy in (FULL, LEFTMOST_OUTERMOST):
        r = reduce(t, 10, strategy)
        assert isinstance(r, Cycle) and r.period == 1


@given(st.integers(0, 10_000), st.sampled_from(["P", "P => Q => P", "(P => Q) => P => Q", "P /\\ Q => Q /\\ P"]))
def test_subject_reduction(seed, goal):
    rng = random.Random(seed)
    goal = pp(goal)
    ctx = {"p": pp("P"), "q": pp("Q")}
    t = nd.random_typed_term(rng, goal, ctx, EMPTY, depth=3, types=(pp("P"), pp("Q"), pp("P => Q")))
    assert type_check(t, goal, EMPTY, ctx).ok
    r = reduce(t, 500, FULL)
    assert isinstance(r, Normal)
    assert not nd.has_redex(r.term)
    assert type_check(r.term, goal, EMPTY, ctx).ok
