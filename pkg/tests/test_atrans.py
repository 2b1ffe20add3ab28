import random

import pytest
from hypothesis import given

from modulo.atrans import (
    TranslationContext, UnboundViolation, atrans_prop, atrans_system,
    check_translation_simulation, kolmogorov,
)
from modulo.generate import random_prop
from modulo.parser import parse_prop as pp
from modulo.rewrite import RewriteSystem, system
from modulo.syntax import Signature, alpha_eq, atoms, free_vars

from strategies import props

A = pp("S")


@pytest.mark.parametrize("b, want", [
    ("P", "P"),
    ("P => Q", "((P => S) => S) => ((Q => S) => S)"),
    ("forall x. U(x)", "forall x. ((U(x) => S) => S)"),
    ("bot", "bot"),
    ("top", "top"),
])
def test_translation_clauses(b, want):
    assert atrans_prop(pp(b), A) == pp(want)


def test_translated_system_matches_the_displayed_rule():
    got = atrans_system(system(("P", "top /\\ top")), pp("P"))
    assert got.rules[0].rhs == pp("(top => P => P) /\\ (top => P => P)")


def test_translated_system_atomic_rhs_and_empty():
    assert atrans_system(system(("P", "Q")), A).rules[0].rhs == pp("Q")
    assert len(atrans_system(RewriteSystem(), A)) == 0


@pytest.mark.parametrize("b, want", [
    ("P", "(P => bot) => bot"),
    ("top", "(top => bot) => bot"),
    ("P /\\ Q", "((((P => bot) => bot) /\\ ((Q => bot) => bot)) => bot) => bot"),
])
def test_kolmogorov(b, want):
    assert kolmogorov(pp(b)) == pp(want)


def test_open_parameter_rejected_unless_allowed():
    with pytest.raises(UnboundViolation):
        TranslationContext(pp("U(x)"))
    ctx = TranslationContext(pp("U(y)"), allow_open=True)
    assert free_vars(atrans_prop(pp("forall x. V(x)"), ctx)) == {"y"}
    with pytest.raises(UnboundViolation):
        atrans_prop(pp("forall y. V(y)"), ctx)


def test_simulation_examples():
    assert check_translation_simulation(pp("P"), system(("P", "top /\\ top")), pp("Q")).ok
    assert check_translation_simulation(pp("top"), system(("P", "top /\\ top")), pp("Q")).ok


def test_simulation_random():
    rng = random.Random(3)
    R = system(("P", "Q => Q"))
    sig = Signature({}, {"P": 0, "Q": 0})
    for _ in range(200):
        b = random_prop(rng, sig, 3, quantifiers=False)
        assert check_translation_simulation(b, R, A).ok


@given(props())
def test_translation_keeps_atoms_and_free_vars(b):
    t = atrans_prop(b, A)
    assert free_vars(t) == free_vars(b)
    assert {x for x in atoms(t)} - {A} == {x for x in atoms(b)} - {A}


@given(props())
def test_translation_is_alpha_invariant(b):
    from modulo.syntax import Var, substitute
    for v in free_vars(b):
        renamed = substitute(b, v, Var(v + "0"))
        assert alpha_eq(atrans_prop(renamed, A), substitute(atrans_prop(b, A), v, Var(v + "0")))
