import pytest
from hypothesis import given

from modulo.parser import parse_prop as pp
from modulo.rewrite import (
    DuplicateHead, FreeVarEscape, FuelExhausted, Normal, RewriteSystem, Tri, congruent,
    format_system, head_normalize, load_system, normalize, parse_system, r_compatible,
    rewrite_step, system,
)
from modulo.syntax import alpha_eq

from strategies import props

TOP_AND_TOP = system(("P", "top /\\ top"))


def test_validates_single_rule():
    assert len(TOP_AND_TOP) == 1


def test_duplicate_head():
    with pytest.raises(DuplicateHead):
        system(("P", "Q"), ("P", "top"))


def test_free_var_escape():
    with pytest.raises(FreeVarEscape):
        system(("P(x)", "Q(y)"))


def test_rewrite_step():
    assert rewrite_step(pp("P"), TOP_AND_TOP) == pp("top /\\ top")
    assert rewrite_step(pp("Q /\\ P"), TOP_AND_TOP) == pp("Q /\\ (top /\\ top)")
    assert rewrite_step(pp("Q"), TOP_AND_TOP) is None


def test_normalize():
    assert normalize(pp("P"), TOP_AND_TOP, 10) == Normal(pp("top /\\ top"), 1)
    assert isinstance(normalize(pp("P"), system(("P", "P => P")), 50), FuelExhausted)
    assert normalize(pp("top"), system(("P", "P => P"))).prop == pp("top")


def test_normalize_instantiates_parameters():
    R = system(("T(x)", "U(x) /\\ Q"))
    assert normalize(pp("T(c)"), R).prop == pp("U(c) /\\ Q")


def test_congruent():
    assert congruent(pp("P"), pp("top /\\ top"), TOP_AND_TOP) is Tri.YES
    assert congruent(pp("S"), pp("S"), RewriteSystem()) is Tri.YES
    assert congruent(pp("S"), pp("Q"), RewriteSystem()) is Tri.NO


def test_congruent_through_a_looping_rule():
    # neither side normalizes, but one root step joins them
    R = system(("P", "P => Q"))
    assert congruent(pp("P"), pp("P => Q"), R, fuel=0) is Tri.UNKNOWN
    assert congruent(pp("P"), pp("P => Q"), R, fuel=20) is Tri.YES
    assert congruent(pp("P"), pp("Q => P"), R, fuel=20) is Tri.NO


def test_congruent_unknown_on_endless_unfolding():
    R = system(("P", "P => Q"), ("S", "S => Q"))
    assert congruent(pp("P"), pp("S"), R, fuel=50) is Tri.UNKNOWN


def test_head_normalize():
    R = system(("P", "top /\\ top"))
    assert head_normalize(pp("P"), R) == pp("top /\\ top")


@pytest.mark.parametrize("a, ok", [("Q", True), ("P", False), ("top => bot", True)])
def test_r_compatible(a, ok):
    assert r_compatible(pp(a), TOP_AND_TOP) is ok


def test_text_format_round_trip(tmp_path):
    R = parse_system("P -> top /\\ top\nT(x) -> U(x) => Q\n")
    path = tmp_path / "r.rs"
    path.write_text(format_system(R))
    assert load_system(str(path)).rules == R.rules


@given(props(quantifiers=False))
def test_normal_forms_are_irreducible_and_congruent(p):
    R = system(("P", "Q /\\ top"), ("S", "P => Q"))
    r = normalize(p, R)
    assert isinstance(r, Normal)
    assert rewrite_step(r.prop, R) is None
    assert congruent(p, r.prop, R) is Tri.YES
    assert alpha_eq(normalize(r.prop, R).prop, r.prop)
