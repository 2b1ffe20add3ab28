import pytest

from modulo import sequent as sq
from modulo.atrans import atrans_prop, atrans_system
from modulo.parser import parse_prop as pp
from modulo.rewrite import RewriteSystem
from modulo.scenarios import S, cut_proof_q, sys_p_imp_p, sys_p_imp_q, two_step_proof_p
from modulo.sequent import check_classical, check_intuitionistic, is_cut_free, seq
from modulo.translate import (
    FrozenAtom, NotRepresentable, Representation, SideConditionViolated, forward_representation,
    shape_excluded, translate_clas_to_int, translate_int_to_clas,
)

from corpus import random_corpus

EMPTY = RewriteSystem()
P, Q = pp("P"), pp("Q")


def test_axiom_base_case():
    ip = translate_clas_to_int(sq.axiom(P), S)
    assert ip.concl.same(seq([P, pp("P => S")], [S]))
    assert check_intuitionistic(ip, EMPTY).ok


def test_cut_proof_translates():
    R = sys_p_imp_q()
    ip = translate_clas_to_int(cut_proof_q(), S, R)
    assert ip.concl.same(seq([pp("Q => S")], [S]))
    assert check_intuitionistic(ip, atrans_system(R, S)).ok
    assert FrozenAtom(S).violations(ip) == []


def test_weak_right_becomes_weak_left():
    ip = translate_clas_to_int(sq.weak_r(sq.axiom(P), Q), S)
    assert ip.rule == "weak-l"
    assert check_intuitionistic(ip, EMPTY).ok


def test_parameter_must_be_compatible():
    with pytest.raises(ValueError):
        translate_clas_to_int(cut_proof_q(), P, sys_p_imp_q())


@pytest.mark.parametrize("b, excluded", [
    (atrans_prop(pp("P => Q"), S), True),
    (S, False),
    (pp("P => S"), False),
    (pp("(P => S) => S"), False),
    (pp("S => P"), True),
])
def test_shape_excluded(b, excluded):
    assert shape_excluded(b, S) is excluded


def test_round_trip_two_step_proof():
    R = sys_p_imp_p()
    ip = translate_clas_to_int(two_step_proof_p(), S, R)
    cp = translate_int_to_clas(ip, Representation.induced(ip.concl, S), S, R)
    assert is_cut_free(cp) and check_classical(cp, R).ok
    assert cp.concl.same(seq([], [P]))


def test_admissible_output_maps_back_to_an_axiom():
    ip = sq.admissible_2(sq.axiom(P), S)  # P, P => S |- S represents P |- P
    cp = translate_int_to_clas(ip, Representation.induced(ip.concl, S), S, EMPTY)
    assert cp.rule == "axiom" and cp.concl.same(seq([P], [P]))


def test_right_rule_on_the_parameter_is_rejected():
    C = pp("C")
    a = pp("C => C")
    ip = sq.imp_r(sq.axiom(C), C, C)  # |- C => C, which stands for the empty sequent
    with pytest.raises(SideConditionViolated):
        translate_int_to_clas(ip, Representation.induced(ip.concl, a), a, EMPTY)


def test_representation_checks():
    rep = forward_representation(seq([P], [Q]), S)
    assert rep.check() == []
    assert Representation.from_json(rep.to_json()) == rep
    broken = Representation(S, seq([P], [Q]), seq([P], [S]), rep.entries[:1])
    assert broken.check()


def test_unrepresentable_conclusion():
    ip = sq.axiom(pp("P => Q"))  # the right formula is no translate
    with pytest.raises(NotRepresentable):
        Representation.induced(ip.concl, S)


def test_cut_is_refused_backwards():
    ip = translate_clas_to_int(cut_proof_q(), S, sys_p_imp_q())
    with pytest.raises(sq.ProofError):
        translate_int_to_clas(ip, forward_representation(cut_proof_q().concl, S), S, sys_p_imp_q())


@pytest.mark.parametrize("seed", range(3))
def test_random_round_trips(seed):
    for name, R, p in random_corpus(20, seed=seed):
        assert check_classical(p, R).ok, name
        ip = translate_clas_to_int(p, S, R)
        assert check_intuitionistic(ip, atrans_system(R, S)).ok
        assert FrozenAtom(S).violations(ip) == []
        cp = translate_int_to_clas(ip, forward_representation(p.concl, S), S, R)
        assert is_cut_free(cp) and check_classical(cp, R).ok
        assert cp.concl.same(p.concl)
