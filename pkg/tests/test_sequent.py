import json

import pytest

from modulo import sequent as sq
from modulo.parser import parse_prop as pp
from modulo.rewrite import RewriteSystem, system
from modulo.scenarios import cut_proof_q, sys_p_imp_p, sys_p_imp_q, two_step_proof_p
from modulo.sequent import check_classical, check_intuitionistic, is_cut_free, seq

P, Q, C, A = pp("P"), pp("Q"), pp("C"), pp("A")
EMPTY = RewriteSystem()


def test_cut_proof_of_q_checks():
    p = cut_proof_q()
    assert p.concl.same(seq([], [Q]))
    assert check_classical(p, sys_p_imp_q()).ok
    assert not is_cut_free(p)


def test_two_rule_proof_of_p_checks():
    p = two_step_proof_p()
    assert p.size() == 2 and p.concl.same(seq([], [P]))
    assert check_classical(p, sys_p_imp_p()).ok
    assert check_intuitionistic(p, sys_p_imp_p()).ok
    assert is_cut_free(p)


def test_cut_proof_fails_without_the_rule():
    assert not check_classical(cut_proof_q(), EMPTY).ok


def test_axiom_needs_congruence():
    assert not check_classical(sq.axiom(P, Q), EMPTY).ok
    assert check_classical(sq.axiom(P, Q), system(("P", "Q"))).ok
    assert check_intuitionistic(sq.axiom(A), EMPTY).ok


def test_or_right_in_intuitionistic_calculus():
    p = sq.or_r1(sq.axiom(P), P, Q)
    assert p.concl.same(seq([P], [pp("P \\/ Q")]))
    assert check_intuitionistic(p, EMPTY).ok
    assert not check_classical(p, EMPTY).ok


def test_two_right_formulas_is_a_flavor_violation():
    p = sq.weak_r(sq.axiom(P), Q)
    assert check_classical(p, EMPTY).ok
    v = check_intuitionistic(p, EMPTY)
    assert not v.ok and "FlavorViolation" in str(v)


def test_excluded_middle_is_classical_only():
    # |- P \/ (P => bot)
    inner = sq.weak_r(sq.axiom(P), pp("bot"))
    p = sq.or_r(sq.imp_r(inner, P, pp("bot")), P, pp("P => bot"))
    assert check_classical(p, EMPTY).ok
    assert not check_intuitionistic(p, EMPTY).ok


def test_eigenvariable_condition():
    Ux = pp("U(x)")
    bad = sq.forall_r(sq.axiom(Ux), Ux, "x")  # U(x) |- forall x. U(x)
    assert not check_classical(bad, EMPTY).ok
    good = sq.imp_r(sq.axiom(Ux), Ux, Ux)
    assert check_classical(sq.forall_r(good, pp("U(x) => U(x)"), "x"), EMPTY).ok


def test_congruence_unknown_is_reported():
    R = system(("P", "P => Q"), ("S", "S => Q"))
    v = check_classical(sq.axiom(P, pp("S")), R, fuel=30)
    assert v.status == "unknown"


def test_frozen_parameter():
    p = sq.imp_r(sq.axiom(C), C, C)
    assert check_intuitionistic(p, EMPTY).ok
    assert not check_intuitionistic(p, EMPTY, frozen=pp("C => C")).ok


def test_admissible_2_from_axiom():
    # the axiom C |- C contributes C to the context
    p = sq.admissible_2(sq.axiom(C), A)
    assert p.concl.same(seq([C, pp("C => A")], [A]))
    assert check_intuitionistic(p, EMPTY).ok and is_cut_free(p)


def test_admissible_1_from_axiom():
    p = sq.admissible_1(sq.weak_l(sq.axiom(A), C), C, A)
    assert p.concl.same(seq([A, pp("(C => A) => A")], [A]))
    assert check_intuitionistic(p, EMPTY).ok and is_cut_free(p)


def test_multiset_comparison_is_up_to_alpha():
    s = seq([pp("forall x. U(x)"), P], [Q])
    assert s.same(seq([P, pp("forall y. U(y)")], [Q]))
    assert not s.same(seq([P], [Q]))


def test_json_round_trip(tmp_path):
    for p in (cut_proof_q(), two_step_proof_p()):
        path = tmp_path / "p.json"
        sq.save_proof(p, str(path))
        back = sq.load_proof(str(path))
        assert back == p
        json.loads(path.read_text())


def test_format_proof_lists_every_node():
    p = cut_proof_q()
    assert len(sq.format_proof(p).splitlines()) == p.size()


def test_intuitionistic_cut_and_or_elimination():
    # P \/ Q |- Q \/ P
    left = sq.or_r2(sq.axiom(P), Q, P)
    right = sq.or_r1(sq.axiom(Q), Q, P)
    p = sq.or_l(left, right, P, Q)
    assert check_intuitionistic(p, EMPTY).ok
    PQ = pp("P \\/ Q")
    with_cut = sq.cut(sq.axiom(PQ), sq.weak_l(p, PQ), PQ)
    assert with_cut.concl.same(seq([PQ], [pp("Q \\/ P")]))
    assert check_intuitionistic(with_cut, EMPTY).ok


def test_bad_premise_rejected():
    p = sq.Proof("imp-r", seq([], [pp("P => Q")]), (sq.axiom(P),), a=P, b=Q)
    assert not check_classical(p, EMPTY).ok


def test_unknown_calculus():
    with pytest.raises(ValueError):
        sq.check(sq.axiom(P), EMPTY, "linear")
