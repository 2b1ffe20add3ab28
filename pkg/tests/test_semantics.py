import json

import pytest

from modulo import pha
from modulo.atrans import atrans_prop, atrans_system
from modulo.parser import parse_prop as pp
from modulo.rewrite import RewriteSystem, system
from modulo.scenarios import sys_p_imp_p, sys_top_and_top, sys_translated_top_and_top
from modulo.semantics import (
    BudgetExhausted, MissingSymbol, Structure, Table, UnassignedVariable, check_grafting,
    check_translation_commutes, const_table, default_structure, eval_prop, eval_term, graft, is_model,
    iter_models, load_structure, model_search, sequent_holds, stability_witness,
    structure_to_json, superconsistency_probe,
)
from modulo.syntax import Fn, Signature, Var

B2 = pha.boolean_2()
C3 = pha.chain_n(3)
ALGEBRAS = list(pha.bundled().values())


def identity(m):
    return Table(1, tuple(range(m)))


def test_eval_term():
    S = Structure(B2, 2, {"f": identity(2), "g": Table(1, (1, 0)), "c": Table(0, (0,))})
    assert eval_term(Var("x"), S, {"x": 1}) == 1
    assert eval_term(Fn("f", (Var("x"),)), S, {"x": 1}) == 1
    assert eval_term(Fn("f", (Fn("g", (Fn("c"),)),)), S, {}) == 1
    with pytest.raises(UnassignedVariable):
        eval_term(Var("y"), S, {})


def test_eval_connectives():
    S = Structure(B2, 1, {}, {"P": const_table(0, 1, 1), "Q": const_table(0, 1, 0)})
    assert eval_prop(pp("top"), S) == B2.top
    assert eval_prop(pp("P /\\ Q"), S) == 0
    assert eval_prop(pp("P => Q"), S) == 0
    assert eval_prop(pp("Q => P"), S) == 1
    with pytest.raises(MissingSymbol):
        eval_prop(pp("T"), S)


def test_eval_quantifier_takes_glb():
    S = Structure(B2, 2, {}, {"P": Table(1, (1, 0))})
    assert eval_prop(pp("forall x. P(x)"), S) == 0
    assert eval_prop(pp("exists x. P(x)"), S) == 1


def test_is_model():
    R = sys_top_and_top()
    good = Structure(B2, 1, {}, {"P": const_table(0, 1, B2.and_[B2.top][B2.top])})
    bad = Structure(B2, 1, {}, {"P": const_table(0, 1, 0)})
    assert is_model(good, R).ok
    assert not is_model(bad, R).ok
    assert is_model(bad, RewriteSystem()).ok


def test_graft_picks_tables_by_symbol():
    M0 = Structure(B2, 1, {}, {"P": const_table(0, 1, 0), "Q": const_table(0, 1, 1)})
    M1 = Structure(B2, 1, {}, {"P": const_table(0, 1, 1), "Q": const_table(0, 1, 0)})
    M2 = graft(M0, M1, pp("Q"))
    assert M2.phat["Q"] == M0.phat["Q"] and M2.phat["P"] == M1.phat["P"]
    assert graft(M0, M1, pp("top")).phat == M1.phat
    assert graft(M0, M1, pp("P /\\ Q")).phat == M0.phat


def test_grafting_on_samples():
    sig = Signature({"c": 0, "f": 1}, {"P": 0, "Q": 1, "T": 1})
    M0 = default_structure(sig, C3, 2, value=1)
    M1 = Structure(C3, 2, {"c": Table(0, (1,)), "f": Table(1, (1, 0))},
                   {"P": Table(0, (2,)), "Q": Table(1, (0, 2)), "T": Table(1, (1, 2))})
    assert check_grafting(M0, M1, pp("forall x. Q(f(x))"), samples=300).ok


@pytest.mark.parametrize("b", ["P", "top", "P => Q"])
def test_commutation_examples(b):
    S = Structure(C3, 1, {}, {"P": const_table(0, 1, 1), "Q": const_table(0, 1, 2), "A": const_table(0, 1, 0)})
    a = pp("A")
    T = S.with_algebra(pha.a_translate(C3, eval_prop(a, S)))
    assert eval_prop(atrans_prop(pp(b), a), S) == eval_prop(pp(b), T)


def test_commutation_sampled():
    S = Structure(C3, 2, {"c": Table(0, (1,))}, {"P": const_table(0, 2, 1), "U": Table(1, (0, 2)), "A": const_table(0, 2, 0)})
    assert check_translation_commutes(S, pp("A"), samples=300).ok


def test_model_search_top_and_top():
    S = model_search(sys_top_and_top(), B2)
    assert S.phat["P"].values == (B2.top,)


def test_model_search_fixed_point():
    S = model_search(sys_p_imp_p(), C3)
    assert S is not None and S.phat["P"].values == (C3.top,)


def test_model_search_none_when_pinned():
    R = system(("P", "P => Q"))
    assert model_search(R, B2, fixed={"Q": const_table(0, 1, 0)}) is None
    assert model_search(R, B2) is not None


def test_model_search_budget():
    R = system(("P", "P => Q"))
    with pytest.raises(BudgetExhausted):
        model_search(R, pha.chain_n(5), m=1, budget=1, fixed={"Q": const_table(0, 1, 0)})


def test_iter_models_are_all_models():
    R = sys_p_imp_p()
    for B in ALGEBRAS:
        models = list(iter_models(R, B))
        assert models and all(is_model(M, R).ok for M in models)


@pytest.mark.parametrize("R", [sys_top_and_top(), sys_p_imp_p()], ids=["top_and_top", "p_imp_p"])
def test_stability_witness(R):
    for B in ALGEBRAS:
        M2 = stability_witness(R, pp("Q"), B)
        assert M2 is not None and is_model(M2, atrans_system(R, pp("Q"))).ok


def test_stability_rejects_incompatible_parameter():
    with pytest.raises(ValueError):
        stability_witness(sys_top_and_top(), pp("P"), B2)


def test_probe_top_and_top_found_everywhere():
    rep = superconsistency_probe(sys_top_and_top(), ALGEBRAS, (1,))
    assert not rep.refuted and all(o == "found" for _, _, o in rep.rows)


def test_probe_translated_system_is_honest():
    # no finite counterexample exists in the bundled algebras at m <= 2
    rep = superconsistency_probe(sys_translated_top_and_top(), ALGEBRAS, (1, 2))
    assert not rep.refuted and "evidence only" in rep.summary


def test_sequent_holds():
    S = Structure(B2, 1, {}, {"P": const_table(0, 1, 1), "Q": const_table(0, 1, 0)})
    assert sequent_holds([pp("P"), pp("P => Q")], [pp("Q")], S).ok
    assert not sequent_holds([pp("P")], [pp("Q")], S).ok
    assert sequent_holds([pp("Q")], [], S).ok


def test_structure_json_round_trip(tmp_path):
    M = stability_witness(sys_p_imp_p(), pp("Q"), C3)
    T = Structure(pha.a_translate(C3, 0), 1, {}, {"P": const_table(0, 1, 2)})
    for S in (M, T):
        path = tmp_path / "s.json"
        path.write_text(json.dumps(structure_to_json(S)))
        back = load_structure(str(path))
        assert back.phat == S.phat and back.algebra.imp == S.algebra.imp
