"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for just the summary.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from modulo import pha  # noqa: E402
from modulo.atrans import atrans_system  # noqa: E402
from modulo.natded import FULL, Cycle, build_loop_example, build_self_application, reduce, type_check  # noqa: E402
from modulo.parser import parse_prop as pp  # noqa: E402
from modulo.scenarios import (  # noqa: E402
    S, cut_proof_q, sys_p_imp_p, sys_p_imp_q, sys_top_and_top, two_step_proof_p,
)
from modulo.semantics import (  # noqa: E402
    Structure, Table, check_grafting, check_translation_commutes, is_model, model_search, sequent_holds,
    stability_witness,
)
from modulo.sequent import check_classical, check_intuitionistic, is_cut_free  # noqa: E402
from modulo.syntax import Signature  # noqa: E402
from modulo.translate import FrozenAtom, forward_representation, translate_clas_to_int, translate_int_to_clas  # noqa: E402

from corpus import intuitionistic_corpus, proof_signature, random_corpus, stored_models  # noqa: E402

ALGEBRAS = list(pha.bundled().values())
RESULTS: dict[int, tuple[bool, str]] = {}


def report(n: int, ok: bool, detail: str):
    RESULTS[n] = (ok, detail)
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:>2}: {detail}"
    capman = _capture_manager()
    if capman is not None:
        with capman.global_and_fixture_disabled():
            print(line)
    else:
        print(line)
    assert ok, line


_CONFIG = None


def _capture_manager():
    return _CONFIG.pluginmanager.getplugin("capturemanager") if _CONFIG is not None else None


@pytest.fixture(autouse=True)
def _grab_config(request):
    global _CONFIG
    _CONFIG = request.config


def random_structure(rng: random.Random, B: pha.FinitePHA, m: int, sig: Signature) -> Structure:
    def table(k, hi):
        return Table(k, tuple(rng.randrange(hi) for _ in range(m**k)))
    return Structure(B, m,
                     {f: table(k, m) for f, k in sig.functions.items()},
                     {p: table(k, B.n) for p, k in sig.predicates.items()})


SIG = Signature({"c": 0, "f": 1}, {"P": 0, "U": 1, "T": 2, "A": 0})


def test_criterion_01_algebra_axioms():
    t0 = time.perf_counter()
    bad = [str(B) for B in ALGEBRAS
           if not (pha.check_pha(B).ok and pha.check_ordered(B).ok and pha.check_complete(B).ok)]
    dt = time.perf_counter() - t0
    report(1, not bad and dt < 5.0 and len(ALGEBRAS) == 7,
           f"{len(ALGEBRAS) - len(bad)}/{len(ALGEBRAS)} bundled algebras pass all three checkers in {dt:.3f}s (< 5s)")


def test_criterion_02_implication_inequalities():
    fails = sum(len(pha.check_implication_inequalities(B).issues) for B in ALGEBRAS)
    triples = sum(B.n ** 3 for B in ALGEBRAS)
    report(2, fails == 0, f"seven inequalities over {triples} element triples, {fails} violations")


def test_criterion_03_translated_algebras():
    bad = []
    count = 0
    for B in ALGEBRAS:
        for a in range(B.n):
            T = pha.a_translate(B, a)
            count += 1
            if not (pha.check_pha(T).ok and pha.check_ordered(T).ok and pha.check_complete(T).ok):
                bad.append(f"{B}@{B.label(a)}")
    C = pha.chain_n(3)
    T = pha.a_translate(C, C.bot)
    half, one = C.names.index("1/2"), C.names.index("1")
    non_antisym = T.le(half, one) and T.le(one, half) and half != one
    report(3, not bad and non_antisym,
           f"{count - len(bad)}/{count} translated algebras pass; chain_3 at 0 has 1/2 and 1 mutually below: {non_antisym}")


def test_criterion_04_semantic_commutation():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    samples = fails = 0
    for B in ALGEBRAS:
        for m in (1, 2, 3):
            for _ in range(3):
                M = random_structure(rng, B, m, SIG)
                v = check_translation_commutes(M, pp("A"), samples=20, seed=rng.randrange(10**9), depth=4)
                samples += 20
                fails += len(v.issues)
    dt = time.perf_counter() - t0
    report(4, samples >= 1000 and fails == 0 and dt < 30.0,
           f"{samples} (algebra, proposition) samples with m <= 3, depth <= 4: {fails} mismatches in {dt:.2f}s (< 30s)")


def test_criterion_05_grafting():
    rng = random.Random(7)
    per_case = {"own symbols": 0, "other symbols": 0}
    fails = 0
    a = pp("forall x. U(f(x)) => A")
    for B in (pha.chain_n(3), pha.pre3(), pha.product(pha.boolean_2(), pha.boolean_2())):
        M0 = random_structure(rng, B, 2, SIG)
        M1 = random_structure(rng, B, 2, SIG)
        v = check_grafting(M0, M1, a, samples=500, seed=rng.randrange(10**9))
        fails += len(v.issues)
        for k in per_case:
            per_case[k] += 500
    report(5, fails == 0 and min(per_case.values()) >= 500,
           f"{per_case['own symbols']} own-symbol and {per_case['other symbols']} other-symbol propositions, {fails} mismatches")


def test_criterion_06_top_and_top_scenario():
    t0 = time.perf_counter()
    R = sys_top_and_top()
    found = 0
    for B in ALGEBRAS:
        M = model_search(R, B)
        if M is not None and M.phat["P"].values == (B.and_[B.top][B.top],):
            found += 1
    ex = build_loop_example()
    typed = type_check(ex.t1, ex.t1_type, ex.R).ok and type_check(ex.t2, ex.t2_type, ex.R).ok
    r = reduce(ex.loop, 100, FULL)
    cyc = isinstance(r, Cycle) and r.period == 3
    dt = time.perf_counter() - t0
    report(6, found == len(ALGEBRAS) and typed and cyc and dt < 1.0,
           f"P = top/\\top found in {found}/{len(ALGEBRAS)} algebras; t1, t2 typed: {typed}; "
           f"cycle period {getattr(r, 'period', None)}; {dt:.3f}s (< 1s)")


def test_criterion_07_intro_scenarios():
    cut_ok = check_classical(cut_proof_q(), sys_p_imp_q()).ok
    p = two_step_proof_p()
    two_ok = check_classical(p, sys_p_imp_p()).ok and p.size() == 2 and is_cut_free(p)
    t, R, goal = build_self_application()
    omega_typed = type_check(t, goal, R).ok
    r = reduce(t, 10, FULL)
    report(7, cut_ok and two_ok and omega_typed and isinstance(r, Cycle),
           f"cut proof of |- Q: {cut_ok}; two-rule proof of |- P: {two_ok}; "
           f"omega typed at Q: {omega_typed}; omega cycles: {isinstance(r, Cycle)}")


def test_criterion_08_forward_pipeline():
    R = sys_p_imp_q()
    ip = translate_clas_to_int(cut_proof_q(), S, R)
    ok = check_intuitionistic(ip, atrans_system(R, S)).ok
    frozen = FrozenAtom(S).violations(ip)
    report(8, ok and not frozen,
           f"translated cut proof ({ip.size()} nodes, concludes {ip.concl}) checks: {ok}; frozen-parameter violations: {len(frozen)}")


def test_criterion_09_round_trip():
    corpus = random_corpus(60, seed=11)
    good = 0
    for _, R, p in corpus:
        ip = translate_clas_to_int(p, S, R)
        cp = translate_int_to_clas(ip, forward_representation(p.concl, S), S, R)
        if is_cut_free(cp) and check_classical(cp, R).ok and cp.concl.same(p.concl):
            good += 1
    report(9, good == len(corpus) >= 50, f"{good}/{len(corpus)} round trips cut-free, checking and same conclusion")


def test_criterion_10_stability_witness():
    good = total = 0
    for R in (sys_top_and_top(), sys_p_imp_p()):
        RA = atrans_system(R, pp("Q"))
        for B in ALGEBRAS:
            total += 1
            M = stability_witness(R, pp("Q"), B)
            good += M is not None and is_model(M, RA).ok
    report(10, good == total, f"{good}/{total} witnesses are models of the translated system")


def test_criterion_11_checker_soundness():
    proofs = models = violations = rejected = 0
    for label, R, p in intuitionistic_corpus(40, seed=5):
        if not check_intuitionistic(p, R).ok:
            rejected += 1
            continue
        proofs += 1
        sig = R.signature().merge(proof_signature(p))
        for M in stored_models(R, sig):
            models += 1
            violations += not sequent_holds(p.concl.left, p.concl.right, M).ok
    report(11, violations == 0 and proofs > 0 and rejected == 0,
           f"{proofs} accepted intuitionistic proofs against {models} stored models: {violations} violations")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
