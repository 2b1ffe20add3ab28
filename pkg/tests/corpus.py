"""Shared proof corpus: intuitionistic proofs paired with their rewrite
system, plus the stored models each system is checked against."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from modulo import pha
from modulo import sequent as sq
from modulo.atrans import atrans_system
from modulo.generate import random_classical_proof
from modulo.parser import parse_prop as pp
from modulo.rewrite import RewriteSystem, system
from modulo.scenarios import S, cut_proof_q, sys_p_imp_p, sys_p_imp_q, sys_top_and_top, two_step_proof_p
from modulo.semantics import iter_models
from modulo.syntax import Signature, signature_of
from modulo.translate import translate_clas_to_int

SYSTEMS = {
    "p_imp_q": sys_p_imp_q(),
    "p_imp_p": sys_p_imp_p(),
    "top_and_top": sys_top_and_top(),
    "unary": system(("T(x)", "U(x) /\\ Q")),
}

SIG = Signature({"c": 0}, {"P": 0, "Q": 0, "U": 1})


def random_corpus(n: int, seed: int = 0, steps: int = 8):
    """``n`` random cut-free classical proofs as (name, R, proof)."""
    rng = random.Random(seed)
    names = sorted(SYSTEMS)
    out = []
    for i in range(n):
        name = names[i % len(names)]
        R = SYSTEMS[name]
        sig = SIG.merge(R.signature())
        out.append((name, R, random_classical_proof(rng, R, sig, steps=steps)))
    return out


def hand_proofs():
    """Small intuitionistic proofs under the empty system."""
    P, Q, Ux, Uc = pp("P"), pp("Q"), pp("U(x)"), pp("U(c)")
    c = Uc.args[0]
    return [
        sq.imp_r(sq.axiom(P), P, P),
        sq.and_r(sq.weak_l(sq.axiom(P), Q), sq.weak_l(sq.axiom(Q), P), P, Q),
        sq.or_r1(sq.axiom(P), P, Q),
        sq.imp_l(sq.weak_l(sq.axiom(Q), P), sq.axiom(P), P, Q),  # P, P => Q |- Q
        sq.forall_l(sq.axiom(Uc), Ux, "x", c),
        sq.exists_r(sq.axiom(Uc), Ux, "x", c),
        sq.admissible_2(sq.axiom(P), S),
        sq.admissible_1(sq.weak_l(sq.axiom(S), P), P, S),
    ]


def intuitionistic_corpus(n_random: int = 40, seed: int = 0):
    """(label, R, proof) triples; every proof is meant to check
    intuitionistically under R."""
    out = [("translated cut proof", atrans_system(sys_p_imp_q(), S), translate_clas_to_int(cut_proof_q(), S, sys_p_imp_q())),
           ("translated two-step proof", atrans_system(sys_p_imp_p(), S), translate_clas_to_int(two_step_proof_p(), S, sys_p_imp_p()))]
    out += [(f"hand {i}", RewriteSystem(), p) for i, p in enumerate(hand_proofs())]
    for i, (name, R, p) in enumerate(random_corpus(n_random, seed)):
        out.append((f"random {i} ({name})", atrans_system(R, S), translate_clas_to_int(p, S, R)))
    return out


def proof_signature(p: sq.Proof) -> Signature:
    props = [f for node in p.nodes() for f in (*node.concl.left, *node.concl.right)]
    return signature_of(*props)


@lru_cache(maxsize=None)
def _models(R: RewriteSystem, sig: Signature, algebra: str, m: int, cap: int):
    B = pha.builtin(algebra)
    return tuple(itertools.islice(iter_models(R, B, m, sig=sig), cap))


def stored_models(R: RewriteSystem, sig: Signature, ms=(1, 2), cap: int = 6):
    """A fixed, deterministic selection of models of R: the first ``cap``
    enumerated in every bundled algebra for each domain size."""
    out = []
    for name in pha.bundled():
        for m in ms:
            out += _models(R, sig, name, m, cap)
    return out
