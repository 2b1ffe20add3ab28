"""Ready-made rewrite systems and proofs for the standard worked examples."""

from __future__ import annotations

from .rewrite import RewriteSystem, system
from .sequent import Proof, axiom, contr_l, cut, imp_l, imp_r, weak_l, weak_r
from .syntax import Atom

P, Q, S = Atom("P"), Atom("Q"), Atom("S")


def sys_p_imp_q() -> RewriteSystem:
    return system(("P", "P => Q"))


def sys_p_imp_p() -> RewriteSystem:
    return system(("P", "P => P"))


def sys_top_and_top() -> RewriteSystem:
    return system(("P", "top /\\ top"))


def sys_translated_top_and_top() -> RewriteSystem:
    """``P -> top /\\ top`` translated with parameter ``P`` itself."""
    return system(("P", "(top => P => P) /\\ (top => P => P)"))


def proof_p_entails_q() -> Proof:
    """``P |- Q`` under ``P -> P => Q``: implication-left on ``P`` read as
    ``P => Q``, then contract the two copies of ``P``."""
    left = weak_l(axiom(Q), P)           # Q, P |- Q
    right = weak_r(axiom(P), Q)          # P |- P, Q
    return contr_l(imp_l(left, right, P, Q, P), P, P, P)


def cut_proof_q() -> Proof:
    """``|- Q`` under ``P -> P => Q`` with a cut on ``P``."""
    pq = proof_p_entails_q()
    prove_p = weak_r(imp_r(pq, P, Q, P), Q)   # |- P, Q
    return cut(prove_p, pq, P, P)


def two_step_proof_p() -> Proof:
    """``|- P`` under ``P -> P => P``: an axiom and one implication-right."""
    return imp_r(axiom(P), P, P, P)
