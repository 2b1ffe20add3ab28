"""Proof translations between classical and intuitionistic sequent calculus
modulo, through the A-translation.

Forward: a classical proof of ``G |- D`` becomes an intuitionistic proof of
``G^a, (D^a => a) |- a`` under the translated system.  Backward: a cut-free
intuitionistic proof whose conclusion represents a classical sequent becomes
a cut-free classical proof of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .atrans import TranslationContext, _tr, dneg
from .rewrite import DEFAULT_FUEL, RewriteSystem, Tri, congruent, r_compatible
from .sequent import (
    STRUCTURAL, Proof, ProofError, Sequent, _mkey, admissible_1, admissible_2,
    and_l, and_r, axiom, bot_l, contr_l, contr_r, cut, exists_l, exists_r,
    forall_l, forall_r, imp_l, imp_r, is_cut_free, or_l, or_r, or_r1, or_r2,
    seq, top_r, weak_l, weak_r, weaken_to,
)
from .syntax import (
    BINARY, QUANTIFIERS, Atom, Bot, Imp, Prop, Top, alpha_eq, alpha_key,
    substitute,
)


class SideConditionViolated(ProofError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class NotRepresentable(ProofError):
    pass


@dataclass(frozen=True)
class FrozenAtom:
    """The translation parameter, treated as opaque: only axioms and
    structural rules may have it as principal formula on the right."""

    a: Prop

    def matches(self, p: Prop) -> bool:
        return alpha_eq(p, self.a)

    def violations(self, proof: Proof) -> list[str]:
        out = []
        stack = [(proof, "root")]
        while stack:
            node, path = stack.pop()
            if node.side == "r" and node.rule not in STRUCTURAL and self.matches(node.principal):
                out.append(path)
            stack.extend((q, f"{path}.{i}") for i, q in enumerate(node.premises))
        return sorted(out)


def shape_excluded(b: Prop, a: Prop) -> bool:
    """True iff ``b`` is neither ``a``, nor ``X => a``, nor ``(X => a) => a``."""
    if alpha_eq(b, a):
        return False
    return not (isinstance(b, Imp) and alpha_eq(b.rhs, a))


# ---------------------------------------------------------------------------
# Classical to intuitionistic


def translate_clas_to_int(proof: Proof, a: Prop, R: Optional[RewriteSystem] = None) -> Proof:
    """Intuitionistic proof of ``G^a, D^a => a |- a`` under ``R^a``.

    ``R`` is only used to check that ``a`` is compatible with it.
    """
    TranslationContext(a)  # rejects open parameters
    if R is not None and not r_compatible(a, R):
        raise ValueError("the parameter shares symbols with the rewrite system")
    return _Forward(a).run(proof)


class _Forward:
    def __init__(self, a: Prop):
        self.A = a

    def t(self, x: Prop) -> Prop:
        return _tr(x, self.A)

    def n(self, x: Prop) -> Prop:
        return Imp(self.t(x), self.A)

    def d(self, x: Prop) -> Prop:
        return dneg(self.t(x), self.A)

    def run(self, p: Proof) -> Proof:
        A, t, n, d = self.A, self.t, self.n, self.d
        r = p.rule
        prem = p.premises
        if r == "axiom":
            return admissible_2(axiom(t(p.concl.left[0]), t(p.concl.right[0])), A)
        if r == "cut":
            q0, q1 = self.run(prem[0]), self.run(prem[1])
            return cut(imp_r(q1, t(p.b), A), q0, n(p.b), n(p.a))
        c = p.principal
        if r == "and-l":
            q = admissible_1(admissible_1(self.run(prem[0]), t(p.a), A), t(p.b), A)
            return and_l(q, d(p.a), d(p.b), t(c))
        if r == "or-l":
            q0 = admissible_1(self.run(prem[0]), t(p.a), A)
            q1 = admissible_1(self.run(prem[1]), t(p.b), A)
            return or_l(q0, q1, d(p.a), d(p.b), t(c))
        if r == "imp-l":
            q0 = admissible_1(self.run(prem[0]), t(p.b), A)
            q1 = imp_r(self.run(prem[1]), n(p.a), A)
            return imp_l(q0, q1, d(p.a), d(p.b), t(c))
        if r == "forall-l":
            q = admissible_1(self.run(prem[0]), t(substitute(p.a, p.var, p.term)), A)
            return forall_l(q, d(p.a), p.var, p.term, t(c))
        if r == "exists-l":
            q = admissible_1(self.run(prem[0]), t(p.a), A)
            return exists_l(q, d(p.a), p.var, t(c))
        if r == "bot-l":
            return weak_r(bot_l(t(c)), A)
        if r == "contr-l":
            return contr_l(self.run(prem[0]), t(p.a), t(p.b), t(c))
        if r == "weak-l":
            return weak_l(self.run(prem[0]), t(c))
        if r == "and-r":
            q0 = imp_r(self.run(prem[0]), n(p.a), A)
            q1 = imp_r(self.run(prem[1]), n(p.b), A)
            return admissible_2(and_r(q0, q1, d(p.a), d(p.b), t(c)), A)
        if r == "or-r":
            # once with each disjunct, then contract the two copies of n(c)
            q = imp_r(self.run(prem[0]), n(p.b), A)
            q = admissible_2(or_r2(q, d(p.a), d(p.b), t(c)), A)
            q = imp_r(q, n(p.a), A)
            q = admissible_2(or_r1(q, d(p.a), d(p.b), t(c)), A)
            return contr_l(q, n(c), n(c), n(c))
        if r == "imp-r":
            q = admissible_1(self.run(prem[0]), t(p.a), A)
            q = imp_r(q, n(p.b), A)
            return admissible_2(imp_r(q, d(p.a), d(p.b), t(c)), A)
        if r == "forall-r":
            q = imp_r(self.run(prem[0]), n(p.a), A)
            return admissible_2(forall_r(q, d(p.a), p.var, t(c)), A)
        if r == "exists-r":
            q = imp_r(self.run(prem[0]), n(substitute(p.a, p.var, p.term)), A)
            return admissible_2(exists_r(q, d(p.a), p.var, p.term, t(c)), A)
        if r == "top-r":
            return admissible_2(top_r(t(c)), A)
        if r == "contr-r":
            return contr_l(self.run(prem[0]), n(p.a), n(p.b), n(c))
        if r == "weak-r":
            return weak_l(self.run(prem[0]), n(c))
        raise ProofError(f"rule {r} has no classical translation")


# ---------------------------------------------------------------------------
# Representations


PLAIN, DNEG, NEG, FROZEN = "plain", "dneg", "neg", "frozen"


def untranslate(f: Prop, a: Prop) -> Optional[Prop]:
    """The ``c`` with ``c^a = f`` (up to alpha-equivalence), if any."""
    if alpha_eq(f, a):
        return None
    if isinstance(f, (Atom, Top, Bot)):
        return f
    if isinstance(f, BINARY):
        lhs, rhs = _undneg(f.lhs, a), _undneg(f.rhs, a)
        if lhs is None or rhs is None:
            return None
        return type(f)(lhs, rhs)
    if isinstance(f, QUANTIFIERS):
        body = _undneg(f.body, a)
        return None if body is None else type(f)(f.var, body)
    return None


def _undneg(f: Prop, a: Prop) -> Optional[Prop]:
    if isinstance(f, Imp) and isinstance(f.lhs, Imp) and alpha_eq(f.rhs, a) and alpha_eq(f.lhs.rhs, a):
        return untranslate(f.lhs.lhs, a)
    return None


def classify(f: Prop, side: str, a: Prop) -> tuple[str, Optional[str], Optional[Prop]]:
    """``(shape, classical side, classical formula)`` of an intuitionistic
    formula occurring on ``side``."""
    if alpha_eq(f, a):
        if side == "r":
            return FROZEN, None, None
        raise NotRepresentable("the parameter occurs on the left")
    if isinstance(f, Imp) and alpha_eq(f.rhs, a):
        c = _undneg(f, a)
        if c is not None:
            return DNEG, side, c
        c = untranslate(f.lhs, a)
        if c is not None:
            return NEG, "r" if side == "l" else "l", c
    c = untranslate(f, a)
    if c is None:
        from .parser import print_prop
        raise NotRepresentable(f"{print_prop(f)} is not a translate")
    return PLAIN, side, c


@dataclass(frozen=True)
class Entry:
    side: str          # classical side
    index: int         # position in the classical sequent
    int_side: str
    int_index: int
    shape: str


@dataclass(frozen=True)
class Representation:
    """Correspondence between the formulas of a classical sequent and those
    of an intuitionistic one.  Left classical formulas appear as ``c^a`` or
    ``(c^a => a) => a`` on the left, or ``c^a => a`` on the right; right
    ones as ``c^a => a`` on the left, or ``c^a`` / ``(c^a => a) => a`` on the
    right.  A right-hand ``a`` stands for nothing."""

    a: Prop
    classical: Sequent
    intuitionistic: Sequent
    entries: tuple[Entry, ...]

    @staticmethod
    def induced(s: Sequent, a: Prop) -> Representation:
        left: list[Prop] = []
        right: list[Prop] = []
        entries = []
        for int_side, props in (("l", s.left), ("r", s.right)):
            for j, f in enumerate(props):
                shape, side, c = classify(f, int_side, a)
                if shape == FROZEN:
                    continue
                target = left if side == "l" else right
                entries.append(Entry(side, len(target), int_side, j, shape))
                target.append(c)
        return Representation(a, seq(left, right), s, tuple(entries))

    def check(self) -> list[str]:
        """Problems with the correspondence (empty when valid)."""
        problems = []
        if len(self.intuitionistic.right) > 1:
            problems.append("more than one formula on the intuitionistic right")
        covered = {(e.int_side, e.int_index) for e in self.entries}
        seen = {(e.side, e.index) for e in self.entries}
        if len(covered) != len(self.entries) or len(seen) != len(self.entries):
            problems.append("not a bijection")
        if len(self.entries) != len(self.classical.left) + len(self.classical.right):
            problems.append("some classical formula is not represented")
        for j, f in enumerate(self.intuitionistic.right):
            if ("r", j) not in covered and not alpha_eq(f, self.a):
                problems.append(f"right formula {j} is not represented")
        for j in range(len(self.intuitionistic.left)):
            if ("l", j) not in covered:
                problems.append(f"left formula {j} is not represented")
        allowed = {("l", "l"): (PLAIN, DNEG), ("l", "r"): (NEG,), ("r", "l"): (NEG,), ("r", "r"): (PLAIN, DNEG)}
        for e in self.entries:
            if e.shape not in allowed[(e.side, e.int_side)]:
                problems.append(f"shape {e.shape} not allowed for entry {e}")
                continue
            c = self.classical.side(e.side)[e.index]
            f = self.intuitionistic.side(e.int_side)[e.int_index]
            tc = _tr(c, self.a)
            want = {PLAIN: tc, DNEG: dneg(tc, self.a), NEG: Imp(tc, self.a)}[e.shape]
            if not alpha_eq(f, want):
                problems.append(f"entry {e} does not match its shape")
        return problems

    def to_json(self) -> dict:
        from .syntax import prop_to_json
        return {
            "a": prop_to_json(self.a),
            "classical": {"left": [prop_to_json(x) for x in self.classical.left],
                          "right": [prop_to_json(x) for x in self.classical.right]},
            "intuitionistic": {"left": [prop_to_json(x) for x in self.intuitionistic.left],
                               "right": [prop_to_json(x) for x in self.intuitionistic.right]},
            "entries": [[e.side, e.index, e.int_side, e.int_index, e.shape] for e in self.entries],
        }

    @staticmethod
    def from_json(d: dict) -> Representation:
        from .sequent import _prop_in

        def s(x):
            return seq([_prop_in(p) for p in x.get("left", [])], [_prop_in(p) for p in x.get("right", [])])

        return Representation(_prop_in(d["a"]), s(d["classical"]), s(d["intuitionistic"]),
                              tuple(Entry(*e) for e in d["entries"]))


def forward_representation(classical: Sequent, a: Prop) -> Representation:
    """How the conclusion of :func:`translate_clas_to_int` represents its
    input: left formulas plain, right ones negated on the left."""
    left = [_tr(c, a) for c in classical.left] + [Imp(_tr(c, a), a) for c in classical.right]
    entries = [Entry("l", i, "l", i, PLAIN) for i in range(len(classical.left))]
    entries += [Entry("r", i, "l", len(classical.left) + i, NEG) for i in range(len(classical.right))]
    return Representation(a, classical, seq(left, [a]), tuple(entries))


# ---------------------------------------------------------------------------
# Intuitionistic to classical


def translate_int_to_clas(proof: Proof, rep: Representation, a: Prop, R: RewriteSystem,
                          fuel: int = DEFAULT_FUEL) -> Proof:
    """Cut-free classical proof of the sequent ``rep`` represents."""
    if not is_cut_free(proof):
        raise ProofError("the intuitionistic proof must be cut-free")
    if not alpha_eq(rep.a, a):
        raise ProofError("representation built for another parameter")
    problems = rep.check()
    if problems:
        raise NotRepresentable("; ".join(problems))
    if not rep.intuitionistic.same(proof.concl):
        raise NotRepresentable("the representation does not describe the proof's conclusion")
    out = _Backward(a, R, fuel).run(proof, "root")
    return _reconcile(out, rep.classical, R, fuel)


class _Backward:
    def __init__(self, a: Prop, R: RewriteSystem, fuel: int):
        self.A, self.R, self.fuel = a, R, fuel

    def decode(self, s: Sequent) -> Sequent:
        return Representation.induced(s, self.A).classical

    def cls(self, f: Prop, side: str) -> tuple[str, Optional[str], Optional[Prop]]:
        return classify(f, side, self.A)

    def comp(self, f: Prop, side: str) -> Prop:
        shape, cside, c = self.cls(f, side)
        if cside != side:
            raise NotRepresentable("rule component changes side")
        return c

    def run(self, node: Proof, path: str) -> Proof:
        r, side, A = node.rule, node.side, self.A
        prem = node.premises
        target = self.decode(node.concl)
        if side == "r" and r not in STRUCTURAL and alpha_eq(node.principal, A):
            raise SideConditionViolated(path, f"{r} applied to the frozen parameter")
        if r == "cut":
            raise ProofError(f"{path}: cut in a proof assumed cut-free")
        if r == "axiom":
            if len(target.left) != 1 or len(target.right) != 1:
                raise NotRepresentable(f"{path}: axiom does not represent a classical axiom")
            return axiom(target.left[0], target.right[0])
        if r in ("weak-l", "weak-r"):
            return _reconcile(self.run(prem[0], path + ".0"), target, self.R, self.fuel)
        shape, cside, c = self.cls(node.principal, side)
        if r in ("contr-l", "contr-r"):
            b1 = self.cls(node.a, side)[2]
            b2 = self.cls(node.b, side)[2]
            q = self.run(prem[0], path + ".0")
            return (contr_l if cside == "l" else contr_r)(q, b1, b2, c)
        if shape in (NEG, DNEG):
            if r == "imp-r":
                q = self.run(prem[0], path + ".0")
            elif r == "imp-l":
                q = self.run(prem[1], path + ".1")
            else:
                raise NotRepresentable(f"{path}: {r} on a wrapper formula")
            return _reconcile(q, target, self.R, self.fuel)
        if r == "bot-l":
            return bot_l(c)
        if r == "top-r":
            return top_r(c)
        sub = [self.run(q, f"{path}.{i}") for i, q in enumerate(prem)]
        if r in ("forall-l", "forall-r", "exists-l", "exists-r"):
            body = self.comp(node.a, side)
            if r == "forall-l":
                return forall_l(sub[0], body, node.var, node.term, c)
            if r == "exists-r":
                return exists_r(sub[0], body, node.var, node.term, c)
            return (forall_r if r == "forall-r" else exists_l)(sub[0], body, node.var, c)
        ca, cb = self.comp(node.a, side), self.comp(node.b, side)
        if r == "and-l":
            return and_l(sub[0], ca, cb, c)
        if r == "and-r":
            return and_r(sub[0], _reconcile(sub[1], _swap_principal(sub[0].concl, "r", ca, cb), self.R, self.fuel), ca, cb, c)
        if r == "or-l":
            return or_l(sub[0], _reconcile(sub[1], _swap_principal(sub[0].concl, "l", ca, cb), self.R, self.fuel), ca, cb, c)
        if r == "or-r1":
            return or_r(weak_r(sub[0], cb), ca, cb, c)
        if r == "or-r2":
            return or_r(weak_r(sub[0], ca), ca, cb, c)
        if r == "imp-l":
            want = seq(_drop(sub[0].concl.left, cb), (ca,) + sub[0].concl.right)
            return imp_l(sub[0], _reconcile(sub[1], want, self.R, self.fuel), ca, cb, c)
        if r == "imp-r":
            return imp_r(sub[0], ca, cb, c)
        raise ProofError(f"{path}: unsupported rule {r}")


def _drop(props, f):
    from .sequent import _remove
    return _remove(props, f)


def _swap_principal(s: Sequent, side: str, old: Prop, new: Prop) -> Sequent:
    if side == "l":
        return seq(_drop(s.left, old) + (new,), s.right)
    return seq(s.left, _drop(s.right, old) + (new,))


def _reconcile(p: Proof, target: Sequent, R: RewriteSystem, fuel: int) -> Proof:
    """Turn ``p`` into a proof of ``target`` with cut-free steps: formulas
    that differ from their target only up to congruence are converted by a
    weakening followed by a contraction, missing ones are weakened in."""
    for side in ("l", "r"):
        extra = _mkey(p.concl.side(side)) - _mkey(target.side(side))
        missing = _mkey(target.side(side)) - _mkey(p.concl.side(side))
        if not extra:
            continue
        have = [f for f in p.concl.side(side) if extra[alpha_key(f)] > 0]
        want = [f for f in target.side(side) if missing[alpha_key(f)] > 0]
        for old in _dedupe(have, extra):
            new = next((w for w in want if congruent(old, w, R, fuel) is Tri.YES), None)
            if new is None:
                raise ProofError(f"cannot turn {p.concl} into {target}")
            want.remove(new)
            if side == "l":
                p = contr_l(weak_l(p, old), old, old, new)
            else:
                p = contr_r(weak_r(p, old), old, old, new)
    return weaken_to(p, target)


def _dedupe(props, counts):
    counts = dict(counts)
    out = []
    for f in props:
        k = alpha_key(f)
        if counts.get(k, 0) > 0:
            counts[k] -= 1
            out.append(f)
    return out
