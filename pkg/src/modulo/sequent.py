"""Sequent calculus modulo: proof trees, builders and checkers.

A node stores its conclusion, the index of the principal formula on the
side named by the rule suffix, and the rule's component formulas: ``a`` and
``b`` are the ``A`` and ``B`` of a connective rule (or ``B1``/``B2`` of a
contraction, or the two cut formulas); quantifier rules use ``a`` for the
body, ``var`` for the bound variable and ``term`` for the witness.  The
checker verifies the congruence between the principal formula and the
connective rebuilt from its components.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .rewrite import DEFAULT_FUEL, RewriteSystem, Tri, congruent
from .syntax import (
    BOT, TOP, And, Exists, Forall, Imp, Or, Prop, Term, alpha_eq, alpha_key,
    free_vars, prop_from_json, prop_to_json, substitute, term_from_json,
    term_to_json,
)
from .verdict import Verdict

CLASSICAL = "classical"
INTUITIONISTIC = "intuitionistic"

LEFT_RULES = {"and-l", "or-l", "imp-l", "bot-l", "forall-l", "exists-l", "contr-l", "weak-l"}
RIGHT_RULES = {"and-r", "or-r", "or-r1", "or-r2", "imp-r", "top-r", "forall-r", "exists-r", "contr-r", "weak-r"}
STRUCTURAL = {"contr-l", "contr-r", "weak-l", "weak-r"}
RULES = LEFT_RULES | RIGHT_RULES | {"axiom", "cut"}

_ARITY = {"axiom": 0, "bot-l": 0, "top-r": 0, "cut": 2, "and-r": 2, "or-l": 2, "imp-l": 2}


class ProofError(ValueError):
    pass


class FlavorViolation(ProofError):
    pass


def _mkey(props: Iterable[Prop]) -> Counter:
    return Counter(alpha_key(p) for p in props)


@dataclass(frozen=True)
class Sequent:
    left: tuple[Prop, ...] = ()
    right: tuple[Prop, ...] = ()

    def same(self, other: Sequent) -> bool:
        """Equality as a pair of multisets up to alpha-equivalence."""
        return _mkey(self.left) == _mkey(other.left) and _mkey(self.right) == _mkey(other.right)

    def side(self, name: str) -> tuple[Prop, ...]:
        return self.left if name == "l" else self.right

    def free_vars(self) -> set[str]:
        out: set[str] = set()
        for p in self.left + self.right:
            out |= free_vars(p)
        return out

    def __str__(self):
        from .parser import print_prop
        return f"{', '.join(map(print_prop, self.left))} |- {', '.join(map(print_prop, self.right))}".strip()


def seq(left: Sequence[Prop] = (), right: Sequence[Prop] = ()) -> Sequent:
    return Sequent(tuple(left), tuple(right))


@dataclass(frozen=True)
class Proof:
    rule: str
    concl: Sequent
    premises: tuple[Proof, ...] = ()
    pos: int = 0
    a: Optional[Prop] = None
    b: Optional[Prop] = None
    var: Optional[str] = None
    term: Optional[Term] = None

    @property
    def side(self) -> Optional[str]:
        if self.rule in LEFT_RULES:
            return "l"
        if self.rule in RIGHT_RULES:
            return "r"
        return None

    @property
    def principal(self) -> Optional[Prop]:
        s = self.side
        return self.concl.side(s)[self.pos] if s else None

    def nodes(self):
        stack = [self]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(n.premises))

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def __str__(self):
        return format_proof(self)


def is_cut_free(p: Proof) -> bool:
    return all(n.rule != "cut" for n in p.nodes())


# ---------------------------------------------------------------------------
# Builders.  They compute the conclusion from the premises; the principal
# formula is appended at the end of its side.


def _remove(props: Sequence[Prop], target: Prop) -> tuple[Prop, ...]:
    key = alpha_key(target)
    for i, p in enumerate(props):
        if alpha_key(p) == key:
            return tuple(props[:i]) + tuple(props[i + 1:])
    from .parser import print_prop
    raise ProofError(f"{print_prop(target)} does not occur in the premise")


def _left(prem: Proof, drop: Sequence[Prop], c: Prop, rule: str, **kw) -> Proof:
    ctx = prem.concl.left
    for d in drop:
        ctx = _remove(ctx, d)
    return Proof(rule, Sequent(ctx + (c,), prem.concl.right), (prem,), len(ctx), **kw)


def _right(prem: Proof, drop: Sequence[Prop], c: Prop, rule: str, drop_left: Sequence[Prop] = (), **kw) -> Proof:
    ctx = prem.concl.right
    for d in drop:
        ctx = _remove(ctx, d)
    left = prem.concl.left
    for d in drop_left:
        left = _remove(left, d)
    return Proof(rule, Sequent(left, ctx + (c,)), (prem,), len(ctx), **kw)


def axiom(a: Prop, b: Optional[Prop] = None) -> Proof:
    return Proof("axiom", seq([a], [b if b is not None else a]))


def bot_l(c: Prop = BOT) -> Proof:
    return Proof("bot-l", seq([c], []))


def top_r(c: Prop = TOP) -> Proof:
    return Proof("top-r", seq([], [c]))


def weak_l(p: Proof, c: Prop) -> Proof:
    return _left(p, (), c, "weak-l")


def weak_r(p: Proof, c: Prop) -> Proof:
    return _right(p, (), c, "weak-r")


def contr_l(p: Proof, b1: Prop, b2: Optional[Prop] = None, c: Optional[Prop] = None) -> Proof:
    b2 = b1 if b2 is None else b2
    return _left(p, (b1, b2), c if c is not None else b1, "contr-l", a=b1, b=b2)


def contr_r(p: Proof, b1: Prop, b2: Optional[Prop] = None, c: Optional[Prop] = None) -> Proof:
    b2 = b1 if b2 is None else b2
    return _right(p, (b1, b2), c if c is not None else b1, "contr-r", a=b1, b=b2)


def and_l(p: Proof, a: Prop, b: Prop, c: Optional[Prop] = None) -> Proof:
    return _left(p, (a, b), c if c is not None else And(a, b), "and-l", a=a, b=b)


def and_r(p0: Proof, p1: Proof, a: Prop, b: Prop, c: Optional[Prop] = None) -> Proof:
    ctx = _remove(p0.concl.right, a)
    return Proof("and-r", Sequent(p0.concl.left, ctx + (c if c is not None else And(a, b),)), (p0, p1), len(ctx), a=a, b=b)


def or_l(p0: Proof, p1: Proof, a: Prop, b: Prop, c: Optional[Prop] = None) -> Proof:
    ctx = _remove(p0.concl.left, a)
    return Proof("or-l", Sequent(ctx + (c if c is not None else Or(a, b),), p0.concl.right), (p0, p1), len(ctx), a=a, b=b)


def or_r(p: Proof, a: Prop, b: Prop, c: Optional[Prop] = None) -> Proof:
    return _right(p, (a, b), c if c is not None else Or(a, b), "or-r", a=a, b=b)


def or_r1(p: Proof, a: Prop, b: Prop, c: Optional[Prop] = None) -> Proof:
    return _right(p, (a,), c if c is not None else Or(a, b), "or-r1", a=a, b=b)


def or_r2(p: Proof, a: Prop, b: Prop, c: Optional[Prop] = None) -> Proof:
    return _right(p, (b,), c if c is not None else Or(a, b), "or-r2", a=a, b=b)


def imp_l(p0: Proof, p1: Proof, a: Prop, b: Prop, c: Optional[Prop] = None) -> Proof:
    """``p0`` proves ``G, b |- D`` and ``p1`` proves ``G |- a, D`` (or
    ``G |- a`` intuitionistically)."""
    ctx = _remove(p0.concl.left, b)
    return Proof("imp-l", Sequent(ctx + (c if c is not None else Imp(a, b),), p0.concl.right), (p0, p1), len(ctx), a=a, b=b)


def imp_r(p: Proof, a: Prop, b: Prop, c: Optional[Prop] = None) -> Proof:
    return _right(p, (b,), c if c is not None else Imp(a, b), "imp-r", drop_left=(a,), a=a, b=b)


def forall_l(p: Proof, body: Prop, var: str, t: Term, c: Optional[Prop] = None) -> Proof:
    return _left(p, (substitute(body, var, t),), c if c is not None else Forall(var, body), "forall-l", a=body, var=var, term=t)


def forall_r(p: Proof, body: Prop, var: str, c: Optional[Prop] = None) -> Proof:
    return _right(p, (body,), c if c is not None else Forall(var, body), "forall-r", a=body, var=var)


def exists_l(p: Proof, body: Prop, var: str, c: Optional[Prop] = None) -> Proof:
    return _left(p, (body,), c if c is not None else Exists(var, body), "exists-l", a=body, var=var)


def exists_r(p: Proof, body: Prop, var: str, t: Term, c: Optional[Prop] = None) -> Proof:
    return _right(p, (substitute(body, var, t),), c if c is not None else Exists(var, body), "exists-r", a=body, var=var, term=t)


def cut(p0: Proof, p1: Proof, a: Prop, b: Optional[Prop] = None) -> Proof:
    """``p0`` proves ``G |- a, D`` and ``p1`` proves ``G, b |- D``."""
    b = a if b is None else b
    ctx = _remove(p1.concl.left, b)
    return Proof("cut", Sequent(ctx, p1.concl.right), (p0, p1), a=a, b=b)


def weaken_to(p: Proof, target: Sequent) -> Proof:
    """Add the formulas of ``target`` missing from ``p``'s conclusion by
    weakening.  Fails if ``p`` has something ``target`` lacks."""
    for side, weak in (("l", weak_l), ("r", weak_r)):
        have = _mkey(p.concl.side(side))
        want = _mkey(target.side(side))
        if have - want:
            raise ProofError(f"cannot weaken {p.concl} to {target}")
        missing = want - have
        for f in target.side(side):
            k = alpha_key(f)
            if missing[k] > 0:
                missing[k] -= 1
                p = weak(p, f)
    return p


# ---------------------------------------------------------------------------
# Checking


@dataclass
class _Checker:
    R: RewriteSystem
    flavor: str
    fuel: int
    frozen: Optional[Prop] = None
    verdict: Verdict = field(default_factory=Verdict)

    def cong(self, path: str, what: str, x: Prop, y: Prop) -> None:
        r = congruent(x, y, self.R, self.fuel)
        if r is Tri.NO:
            from .parser import print_prop
            self.verdict.fail(path, f"{what}: {print_prop(x)} is not congruent to {print_prop(y)}")
        elif r is Tri.UNKNOWN:
            from .parser import print_prop
            self.verdict.unknown(path, f"{what}: congruence of {print_prop(x)} and {print_prop(y)} undecided within fuel")

    def expect(self, path: str, i: int, node: Proof, left: Sequence[Prop], right: Sequence[Prop]) -> None:
        got = node.premises[i].concl
        want = seq(left, right)
        if not got.same(want):
            self.verdict.fail(path, f"premise {i} is {got} but the rule needs {want}")

    def run(self, node: Proof, path: str = "root") -> None:
        v = self.verdict
        rule = node.rule
        if rule not in RULES:
            v.fail(path, f"unknown rule {rule!r}")
            return
        if self.flavor == INTUITIONISTIC:
            if len(node.concl.right) > 1:
                v.fail(path, "FlavorViolation: more than one formula on the right")
                return
            if rule in ("or-r", "contr-r"):
                v.fail(path, f"FlavorViolation: {rule} is not an intuitionistic rule")
                return
        elif rule in ("or-r1", "or-r2"):
            v.fail(path, f"{rule} is only used in the intuitionistic calculus")
            return
        want = _ARITY.get(rule, 1)
        if len(node.premises) != want:
            v.fail(path, f"{rule} takes {want} premises, got {len(node.premises)}")
            return
        side = node.side
        if side is not None and not 0 <= node.pos < len(node.concl.side(side)):
            v.fail(path, f"principal position {node.pos} out of range")
            return
        if self.frozen is not None and side == "r" and rule not in STRUCTURAL and alpha_eq(node.principal, self.frozen):
            v.fail(path, f"{rule} applied to the frozen parameter")
        getattr(self, "rule_" + rule.replace("-", "_"))(node, path)
        for i, p in enumerate(node.premises):
            self.run(p, f"{path}.{i}")

    # context helpers
    def gamma(self, node: Proof) -> tuple[Prop, ...]:
        ls = node.concl.left
        return ls[:node.pos] + ls[node.pos + 1:] if node.side == "l" else ls

    def delta(self, node: Proof) -> tuple[Prop, ...]:
        rs = node.concl.right
        return rs[:node.pos] + rs[node.pos + 1:] if node.side == "r" else rs

    def need(self, path: str, node: Proof, *names: str) -> bool:
        missing = [n for n in names if getattr(node, n) is None]
        if missing:
            self.verdict.fail(path, f"{node.rule} needs {', '.join(missing)}")
            return False
        return True

    # identity group
    def rule_axiom(self, node, path):
        c = node.concl
        if len(c.left) != 1 or len(c.right) != 1:
            self.verdict.fail(path, "an axiom has exactly one formula on each side")
            return
        self.cong(path, "axiom", c.left[0], c.right[0])

    def rule_cut(self, node, path):
        if not self.need(path, node, "a", "b"):
            return
        g, d = node.concl.left, node.concl.right
        self.cong(path, "cut", node.a, node.b)
        self.expect(path, 0, node, g, (node.a,) if self.flavor == INTUITIONISTIC else (node.a,) + d)
        self.expect(path, 1, node, g + (node.b,), d)

    # logical group
    def rule_and_l(self, node, path):
        if self.need(path, node, "a", "b"):
            self.cong(path, "and-l", node.principal, And(node.a, node.b))
            self.expect(path, 0, node, self.gamma(node) + (node.a, node.b), node.concl.right)

    def rule_and_r(self, node, path):
        if self.need(path, node, "a", "b"):
            g, d = node.concl.left, self.delta(node)
            self.cong(path, "and-r", node.principal, And(node.a, node.b))
            self.expect(path, 0, node, g, (node.a,) + d)
            self.expect(path, 1, node, g, (node.b,) + d)

    def rule_or_l(self, node, path):
        if self.need(path, node, "a", "b"):
            g, d = self.gamma(node), node.concl.right
            self.cong(path, "or-l", node.principal, Or(node.a, node.b))
            self.expect(path, 0, node, g + (node.a,), d)
            self.expect(path, 1, node, g + (node.b,), d)

    def rule_or_r(self, node, path):
        if self.need(path, node, "a", "b"):
            self.cong(path, "or-r", node.principal, Or(node.a, node.b))
            self.expect(path, 0, node, node.concl.left, (node.a, node.b) + self.delta(node))

    def rule_or_r1(self, node, path):
        if self.need(path, node, "a", "b"):
            self.cong(path, "or-r1", node.principal, Or(node.a, node.b))
            self.expect(path, 0, node, node.concl.left, (node.a,))

    def rule_or_r2(self, node, path):
        if self.need(path, node, "a", "b"):
            self.cong(path, "or-r2", node.principal, Or(node.a, node.b))
            self.expect(path, 0, node, node.concl.left, (node.b,))

    def rule_imp_l(self, node, path):
        if self.need(path, node, "a", "b"):
            g, d = self.gamma(node), node.concl.right
            self.cong(path, "imp-l", node.principal, Imp(node.a, node.b))
            self.expect(path, 0, node, g + (node.b,), d)
            self.expect(path, 1, node, g, (node.a,) if self.flavor == INTUITIONISTIC else (node.a,) + d)

    def rule_imp_r(self, node, path):
        if self.need(path, node, "a", "b"):
            self.cong(path, "imp-r", node.principal, Imp(node.a, node.b))
            self.expect(path, 0, node, node.concl.left + (node.a,), (node.b,) + self.delta(node))

    def rule_bot_l(self, node, path):
        c = node.concl
        if len(c.left) != 1 or c.right:
            self.verdict.fail(path, "bot-l concludes a single left formula and nothing on the right")
            return
        self.cong(path, "bot-l", c.left[0], BOT)

    def rule_top_r(self, node, path):
        c = node.concl
        if c.left or len(c.right) != 1:
            self.verdict.fail(path, "top-r concludes a single right formula and nothing on the left")
            return
        self.cong(path, "top-r", c.right[0], TOP)

    def _fresh(self, node, path):
        if node.var in node.concl.free_vars():
            self.verdict.fail(path, f"eigenvariable {node.var} occurs free in the conclusion")

    def rule_forall_l(self, node, path):
        if self.need(path, node, "a", "var", "term"):
            self.cong(path, "forall-l", node.principal, Forall(node.var, node.a))
            self.expect(path, 0, node, self.gamma(node) + (substitute(node.a, node.var, node.term),), node.concl.right)

    def rule_forall_r(self, node, path):
        if self.need(path, node, "a", "var"):
            self.cong(path, "forall-r", node.principal, Forall(node.var, node.a))
            self._fresh(node, path)
            self.expect(path, 0, node, node.concl.left, (node.a,) + self.delta(node))

    def rule_exists_l(self, node, path):
        if self.need(path, node, "a", "var"):
            self.cong(path, "exists-l", node.principal, Exists(node.var, node.a))
            self._fresh(node, path)
            self.expect(path, 0, node, self.gamma(node) + (node.a,), node.concl.right)

    def rule_exists_r(self, node, path):
        if self.need(path, node, "a", "var", "term"):
            self.cong(path, "exists-r", node.principal, Exists(node.var, node.a))
            self.expect(path, 0, node, node.concl.left, (substitute(node.a, node.var, node.term),) + self.delta(node))

    # structural group
    def rule_contr_l(self, node, path):
        if self.need(path, node, "a", "b"):
            self.cong(path, "contr-l", node.principal, node.a)
            self.cong(path, "contr-l", node.principal, node.b)
            self.expect(path, 0, node, self.gamma(node) + (node.a, node.b), node.concl.right)

    def rule_contr_r(self, node, path):
        if self.need(path, node, "a", "b"):
            self.cong(path, "contr-r", node.principal, node.a)
            self.cong(path, "contr-r", node.principal, node.b)
            self.expect(path, 0, node, node.concl.left, (node.a, node.b) + self.delta(node))

    def rule_weak_l(self, node, path):
        self.expect(path, 0, node, self.gamma(node), node.concl.right)

    def rule_weak_r(self, node, path):
        self.expect(path, 0, node, node.concl.left, self.delta(node))


def check_classical(p: Proof, R: RewriteSystem, fuel: int = DEFAULT_FUEL) -> Verdict:
    c = _Checker(R, CLASSICAL, fuel)
    c.run(p)
    return c.verdict


def check_intuitionistic(p: Proof, R: RewriteSystem, fuel: int = DEFAULT_FUEL,
                         frozen: Optional[Prop] = None) -> Verdict:
    """With ``frozen`` set, a logical right rule whose principal formula is
    that proposition is rejected."""
    c = _Checker(R, INTUITIONISTIC, fuel, frozen)
    c.run(p)
    return c.verdict


def check(p: Proof, R: RewriteSystem, calculus: str = CLASSICAL, fuel: int = DEFAULT_FUEL) -> Verdict:
    if calculus == CLASSICAL:
        return check_classical(p, R, fuel)
    if calculus == INTUITIONISTIC:
        return check_intuitionistic(p, R, fuel)
    raise ValueError(f"unknown calculus {calculus!r}")


# ---------------------------------------------------------------------------
# Derived rules


def admissible_1(sub: Proof, c: Prop, a: Prop) -> Proof:
    """From ``G, c |- a`` build ``G, (c => a) => a |- a``."""
    g = _remove(sub.concl.left, c)
    base = _weaken_left(axiom(a), g)
    return imp_l(base, imp_r(sub, c, a), Imp(c, a), a)


def admissible_2(sub: Proof, a: Prop) -> Proof:
    """From ``G |- c`` build ``G, c => a |- a``."""
    if len(sub.concl.right) != 1:
        raise ProofError("admissible_2 needs a single right formula")
    c = sub.concl.right[0]
    base = _weaken_left(axiom(a), sub.concl.left)
    return imp_l(base, sub, c, a)


def _weaken_left(p: Proof, props: Iterable[Prop]) -> Proof:
    for f in props:
        p = weak_l(p, f)
    return p


# ---------------------------------------------------------------------------
# Printing and files


def format_proof(p: Proof, indent: int = 0) -> str:
    from .parser import print_prop
    extra = []
    if p.a is not None:
        extra.append(f"a={print_prop(p.a)}")
    if p.b is not None:
        extra.append(f"b={print_prop(p.b)}")
    if p.var is not None:
        extra.append(f"var={p.var}")
    if p.term is not None:
        extra.append(f"term={p.term}")
    head = f"{'  ' * indent}{p.rule}: {p.concl}" + (f"   [{'; '.join(extra)}]" if extra else "")
    return "\n".join([head] + [format_proof(q, indent + 1) for q in p.premises])


def proof_to_json(p: Proof) -> dict:
    d: dict = {
        "rule": p.rule,
        "concl": {"left": [prop_to_json(x) for x in p.concl.left], "right": [prop_to_json(x) for x in p.concl.right]},
    }
    if p.side is not None:
        d["pos"] = p.pos
    if p.a is not None:
        d["a"] = prop_to_json(p.a)
    if p.b is not None:
        d["b"] = prop_to_json(p.b)
    if p.var is not None:
        d["var"] = p.var
    if p.term is not None:
        d["term"] = term_to_json(p.term)
    if p.premises:
        d["premises"] = [proof_to_json(q) for q in p.premises]
    return d


def _prop_in(x) -> Prop:
    if isinstance(x, str):
        from .parser import parse_prop
        return parse_prop(x)
    return prop_from_json(x)


def _term_in(x) -> Term:
    if isinstance(x, str):
        from .parser import parse_term
        return parse_term(x)
    return term_from_json(x)


def proof_from_json(d: dict) -> Proof:
    """Propositions may be tagged objects or concrete syntax strings."""
    concl = d["concl"]
    return Proof(
        rule=d["rule"],
        concl=seq([_prop_in(x) for x in concl.get("left", [])], [_prop_in(x) for x in concl.get("right", [])]),
        premises=tuple(proof_from_json(q) for q in d.get("premises", [])),
        pos=d.get("pos", 0),
        a=_prop_in(d["a"]) if "a" in d else None,
        b=_prop_in(d["b"]) if "b" in d else None,
        var=d.get("var"),
        term=_term_in(d["term"]) if "term" in d else None,
    )


def load_proof(path: str) -> Proof:
    with open(path) as f:
        return proof_from_json(json.load(f))


def save_proof(p: Proof, path: str) -> None:
    with open(path, "w") as f:
        json.dump(proof_to_json(p), f, indent=1)
        f.write("\n")
