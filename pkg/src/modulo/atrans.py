"""Syntactic A-translation of propositions and rewrite systems."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .rewrite import DEFAULT_FUEL, RewriteRule, RewriteSystem, reducts, validate_orthogonal
from .syntax import (
    BINARY, BOT, QUANTIFIERS, Atom, Bot, Imp, Prop, Top, alpha_key, bound_vars,
    free_vars, is_unbound,
)
from .verdict import Verdict


class UnboundViolation(ValueError):
    pass


@dataclass(frozen=True)
class TranslationContext:
    """The translation parameter.  Closed by default; ``allow_open`` only
    requires it to be unbound in each translated proposition."""

    a: Prop
    allow_open: bool = False

    def __post_init__(self):
        if not self.allow_open and free_vars(self.a):
            raise UnboundViolation(f"parameter has free variables {sorted(free_vars(self.a))}")

    def check(self, b: Prop):
        if not is_unbound(self.a, b):
            clash = free_vars(self.a) & bound_vars(b)
            raise UnboundViolation(f"free variables {sorted(clash)} of the parameter are bound in the translated proposition")


def _ctx(a) -> TranslationContext:
    return a if isinstance(a, TranslationContext) else TranslationContext(a)


def dneg(x: Prop, a: Prop) -> Prop:
    """``x => a => a``, i.e. ``(x => a) => a``."""
    return Imp(Imp(x, a), a)


def atrans_prop(b: Prop, ctx) -> Prop:
    ctx = _ctx(ctx)
    ctx.check(b)
    return _tr(b, ctx.a)


def _tr(b: Prop, a: Prop) -> Prop:
    if isinstance(b, (Atom, Top, Bot)):
        return b
    if isinstance(b, BINARY):
        return type(b)(dneg(_tr(b.lhs, a), a), dneg(_tr(b.rhs, a), a))
    if isinstance(b, QUANTIFIERS):
        return type(b)(b.var, dneg(_tr(b.body, a), a))
    raise TypeError(b)


def atrans_system(R: RewriteSystem, ctx) -> RewriteSystem:
    ctx = _ctx(ctx)
    return validate_orthogonal(RewriteRule(r.head, r.params, atrans_prop(r.rhs, ctx)) for r in R.rules)


def kolmogorov(b: Prop) -> Prop:
    """Kolmogorov's double-negation translation, ``((b^bot) => bot) => bot``."""
    return dneg(_tr(b, BOT), BOT)


def check_translation_simulation(b: Prop, R: RewriteSystem, ctx, fuel: int = DEFAULT_FUEL) -> Verdict:
    """Check that every one-step reduct ``c`` of ``b`` under ``R`` has its
    translate reachable from the translate of ``b`` under the translated
    system, within ``fuel`` explored propositions."""
    ctx = _ctx(ctx)
    RA = atrans_system(R, ctx)
    start = atrans_prop(b, ctx)
    verdict = Verdict()
    for c in reducts(b, R):
        target = alpha_key(atrans_prop(c, ctx))
        found, exhausted = _reachable(start, target, RA, fuel)
        if not found:
            from .parser import print_prop
            msg = f"translate of reduct {print_prop(c)} not reached"
            if exhausted:
                verdict.unknown("simulation", msg + " within fuel")
            else:
                verdict.fail("simulation", msg)
    return verdict


def _reachable(start: Prop, target: tuple, R: RewriteSystem, fuel: int) -> tuple[bool, bool]:
    seen = {alpha_key(start)}
    queue = deque([start])
    explored = 0
    while queue:
        if explored >= fuel:
            return False, True
        p = queue.popleft()
        explored += 1
        for q in reducts(p, R):
            k = alpha_key(q)
            if k == target:
                return True, False
            if k not in seen:
                seen.add(k)
                queue.append(q)
    return False, False
