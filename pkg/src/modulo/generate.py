"""Seeded random propositions and assignments for property tests."""

from __future__ import annotations

import random
from typing import Sequence

from .syntax import (
    BOT, TOP, And, Atom, Exists, Fn, Forall, Imp, Or, Prop, Signature, Term,
    Var, free_vars,
)

VARS = ("x", "y", "z")


def random_term(rng: random.Random, functions: dict, variables: Sequence[str], depth: int = 2) -> Term:
    consts = [f for f, k in functions.items() if k == 0]
    compound = [f for f, k in functions.items() if k > 0]
    if depth > 0 and compound and rng.random() < 0.35:
        f = rng.choice(compound)
        return Fn(f, tuple(random_term(rng, functions, variables, depth - 1) for _ in range(functions[f])))
    if consts and (not variables or rng.random() < 0.3):
        return Fn(rng.choice(consts))
    if not variables:
        raise ValueError("no variables or constants to build a term from")
    return Var(rng.choice(variables))


def random_prop(rng: random.Random, sig: Signature, depth: int = 4,
                variables: Sequence[str] = VARS, quantifiers: bool = True) -> Prop:
    """A random proposition of height at most ``depth`` over ``sig``.

    Free variables are drawn from ``variables``; pair with
    :func:`random_assignment` to evaluate.
    """
    preds = sorted(sig.predicates.items())
    if depth <= 0 or rng.random() < 0.25:
        if preds and rng.random() < 0.8:
            p, k = rng.choice(preds)
            return Atom(p, tuple(random_term(rng, dict(sig.functions), variables) for _ in range(k)))
        return rng.choice((TOP, BOT))
    kinds = [Imp, And, Or] + ([Forall, Exists] if quantifiers and variables else [])
    kind = rng.choice(kinds)
    if kind in (Forall, Exists):
        return kind(rng.choice(variables), random_prop(rng, sig, depth - 1, variables, quantifiers))
    return kind(random_prop(rng, sig, depth - 1, variables, quantifiers),
                random_prop(rng, sig, depth - 1, variables, quantifiers))


def random_assignment(rng: random.Random, p: Prop, m: int) -> dict[str, int]:
    return {x: rng.randrange(m) for x in sorted(free_vars(p))}


# ---------------------------------------------------------------------------
# Random cut-free classical proofs


def _fold(c: Prop, R) -> Prop:
    """An atom whose rule unfolds to ``c``, when one exists."""
    from .syntax import alpha_key
    for r in R.rules:
        if not r.params and alpha_key(r.rhs) == alpha_key(c):
            return Atom(r.head)
    return c


def random_classical_proof(rng: random.Random, R, sig: Signature, steps: int = 8, depth: int = 2):
    """Build a cut-free classical proof bottom-up from axioms by applying
    ``steps`` random rules.  Connective rules sometimes present their
    principal formula as an atom that rewrites to it, exercising the
    congruence."""
    from itertools import islice

    from . import sequent as sq
    from .rewrite import reducts
    from .syntax import fresh_name, all_vars

    def leaf():
        roll = rng.random()
        if roll < 0.1:
            return sq.top_r()
        if roll < 0.15:
            return sq.bot_l()
        a = random_prop(rng, sig, depth, ("x",), quantifiers=False)
        options = list(islice(reducts(a, R), 3))
        b = rng.choice(options) if options and rng.random() < 0.5 else a
        return sq.axiom(a, b) if rng.random() < 0.5 else sq.axiom(b, a)

    def fold(c):
        return _fold(c, R) if rng.random() < 0.5 else c

    def unify(p0, p1, keep0, keep1):
        """Weaken ``p0`` and ``p1`` to share their contexts, ignoring the
        active formulas ``keep0``/``keep1`` = (side, formula)."""
        def ctx(p, keep):
            left, right = list(p.concl.left), list(p.concl.right)
            side, f = keep
            (left if side == "l" else right)[:] = sq._remove(left if side == "l" else right, f)
            return left, right
        l0, r0 = ctx(p0, keep0)
        l1, r1 = ctx(p1, keep1)
        left, right = l0 + l1, r0 + r1

        def target(keep):
            side, f = keep
            return sq.seq(left + [f], right) if side == "l" else sq.seq(left, [f] + right)
        return sq.weaken_to(p0, target(keep0)), sq.weaken_to(p1, target(keep1))

    p = leaf()
    for _ in range(steps):
        L, Rt = p.concl.left, p.concl.right
        moves = ["weak-l", "weak-r", "and-r", "or-l", "imp-l", "exists-r", "forall-l"]
        if len(L) >= 2:
            moves.append("and-l")
        if len(Rt) >= 2:
            moves.append("or-r")
        if L and Rt:
            moves += ["imp-r", "imp-r"]
        if L:
            moves += ["contr-l", "exists-l"]
        if Rt:
            moves += ["contr-r", "forall-r"]
        move = rng.choice(moves)
        if move == "weak-l":
            p = sq.weak_l(p, random_prop(rng, sig, 1, ("x",), quantifiers=False))
        elif move == "weak-r":
            p = sq.weak_r(p, random_prop(rng, sig, 1, ("x",), quantifiers=False))
        elif move == "and-l":
            a, b = rng.sample(list(L), 2)
            p = sq.and_l(p, a, b, fold(And(a, b)))
        elif move == "or-r":
            a, b = rng.sample(list(Rt), 2)
            p = sq.or_r(p, a, b, fold(Or(a, b)))
        elif move == "imp-r":
            a, b = rng.choice(L), rng.choice(Rt)
            p = sq.imp_r(p, a, b, fold(Imp(a, b)))
        elif move in ("and-r", "or-l", "imp-l"):
            q = leaf()
            side_p, side_q = {"and-r": ("r", "r"), "or-l": ("l", "l"), "imp-l": ("l", "r")}[move]
            fp = p.concl.side(side_p)
            fq = q.concl.side(side_q)
            if not fp or not fq:
                continue
            a, b = rng.choice(fp), rng.choice(fq)
            p0, p1 = unify(p, q, (side_p, a), (side_q, b))
            if move == "and-r":
                p = sq.and_r(p0, p1, a, b, fold(And(a, b)))
            elif move == "or-l":
                p = sq.or_l(p0, p1, a, b, fold(Or(a, b)))
            else:
                p = sq.imp_l(p0, p1, b, a, fold(Imp(b, a)))
        elif move == "contr-l":
            f = rng.choice(L)
            g = rng.choice(list(islice(reducts(f, R), 2)) or [f])
            p = sq.contr_l(sq.weak_l(p, g), f, g, f)
        elif move == "contr-r":
            f = rng.choice(Rt)
            g = rng.choice(list(islice(reducts(f, R), 2)) or [f])
            p = sq.contr_r(sq.weak_r(p, g), f, g, f)
        elif move in ("forall-r", "exists-l"):
            side = "r" if move == "forall-r" else "l"
            f = rng.choice(p.concl.side(side))
            rest = sq.seq(*(
                (sq._remove(L, f), Rt) if side == "l" else (L, sq._remove(Rt, f))
            ))
            candidates = sorted(free_vars(f) - rest.free_vars())
            var = rng.choice(candidates) if candidates else fresh_name("w", all_vars(f) | p.concl.free_vars())
            p = (sq.forall_r if side == "r" else sq.exists_l)(p, f, var)
        else:  # forall-l / exists-r: abstract a free variable of the formula
            side = "l" if move == "forall-l" else "r"
            fs = p.concl.side(side)
            if not fs:
                continue
            f = rng.choice(fs)
            fv = sorted(free_vars(f))
            x = fresh_name("u", all_vars(f) | p.concl.free_vars())
            if fv:
                y = rng.choice(fv)
                body, t = _abstract(f, y, x), Var(y)
            else:
                body, t = f, Var("x")
            p = (sq.forall_l if side == "l" else sq.exists_r)(p, body, x, t)
    return p


def _abstract(f: Prop, y: str, x: str) -> Prop:
    """``f`` with the free occurrences of ``y`` renamed to the fresh ``x``."""
    from .syntax import substitute
    return substitute(f, y, Var(x))
