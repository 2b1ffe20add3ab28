"""Proposition rewrite systems and the congruence they generate.

Every rule rewrites an atom ``P(x1, ..., xn)`` with pairwise distinct
parameters, and there is at most one rule per predicate.  Such systems have
no critical pairs, hence are confluent even when they do not terminate.
That is what makes :func:`congruent` work by joinability: two propositions
are congruent iff they have a common reduct.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Union

from .parser import ParseError, parse_prop
from .syntax import (
    BINARY, QUANTIFIERS, Atom, Prop, Signature, Var, alpha_eq, alpha_key,
    atoms, fresh_name, free_vars, prop_from_json, prop_to_json, signature_of,
    substitute, substitute_many, symbols,
)

DEFAULT_FUEL = int(os.environ.get("MODULO_WORKBENCH_FUEL", 10_000))
# A provably divergent normalization stops after this many steps.
DIVERGENT_STEP_CAP = 256


class RewriteError(ValueError):
    pass


class DuplicateHead(RewriteError):
    def __init__(self, symbol: str):
        self.symbol = symbol
        super().__init__(f"two rules rewrite predicate {symbol!r}")


class NonLinearParams(RewriteError):
    def __init__(self, symbol: str, params):
        self.symbol = symbol
        super().__init__(f"parameters of {symbol!r} are not pairwise distinct: {list(params)}")


class FreeVarEscape(RewriteError):
    def __init__(self, symbol: str, escaped):
        self.symbol = symbol
        self.escaped = set(escaped)
        super().__init__(f"right-hand side of {symbol!r} has free variables {sorted(escaped)} not among its parameters")


@dataclass(frozen=True)
class RewriteRule:
    head: str
    params: tuple[str, ...]
    rhs: Prop

    @property
    def lhs(self) -> Atom:
        return Atom(self.head, tuple(Var(x) for x in self.params))

    def instantiate(self, a: Atom) -> Prop:
        return substitute_many(self.rhs, dict(zip(self.params, a.args)))

    def __str__(self) -> str:
        from .parser import print_prop
        return f"{print_prop(self.lhs)} -> {print_prop(self.rhs)}"


@dataclass(frozen=True)
class RewriteSystem:
    rules: tuple[RewriteRule, ...] = ()

    def __post_init__(self):
        seen = set()
        for r in self.rules:
            if r.head in seen:
                raise DuplicateHead(r.head)
            seen.add(r.head)
            if len(set(r.params)) != len(r.params):
                raise NonLinearParams(r.head, r.params)
            escaped = free_vars(r.rhs) - set(r.params)
            if escaped:
                raise FreeVarEscape(r.head, escaped)

    @cached_property
    def by_head(self) -> dict[str, RewriteRule]:
        return {r.head: r for r in self.rules}

    @cached_property
    def symbols(self) -> set[str]:
        out = set()
        for r in self.rules:
            out.add(r.head)
            out |= symbols(r.rhs)
        return out

    @cached_property
    def looping_heads(self) -> frozenset[str]:
        """Heads from which some reduction never ends.

        Every atom with a defined head is a redex, so a head loops iff it
        reaches a cycle of the head dependency graph.
        """
        deps = {r.head: {a.pred for a in atoms(r.rhs) if a.pred in self.by_head} for r in self.rules}
        looping: set[str] = set()
        for h in deps:
            # h loops iff some head reachable from h (h included) reaches itself
            reach = _reachable(deps, h)
            if any(g in _reachable(deps, g, strict=True) for g in reach | {h}):
                looping.add(h)
        return frozenset(looping)

    @property
    def terminating(self) -> bool:
        return not self.looping_heads

    def signature(self) -> Signature:
        sig = Signature(predicates={r.head: len(r.params) for r in self.rules})
        for r in self.rules:
            sig = sig.merge(signature_of(r.rhs))
        return sig

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


def _reachable(deps: dict[str, set[str]], start: str, strict: bool = False) -> set[str]:
    seen: set[str] = set()
    stack = list(deps.get(start, ()))
    while stack:
        h = stack.pop()
        if h in seen:
            continue
        seen.add(h)
        stack.extend(deps.get(h, ()))
    if not strict:
        seen.add(start)
    return seen


def validate_orthogonal(rules: Iterable[RewriteRule]) -> RewriteSystem:
    return RewriteSystem(tuple(rules))


def rule(lhs: str, rhs: str, sig: Optional[Signature] = None) -> RewriteRule:
    """Build a rule from concrete syntax, e.g. ``rule("P(x)", "Q(x) => Q(x)")``."""
    head = parse_prop(lhs)
    if not isinstance(head, Atom):
        raise RewriteError(f"left-hand side {lhs!r} is not an atom")
    params = []
    for t in head.args:
        if not isinstance(t, Var):
            raise RewriteError(f"left-hand side {lhs!r} must have variable arguments")
        params.append(t.name)
    return RewriteRule(head.pred, tuple(params), parse_prop(rhs, sig))


def system(*pairs: tuple[str, str], sig: Optional[Signature] = None) -> RewriteSystem:
    return validate_orthogonal(rule(l, r, sig) for l, r in pairs)


# ---------------------------------------------------------------------------
# One-step rewriting


def reducts(p: Prop, R: RewriteSystem) -> Iterator[Prop]:
    """All one-step reducts of ``p``, leftmost redex first."""
    if isinstance(p, Atom):
        r = R.by_head.get(p.pred)
        if r is not None:
            yield r.instantiate(p)
    elif isinstance(p, BINARY):
        for l in reducts(p.lhs, R):
            yield type(p)(l, p.rhs)
        for r in reducts(p.rhs, R):
            yield type(p)(p.lhs, r)
    elif isinstance(p, QUANTIFIERS):
        for b in reducts(p.body, R):
            yield type(p)(p.var, b)


def rewrite_step(p: Prop, R: RewriteSystem) -> Optional[Prop]:
    """Contract the leftmost-outermost redex; ``None`` when there is none."""
    return next(reducts(p, R), None)


def diverges(p: Prop, R: RewriteSystem) -> bool:
    """True iff ``p`` has no normal form."""
    loop = R.looping_heads
    return bool(loop) and any(a.pred in loop for a in atoms(p))


@dataclass(frozen=True)
class Normal:
    prop: Prop
    steps: int


@dataclass(frozen=True)
class FuelExhausted:
    prop: Prop
    steps: int
    divergent: bool = False


NormalizeResult = Union[Normal, FuelExhausted]


def normalize(p: Prop, R: RewriteSystem, fuel: int = DEFAULT_FUEL) -> NormalizeResult:
    """Leftmost-outermost normalization with a step budget.

    Inputs with no normal form stop early, after ``DIVERGENT_STEP_CAP``
    steps, with ``divergent=True``.
    """
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    divergent = diverges(p, R)
    limit = min(fuel, DIVERGENT_STEP_CAP) if divergent else fuel
    steps = 0
    while True:
        nxt = rewrite_step(p, R)
        if nxt is None:
            return Normal(p, steps)
        if steps >= limit:
            return FuelExhausted(p, steps, divergent)
        p = nxt
        steps += 1


# ---------------------------------------------------------------------------
# Congruence


class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __bool__(self):
        return self is Tri.YES


def _root_chain(p: Prop, R: RewriteSystem, budget: list[int]) -> tuple[list[Prop], str]:
    """Unfold ``p`` at the root while it is a redex.

    Returns the chain and how it ended: ``"settled"`` (no root redex left),
    ``"cycle"`` (the atoms repeat) or ``"fuel"``.
    """
    chain = [p]
    seen = {alpha_key(p)}
    while isinstance(p, Atom) and p.pred in R.by_head:
        if budget[0] <= 0:
            return chain, "fuel"
        budget[0] -= 1
        p = R.by_head[p.pred].instantiate(p)
        k = alpha_key(p)
        if k in seen:
            return chain, "cycle"
        seen.add(k)
        chain.append(p)
    return chain, "settled"


def head_normalize(p: Prop, R: RewriteSystem, fuel: int = DEFAULT_FUEL) -> Optional[Prop]:
    """Unfold the root until it is a connective or an undefined atom."""
    chain, status = _root_chain(p, R, [fuel])
    return chain[-1] if status == "settled" else None


def _join(p: Prop, q: Prop, R: RewriteSystem, budget: list[int]) -> Tri:
    if alpha_eq(p, q):
        return Tri.YES
    pc, ps = _root_chain(p, R, budget)
    qc, qs = _root_chain(q, R, budget)
    pkeys = {alpha_key(x) for x in pc}
    if any(alpha_key(x) in pkeys for x in qc):
        return Tri.YES
    if "fuel" in (ps, qs):
        return Tri.UNKNOWN
    if "cycle" in (ps, qs):
        return Tri.NO
    p, q = pc[-1], qc[-1]
    if type(p) is not type(q) or isinstance(p, Atom):
        return Tri.NO
    if isinstance(p, BINARY):
        left = _join(p.lhs, q.lhs, R, budget)
        if left is Tri.NO:
            return Tri.NO
        right = _join(p.rhs, q.rhs, R, budget)
        if right is Tri.NO:
            return Tri.NO
        return Tri.YES if left is right is Tri.YES else Tri.UNKNOWN
    if isinstance(p, QUANTIFIERS):
        z = fresh_name("z", free_vars(p) | free_vars(q) | {p.var, q.var})
        return _join(substitute(p.body, p.var, Var(z)), substitute(q.body, q.var, Var(z)), R, budget)
    return Tri.YES  # top/top, bot/bot


def congruent(p: Prop, q: Prop, R: RewriteSystem, fuel: int = DEFAULT_FUEL) -> Tri:
    """Decide ``p ≡ q`` by searching for a common reduct.

    ``fuel`` bounds the number of root unfoldings.  YES and NO are
    definitive because the system is confluent; UNKNOWN means the budget
    ran out first.
    """
    return _join(p, q, R, [fuel])


def r_compatible(a: Prop, R: RewriteSystem) -> bool:
    return not (symbols(a) & R.symbols)


# ---------------------------------------------------------------------------
# Files


def parse_system(text: str, sig: Optional[Signature] = None) -> RewriteSystem:
    """Read the line format ``P(x, y) -> <prop>``; ``#`` starts a comment.

    A line ``functions: c/0, f/1`` declares function symbols for the rules
    that follow.
    """
    rules = []
    funs: dict[str, int] = dict(sig.functions) if sig else {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("functions:"):
            for decl in line[len("functions:"):].split(","):
                decl = decl.strip()
                if decl:
                    name, k = decl.split("/")
                    funs[name.strip()] = int(k)
            continue
        if "->" not in line:
            raise RewriteError(f"line {lineno}: expected 'P(x) -> proposition'")
        lhs, rhs = line.split("->", 1)
        rhs_sig = _rhs_signature(rhs, funs)
        try:
            rules.append(rule(lhs.strip(), rhs.strip(), rhs_sig))
        except ParseError as e:
            raise RewriteError(f"line {lineno}: {e}") from e
    return validate_orthogonal(rules)


def _rhs_signature(rhs: str, funs: dict[str, int]) -> Optional[Signature]:
    if not funs:
        return None
    preds = signature_of(parse_prop(rhs)).predicates
    return Signature(dict(funs), {p: k for p, k in preds.items() if p not in funs})


def format_system(R: RewriteSystem) -> str:
    return "".join(f"{r}\n" for r in R.rules)


def system_to_json(R: RewriteSystem) -> dict:
    return {"rules": [{"head": r.head, "params": list(r.params), "rhs": prop_to_json(r.rhs)} for r in R.rules]}


def system_from_json(d: dict) -> RewriteSystem:
    return validate_orthogonal(
        RewriteRule(r["head"], tuple(r["params"]), prop_from_json(r["rhs"]) if isinstance(r["rhs"], dict) else parse_prop(r["rhs"]))
        for r in d["rules"]
    )


def load_system(path: str) -> RewriteSystem:
    with open(path) as f:
        text = f.read()
    if path.endswith(".json"):
        return system_from_json(json.loads(text))
    return parse_system(text)
