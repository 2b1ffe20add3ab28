"""Algebra-valued structures, denotation and model search."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field, replace
from graphlib import TopologicalSorter
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .atrans import atrans_prop, atrans_system
from .pha import FinitePHA, a_translate, bundled, load_algebra, to_json as algebra_to_json
from .rewrite import RewriteSystem, _reachable, r_compatible
from .syntax import (
    BINARY, And, Atom, Bot, Forall, Imp, Prop, Signature, Term,
    Top, Var, atoms, free_vars, is_closed, signature_of, symbols,
)
from .verdict import Verdict

DEFAULT_BUDGET = 10**6

Assignment = Mapping[str, int]


class UnassignedVariable(KeyError):
    pass


class MissingSymbol(KeyError):
    pass


class DomainMismatch(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    def __init__(self, examined: int):
        self.examined = examined
        super().__init__(f"search budget exhausted after {examined} candidates")


class StabilityError(AssertionError):
    pass


@dataclass(frozen=True)
class Table:
    """Row-major table over ``M^arity``; the first argument varies slowest."""

    arity: int
    values: tuple[int, ...]

    def at(self, args: Sequence[int], m: int) -> int:
        i = 0
        for x in args:
            i = i * m + x
        return self.values[i]


def const_table(arity: int, m: int, value: int) -> Table:
    return Table(arity, (value,) * m**arity)


def table_from_fn(arity: int, m: int, fn) -> Table:
    return Table(arity, tuple(fn(*args) for args in itertools.product(range(m), repeat=arity)))


@dataclass(frozen=True)
class Structure:
    algebra: FinitePHA
    m: int
    fhat: Mapping[str, Table] = field(default_factory=dict)
    phat: Mapping[str, Table] = field(default_factory=dict)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("domain must be non-empty")
        for kind, tables, hi in (("function", self.fhat, self.m), ("predicate", self.phat, self.algebra.n)):
            for name, t in tables.items():
                if len(t.values) != self.m**t.arity:
                    raise ValueError(f"{kind} {name}: table must have {self.m}^{t.arity} entries")
                if any(not 0 <= v < hi for v in t.values):
                    raise ValueError(f"{kind} {name}: entries out of range")

    def signature(self) -> Signature:
        return Signature({f: t.arity for f, t in self.fhat.items()}, {p: t.arity for p, t in self.phat.items()})

    def with_algebra(self, algebra: FinitePHA) -> Structure:
        if algebra.n != self.algebra.n:
            raise DomainMismatch("algebras have different carriers")
        return replace(self, algebra=algebra)


def default_structure(sig: Signature, algebra: FinitePHA, m: int = 1, value: int = 0) -> Structure:
    """Every function and predicate table constant ``value``."""
    return Structure(
        algebra, m,
        {f: const_table(k, m, value) for f, k in sig.functions.items()},
        {p: const_table(k, m, value) for p, k in sig.predicates.items()},
    )


# ---------------------------------------------------------------------------
# Denotation


def eval_term(t: Term, S: Structure, phi: Assignment) -> int:
    if isinstance(t, Var):
        try:
            return phi[t.name]
        except KeyError:
            raise UnassignedVariable(t.name) from None
    table = S.fhat.get(t.name)
    if table is None:
        raise MissingSymbol(f"no table for function {t.name}")
    return table.at([eval_term(a, S, phi) for a in t.args], S.m)


def eval_prop(p: Prop, S: Structure, phi: Optional[Assignment] = None) -> int:
    return _eval(p, S, dict(phi or {}))


def _eval(p: Prop, S: Structure, phi: dict) -> int:
    B = S.algebra
    if isinstance(p, Atom):
        table = S.phat.get(p.pred)
        if table is None:
            raise MissingSymbol(f"no table for predicate {p.pred}")
        return table.at([eval_term(a, S, phi) for a in p.args], S.m)
    if isinstance(p, Top):
        return B.top
    if isinstance(p, Bot):
        return B.bot
    if isinstance(p, BINARY):
        x, y = _eval(p.lhs, S, phi), _eval(p.rhs, S, phi)
        table = B.imp if isinstance(p, Imp) else B.and_ if isinstance(p, And) else B.or_
        return table[x][y]
    saved = phi.get(p.var, _MISSING)
    mask = 0
    for e in range(S.m):
        phi[p.var] = e
        mask |= 1 << _eval(p.body, S, phi)
    if saved is _MISSING:
        del phi[p.var]
    else:
        phi[p.var] = saved
    return (B.forall if isinstance(p, Forall) else B.exists)[mask]


_MISSING = object()


def is_model(S: Structure, R: RewriteSystem) -> Verdict:
    """Check every rule instance over the domain.

    Denotation is compositional and the congruence is generated by the
    rules, so rule-level equality gives equal values to congruent
    propositions.
    """
    v = Verdict()
    for r in R.rules:
        for args in itertools.product(range(S.m), repeat=len(r.params)):
            phi = dict(zip(r.params, args))
            try:
                lhs, rhs = eval_prop(r.lhs, S, phi), eval_prop(r.rhs, S, phi)
            except MissingSymbol as e:
                v.fail(r.head, str(e))
                break
            if lhs != rhs:
                at = f" at {dict(phi)}" if phi else ""
                v.fail(r.head, f"{S.algebra.label(lhs)} != {S.algebra.label(rhs)}{at}")
    return v


def sequent_holds(left: Sequence[Prop], right: Sequence[Prop], S: Structure) -> Verdict:
    """Check ``[[/\\ left]] <= [[right]]`` under every assignment of the
    free variables.  ``right`` has at most one formula; empty means bottom."""
    if len(right) > 1:
        raise ValueError("only single-conclusion sequents have this reading")
    B = S.algebra
    names = sorted(set().union(*(free_vars(p) for p in (*left, *right))))
    v = Verdict()
    for values in itertools.product(range(S.m), repeat=len(names)):
        phi = dict(zip(names, values))
        lhs = B.top
        for p in left:
            lhs = B.and_[lhs][eval_prop(p, S, phi)]
        rhs = eval_prop(right[0], S, phi) if right else B.bot
        if not B.le(lhs, rhs):
            v.fail("sequent", f"{B.label(lhs)} is not below {B.label(rhs)} at {phi}")
    return v


# ---------------------------------------------------------------------------
# Grafting


def graft(M0: Structure, M1: Structure, a: Prop, algebra: Optional[FinitePHA] = None) -> Structure:
    """Symbols occurring in ``a`` take their tables from ``M0``, all others
    from ``M1``.  The result lives in ``M0``'s algebra unless one is given."""
    if M0.m != M1.m:
        raise DomainMismatch(f"domain sizes differ: {M0.m} vs {M1.m}")
    if M0.algebra.n != M1.algebra.n:
        raise DomainMismatch(f"carriers differ: {M0.algebra.n} vs {M1.algebra.n}")
    own = symbols(a)

    def pick(t0: Mapping[str, Table], t1: Mapping[str, Table]) -> dict[str, Table]:
        out = {}
        for name in sorted(set(t0) | set(t1)):
            if name in own:
                out[name] = t0.get(name, t1.get(name))
            else:
                out[name] = t1.get(name, t0.get(name))
        return out

    return Structure(algebra or M0.algebra, M0.m, pick(M0.fhat, M1.fhat), pick(M0.phat, M1.phat))


def check_grafting(M0: Structure, M1: Structure, a: Prop, samples: int = 500,
                   seed: int = 0, depth: int = 4) -> Verdict:
    """Sample propositions over ``a``'s symbols (value must match ``M0``)
    and over the remaining symbols (value must match ``M1``)."""
    from .generate import random_assignment, random_prop

    rng = random.Random(seed)
    M2 = graft(M0, M1, a)
    sig = M0.signature().merge(M1.signature())
    own = symbols(a)
    inside = Signature({f: k for f, k in sig.functions.items() if f in own},
                       {p: k for p, k in sig.predicates.items() if p in own})
    outside = sig.without(own)
    v = Verdict()
    for label, sub, ref in (("own symbols", inside, M0), ("other symbols", outside, M1)):
        for _ in range(samples):
            b = random_prop(rng, sub, depth)
            phi = random_assignment(rng, b, M0.m)
            got, want = eval_prop(b, M2, phi), eval_prop(b, ref, phi)
            if got != want:
                from .parser import print_prop
                v.fail(label, f"{print_prop(b)} under {phi}: grafted {got}, expected {want}")
    return v


# ---------------------------------------------------------------------------
# Commutation of syntactic and semantic translation


def check_translation_commutes(S: Structure, a: Prop, samples: int = 1000, seed: int = 0,
                  depth: int = 4) -> Verdict:
    """Compare ``[[B^a]]`` in ``S`` with ``[[B]]`` in ``S`` read over the
    translated algebra, on sampled ``B`` and assignments."""
    from .generate import random_assignment, random_prop

    if not is_closed(a):
        raise ValueError("the translation parameter must be closed")
    rng = random.Random(seed)
    checked = S.with_algebra(a_translate(S.algebra, eval_prop(a, S)))
    sig = S.signature()
    v = Verdict()
    for _ in range(samples):
        b = random_prop(rng, sig, depth)
        phi = random_assignment(rng, b, S.m)
        got, want = eval_prop(atrans_prop(b, a), S, phi), eval_prop(b, checked, phi)
        if got != want:
            from .parser import print_prop
            v.fail("commutation", f"{print_prop(b)} under {phi}: {got} vs {want}")
    return v


check_propag1 = check_translation_commutes


# ---------------------------------------------------------------------------
# Model search


def _cyclic_heads(R: RewriteSystem) -> set[str]:
    deps = {r.head: {x.pred for x in atoms(r.rhs) if x.pred in R.by_head} for r in R.rules}
    return {h for h in deps if h in _reachable(deps, h, strict=True)}


def model_search(R: RewriteSystem, B: FinitePHA, m: int = 1, budget: int = DEFAULT_BUDGET,
                 sig: Optional[Signature] = None,
                 fixed: Optional[Mapping[str, Table]] = None) -> Optional[Structure]:
    """First model of ``R`` in ``B`` over a domain of size ``m``, or None
    when the bounded search space holds none."""
    return next(iter_models(R, B, m, budget, sig, fixed), None)


def iter_models(R: RewriteSystem, B: FinitePHA, m: int = 1, budget: int = DEFAULT_BUDGET,
                sig: Optional[Signature] = None,
                fixed: Optional[Mapping[str, Table]] = None) -> Iterator[Structure]:
    """All models of ``R`` in ``B`` over a domain of size ``m``.

    Function tables, undefined predicates and predicates defined through a
    cycle of rules are enumerated; every other defined predicate is computed
    from its rule in dependency order.  Tables named in ``fixed`` are pinned.
    ``budget`` bounds the number of candidate structures examined.
    """
    sig = R.signature().merge(sig) if sig else R.signature()
    fixed = dict(fixed or {})
    cyclic = _cyclic_heads(R)
    computed = [h for h in R.by_head if h not in cyclic and h not in fixed]
    order = list(TopologicalSorter(
        {h: {x.pred for x in atoms(R.by_head[h].rhs) if x.pred in computed} for h in computed}
    ).static_order())

    free: list[tuple[str, bool, int]] = []  # (name, is_predicate, arity)
    free += [(p, True, k) for p, k in sorted(sig.predicates.items()) if p not in computed and p not in fixed]
    free += [(f, False, k) for f, k in sorted(sig.functions.items()) if f not in fixed]
    cells: list[range] = []
    for name, is_pred, k in free:
        cells += [range(B.n if is_pred else m)] * (m**k)

    examined = 0
    for values in itertools.product(*cells):
        if examined >= budget:
            raise BudgetExhausted(examined)
        examined += 1
        fhat = {f: t for f, t in fixed.items() if f in sig.functions}
        phat = {p: t for p, t in fixed.items() if p in sig.predicates}
        i = 0
        for name, is_pred, k in free:
            size = m**k
            (phat if is_pred else fhat)[name] = Table(k, tuple(values[i:i + size]))
            i += size
        for h in computed:
            phat[h] = const_table(sig.predicates[h], m, 0)
        S = Structure(B, m, fhat, phat)
        for h in order:
            r = R.by_head[h]
            phat[h] = table_from_fn(len(r.params), m, lambda *args, r=r: eval_prop(r.rhs, S, dict(zip(r.params, args))))
            S = Structure(B, m, fhat, phat)
        if is_model(S, R).ok:
            yield S


def stability_witness(R: RewriteSystem, a: Prop, B: FinitePHA, m: int = 1,
                      budget: int = DEFAULT_BUDGET, M0: Optional[Structure] = None) -> Optional[Structure]:
    """Build a model of the ``a``-translated system from a model of ``R`` in
    the translated algebra, grafting ``a``'s symbols from ``M0``."""
    if not r_compatible(a, R):
        raise ValueError("the parameter shares symbols with the rewrite system")
    if not is_closed(a):
        raise ValueError("the parameter must be closed")
    if M0 is None:
        M0 = default_structure(signature_of(a), B, m)
    a_val = eval_prop(a, M0)
    M1 = model_search(R, a_translate(B, a_val), m, budget)
    if M1 is None:
        return None
    M2 = graft(M0, M1.with_algebra(B), a)
    verdict = is_model(M2, atrans_system(R, a))
    if not verdict.ok:
        raise StabilityError(str(verdict))
    return M2


FOUND, NONE, BUDGET = "found", "none", "budget exhausted"


@dataclass
class ProbeReport:
    rows: list[tuple[str, int, str]]

    @property
    def refuted(self) -> bool:
        return any(outcome == NONE for _, _, outcome in self.rows)

    @property
    def summary(self) -> str:
        if self.refuted:
            first = next((b, m) for b, m, o in self.rows if o == NONE)
            return f"not super-consistent: no model in {first[0]} with m={first[1]}"
        if any(o == BUDGET for _, _, o in self.rows):
            return "inconclusive: some searches ran out of budget"
        return "models found everywhere probed (evidence only, not a proof)"

    def __str__(self):
        lines = [f"{b:<32} m={m}  {o}" for b, m, o in self.rows]
        return "\n".join(lines + [self.summary])

    def to_json(self) -> dict:
        return {"rows": [{"algebra": b, "m": m, "outcome": o} for b, m, o in self.rows],
                "refuted": self.refuted, "summary": self.summary}


def superconsistency_probe(R: RewriteSystem, algebras: Iterable[FinitePHA],
                           ms: Iterable[int] = (1, 2), budget: int = DEFAULT_BUDGET) -> ProbeReport:
    rows = []
    algebras = list(algebras)
    for m in sorted(ms):
        for B in algebras:
            try:
                outcome = FOUND if model_search(R, B, m, budget) is not None else NONE
            except BudgetExhausted:
                outcome = BUDGET
            rows.append((str(B), m, outcome))
    return ProbeReport(rows)


# ---------------------------------------------------------------------------
# Files


def structure_to_json(S: Structure, inline_algebra: bool = False) -> dict:
    def tables(ts):
        return {name: {"arity": t.arity, "table": list(t.values)} for name, t in ts.items()}

    return {
        "algebra": S.algebra.name if S.algebra.name in bundled() and not inline_algebra else algebra_to_json(S.algebra),
        "m": S.m,
        "fhat": tables(S.fhat),
        "phat": tables(S.phat),
    }


def structure_from_json(d: dict) -> Structure:
    from .pha import from_json as algebra_from_json

    alg = d["algebra"]
    B = algebra_from_json(alg) if isinstance(alg, dict) else load_algebra(alg)

    def tables(ts):
        return {name: Table(t["arity"], tuple(t["table"])) for name, t in ts.items()}

    return Structure(B, d["m"], tables(d.get("fhat", {})), tables(d.get("phat", {})))


def load_structure(path: str) -> Structure:
    with open(path) as f:
        return structure_from_json(json.load(f))
