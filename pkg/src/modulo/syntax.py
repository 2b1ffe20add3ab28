"""First-order terms and propositions with capture-avoiding substitution.

Propositions are immutable dataclasses.  Negation is not primitive: ``~A``
is sugar for ``A => bot``.  Bound-variable renaming appends primes to the
clashing name (``y`` becomes ``y'``, then ``y''``), so renamed output does
not depend on call order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Fn:
    name: str
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(map(str, self.args))})"


Term = Union[Var, Fn]


# ---------------------------------------------------------------------------
# Propositions


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Imp:
    lhs: Prop
    rhs: Prop


@dataclass(frozen=True)
class And:
    lhs: Prop
    rhs: Prop


@dataclass(frozen=True)
class Or:
    lhs: Prop
    rhs: Prop


@dataclass(frozen=True)
class Forall:
    var: str
    body: Prop


@dataclass(frozen=True)
class Exists:
    var: str
    body: Prop


Prop = Union[Atom, Top, Bot, Imp, And, Or, Forall, Exists]
BINARY = (Imp, And, Or)
QUANTIFIERS = (Forall, Exists)

TOP = Top()
BOT = Bot()


def neg(p: Prop) -> Prop:
    return Imp(p, BOT)


def atom(pred: str, *args: Term) -> Atom:
    return Atom(pred, tuple(args))


def imps(*ps: Prop) -> Prop:
    """Left-associated implication chain: ``imps(a, b, c) == (a => b) => c``."""
    out = ps[0]
    for p in ps[1:]:
        out = Imp(out, p)
    return out


# ---------------------------------------------------------------------------
# Signatures


class SignatureError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    functions: Mapping[str, int] = field(default_factory=dict)
    predicates: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        clash = set(self.functions) & set(self.predicates)
        if clash:
            raise SignatureError(f"symbols used both as function and predicate: {sorted(clash)}")
        for name, k in {**self.functions, **self.predicates}.items():
            if k < 0:
                raise SignatureError(f"negative arity for {name}")

    def __hash__(self):
        return hash((tuple(sorted(self.functions.items())), tuple(sorted(self.predicates.items()))))

    def merge(self, other: Signature) -> Signature:
        funs = dict(self.functions)
        preds = dict(self.predicates)
        for name, k in other.functions.items():
            if funs.setdefault(name, k) != k:
                raise SignatureError(f"arity mismatch for function {name}")
        for name, k in other.predicates.items():
            if preds.setdefault(name, k) != k:
                raise SignatureError(f"arity mismatch for predicate {name}")
        return Signature(funs, preds)

    def without(self, symbols: Iterable[str]) -> Signature:
        drop = set(symbols)
        return Signature(
            {f: k for f, k in self.functions.items() if f not in drop},
            {p: k for p, k in self.predicates.items() if p not in drop},
        )

    @property
    def symbols(self) -> set[str]:
        return set(self.functions) | set(self.predicates)


def signature_of(*props: Prop) -> Signature:
    """Smallest signature covering ``props``; raises on inconsistent arities."""
    sig = Signature()
    for p in props:
        funs: dict[str, int] = {}
        preds: dict[str, int] = {}
        for a in atoms(p):
            preds.setdefault(a.pred, len(a.args))
            if preds[a.pred] != len(a.args):
                raise SignatureError(f"predicate {a.pred} used with two arities")
            for t in a.args:
                for f in _fn_nodes(t):
                    funs.setdefault(f.name, len(f.args))
                    if funs[f.name] != len(f.args):
                        raise SignatureError(f"function {f.name} used with two arities")
        sig = sig.merge(Signature(funs, preds))
    return sig


# ---------------------------------------------------------------------------
# Traversals


def _fn_nodes(t: Term) -> Iterator[Fn]:
    if isinstance(t, Fn):
        yield t
        for a in t.args:
            yield from _fn_nodes(a)


def atoms(p: Prop) -> Iterator[Atom]:
    if isinstance(p, Atom):
        yield p
    elif isinstance(p, BINARY):
        yield from atoms(p.lhs)
        yield from atoms(p.rhs)
    elif isinstance(p, QUANTIFIERS):
        yield from atoms(p.body)


def symbols(p: Prop) -> set[str]:
    """Predicate and function symbols occurring in ``p``."""
    out = set()
    for a in atoms(p):
        out.add(a.pred)
        for t in a.args:
            out.update(f.name for f in _fn_nodes(t))
    return out


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    out: set[str] = set()
    for a in t.args:
        out |= term_vars(a)
    return out


def free_vars(p: Prop) -> set[str]:
    if isinstance(p, Atom):
        out: set[str] = set()
        for t in p.args:
            out |= term_vars(t)
        return out
    if isinstance(p, BINARY):
        return free_vars(p.lhs) | free_vars(p.rhs)
    if isinstance(p, QUANTIFIERS):
        return free_vars(p.body) - {p.var}
    return set()


def bound_vars(p: Prop) -> set[str]:
    if isinstance(p, BINARY):
        return bound_vars(p.lhs) | bound_vars(p.rhs)
    if isinstance(p, QUANTIFIERS):
        return bound_vars(p.body) | {p.var}
    return set()


def all_vars(p: Prop) -> set[str]:
    return free_vars(p) | bound_vars(p)


def is_unbound(a: Prop, b: Prop) -> bool:
    """True iff no free variable of ``a`` is bound by a quantifier of ``b``."""
    return not (free_vars(a) & bound_vars(b))


def is_closed(p: Prop) -> bool:
    return not free_vars(p)


def size(p: Prop) -> int:
    if isinstance(p, BINARY):
        return 1 + size(p.lhs) + size(p.rhs)
    if isinstance(p, QUANTIFIERS):
        return 1 + size(p.body)
    return 1


# ---------------------------------------------------------------------------
# Substitution


def fresh_name(base: str, avoid: set[str]) -> str:
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def subst_term(t: Term, sigma: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    return Fn(t.name, tuple(subst_term(a, sigma) for a in t.args))


def substitute_many(p: Prop, sigma: Mapping[str, Term]) -> Prop:
    """Simultaneous capture-avoiding substitution."""
    sigma = {x: t for x, t in sigma.items() if not (isinstance(t, Var) and t.name == x)}
    if not sigma:
        return p
    return _subst(p, sigma)


def _subst(p: Prop, sigma: Mapping[str, Term]) -> Prop:
    if isinstance(p, Atom):
        return Atom(p.pred, tuple(subst_term(t, sigma) for t in p.args))
    if isinstance(p, BINARY):
        return type(p)(_subst(p.lhs, sigma), _subst(p.rhs, sigma))
    if isinstance(p, QUANTIFIERS):
        fv_body = free_vars(p.body)
        inner = {x: t for x, t in sigma.items() if x != p.var and x in fv_body}
        if not inner:
            return p
        incoming: set[str] = set()
        for t in inner.values():
            incoming |= term_vars(t)
        var, body = p.var, p.body
        if var in incoming:
            new = fresh_name(var, incoming | fv_body | set(inner) | all_vars(body))
            body = _subst(body, {var: Var(new)})
            var = new
        return type(p)(var, _subst(body, inner))
    return p


def substitute(p: Prop, var: str, t: Term) -> Prop:
    """``{t/var}p``."""
    return substitute_many(p, {var: t})


# ---------------------------------------------------------------------------
# Alpha-equivalence


def alpha_key(p: Prop, env: tuple[str, ...] = ()) -> tuple:
    """Hashable key identifying ``p`` up to bound-variable renaming.

    Bound variables become de Bruijn indices; free ones keep their name.
    """
    if isinstance(p, Atom):
        return ("atom", p.pred, tuple(_term_key(t, env) for t in p.args))
    if isinstance(p, Top):
        return ("top",)
    if isinstance(p, Bot):
        return ("bot",)
    if isinstance(p, BINARY):
        return (type(p).__name__, alpha_key(p.lhs, env), alpha_key(p.rhs, env))
    if isinstance(p, QUANTIFIERS):
        return (type(p).__name__, alpha_key(p.body, (p.var,) + env))
    raise TypeError(p)


def _term_key(t: Term, env: tuple[str, ...]):
    if isinstance(t, Var):
        if t.name in env:
            return ("#", env.index(t.name))
        return ("v", t.name)
    return ("f", t.name, tuple(_term_key(a, env) for a in t.args))


def alpha_eq(p: Prop, q: Prop) -> bool:
    return p == q or alpha_key(p) == alpha_key(q)


# ---------------------------------------------------------------------------
# JSON


def term_to_json(t: Term) -> dict:
    if isinstance(t, Var):
        return {"kind": "var", "name": t.name}
    return {"kind": "fn", "name": t.name, "args": [term_to_json(a) for a in t.args]}


def term_from_json(d: dict) -> Term:
    if d["kind"] == "var":
        return Var(d["name"])
    if d["kind"] == "fn":
        return Fn(d["name"], tuple(term_from_json(a) for a in d.get("args", [])))
    raise ValueError(f"unknown term kind {d['kind']!r}")


_BIN_TAGS = {Imp: "imp", And: "and", Or: "or"}
_QUANT_TAGS = {Forall: "forall", Exists: "exists"}


def prop_to_json(p: Prop) -> dict:
    if isinstance(p, Atom):
        return {"kind": "atom", "pred": p.pred, "args": [term_to_json(t) for t in p.args]}
    if isinstance(p, Top):
        return {"kind": "top"}
    if isinstance(p, Bot):
        return {"kind": "bot"}
    if isinstance(p, BINARY):
        return {"kind": _BIN_TAGS[type(p)], "lhs": prop_to_json(p.lhs), "rhs": prop_to_json(p.rhs)}
    return {"kind": _QUANT_TAGS[type(p)], "var": p.var, "body": prop_to_json(p.body)}


def prop_from_json(d: dict) -> Prop:
    kind = d["kind"]
    if kind == "atom":
        return Atom(d["pred"], tuple(term_from_json(t) for t in d.get("args", [])))
    if kind == "top":
        return TOP
    if kind == "bot":
        return BOT
    for cls, tag in _BIN_TAGS.items():
        if kind == tag:
            return cls(prop_from_json(d["lhs"]), prop_from_json(d["rhs"]))
    for cls, tag in _QUANT_TAGS.items():
        if kind == tag:
            return cls(d["var"], prop_from_json(d["body"]))
    raise ValueError(f"unknown proposition kind {kind!r}")
