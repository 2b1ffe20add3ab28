"""Natural deduction modulo as proof terms: implication, conjunction and the
truth constant ``I``.  Type checking works up to the congruence; reduction
detects cycles on alpha-canonical terms."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Optional, Union

from .parser import parse_prop, print_prop
from .rewrite import DEFAULT_FUEL, RewriteSystem, Tri, congruent, head_normalize, system
from .syntax import TOP, And, Atom, Imp, Prop, Top, fresh_name
from .verdict import Verdict


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class Lam:
    var: str
    body: Term
    ann: Optional[Prop] = None


@dataclass(frozen=True)
class App:
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Pair:
    left: Term
    right: Term


@dataclass(frozen=True)
class Fst:
    arg: Term


@dataclass(frozen=True)
class Snd:
    arg: Term


@dataclass(frozen=True)
class Unit:
    pass


I = Unit()

Term = Union[PVar, Lam, App, Pair, Fst, Snd, Unit]


def apps(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


def term_free_vars(t: Term) -> set[str]:
    if isinstance(t, PVar):
        return {t.name}
    if isinstance(t, Lam):
        return term_free_vars(t.body) - {t.var}
    if isinstance(t, (App, Pair)):
        a, b = (t.fn, t.arg) if isinstance(t, App) else (t.left, t.right)
        return term_free_vars(a) | term_free_vars(b)
    if isinstance(t, (Fst, Snd)):
        return term_free_vars(t.arg)
    return set()


def _all_names(t: Term) -> set[str]:
    if isinstance(t, PVar):
        return {t.name}
    if isinstance(t, Lam):
        return _all_names(t.body) | {t.var}
    if isinstance(t, App):
        return _all_names(t.fn) | _all_names(t.arg)
    if isinstance(t, Pair):
        return _all_names(t.left) | _all_names(t.right)
    if isinstance(t, (Fst, Snd)):
        return _all_names(t.arg)
    return set()


def subst(t: Term, x: str, u: Term) -> Term:
    """Capture-avoiding ``{u/x}t``."""
    if isinstance(t, PVar):
        return u if t.name == x else t
    if isinstance(t, Lam):
        if t.var == x or x not in term_free_vars(t.body):
            return t
        if t.var in term_free_vars(u):
            new = fresh_name(t.var, term_free_vars(u) | _all_names(t.body) | {x})
            return Lam(new, subst(subst(t.body, t.var, PVar(new)), x, u), t.ann)
        return Lam(t.var, subst(t.body, x, u), t.ann)
    if isinstance(t, App):
        return App(subst(t.fn, x, u), subst(t.arg, x, u))
    if isinstance(t, Pair):
        return Pair(subst(t.left, x, u), subst(t.right, x, u))
    if isinstance(t, Fst):
        return Fst(subst(t.arg, x, u))
    if isinstance(t, Snd):
        return Snd(subst(t.arg, x, u))
    return t


def canonical(t: Term, env: tuple[str, ...] = ()) -> tuple:
    """Hashable key equal for alpha-equivalent terms."""
    if isinstance(t, PVar):
        for i in range(len(env) - 1, -1, -1):
            if env[i] == t.name:
                return ("b", len(env) - 1 - i)
        return ("f", t.name)
    if isinstance(t, Lam):
        from .syntax import alpha_key
        return ("lam", alpha_key(t.ann) if t.ann is not None else None, canonical(t.body, env + (t.var,)))
    if isinstance(t, App):
        return ("app", canonical(t.fn, env), canonical(t.arg, env))
    if isinstance(t, Pair):
        return ("pair", canonical(t.left, env), canonical(t.right, env))
    if isinstance(t, Fst):
        return ("fst", canonical(t.arg, env))
    if isinstance(t, Snd):
        return ("snd", canonical(t.arg, env))
    return ("I",)


def alpha_equal(t: Term, u: Term) -> bool:
    return canonical(t) == canonical(u)


# ---------------------------------------------------------------------------
# Concrete syntax:  \x. t   \(x : A). t   t u   <t, u>   fst(t)   snd(t)   I
# Square brackets group like parentheses.


class TermParseError(ValueError):
    pass


_TOK = re.compile(r"\s*(?:(?P<lam>\\|λ)|(?P<id>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<p>[().,<>⟨⟩\[\]:]))")


def parse_term(text: str) -> Term:
    toks: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOK.match(text, pos)
        if not m:
            raise TermParseError(f"unexpected character {text[pos]!r} at position {pos}")
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    p = _TermParser(text, toks)
    t = p.term()
    if p.peek() != "eof":
        p.fail("trailing input")
    return t


class _TermParser:
    def __init__(self, text, toks):
        self.text, self.toks, self.i = text, toks, 0

    def peek(self) -> str:
        k, v, _ = self.toks[self.i]
        return v if k == "p" else k

    def fail(self, msg):
        raise TermParseError(f"{msg} at position {self.toks[self.i][2]}")

    def take(self, what: str) -> str:
        if self.peek() != what:
            self.fail(f"expected {what!r}")
        v = self.toks[self.i][1]
        self.i += 1
        return v

    def term(self) -> Term:
        if self.peek() == "lam":
            self.i += 1
            ann = None
            if self.peek() == "(":
                self.i += 1
                var = self.take("id")
                self.take(":")
                start = self.toks[self.i][2]
                depth = 0
                while not (self.peek() == ")" and depth == 0):
                    if self.peek() == "eof":
                        self.fail("unclosed annotation")
                    depth += {"(": 1, ")": -1}.get(self.peek(), 0)
                    self.i += 1
                ann = parse_prop(self.text[start:self.toks[self.i][2]])
                self.take(")")
            else:
                var = self.take("id")
            self.take(".")
            return Lam(var, self.term(), ann)
        t = self.atom()
        while self.peek() in ("id", "(", "[", "<", "⟨", "lam"):
            if self.peek() == "lam":
                return App(t, self.term())
            t = App(t, self.atom())
        return t

    def atom(self) -> Term:
        k = self.peek()
        if k in ("(", "["):
            close = ")" if k == "(" else "]"
            self.i += 1
            t = self.term()
            self.take(close)
            return t
        if k in ("<", "⟨"):
            close = ">" if k == "<" else "⟩"
            self.i += 1
            a = self.term()
            self.take(",")
            b = self.term()
            self.take(close)
            return Pair(a, b)
        if k == "id":
            name = self.take("id")
            if name == "I":
                return I
            if name in ("fst", "snd") and self.peek() in ("(", "["):
                arg = self.atom()
                return Fst(arg) if name == "fst" else Snd(arg)
            return PVar(name)
        self.fail("expected a term")


def print_term(t: Term, unicode: bool = False) -> str:
    lam, lt, gt = ("λ", "⟨", "⟩") if unicode else ("\\", "<", ">")

    def go(t, ctx):  # ctx 0: anywhere, 1: function position, 2: argument position
        if isinstance(t, PVar):
            return t.name
        if isinstance(t, Unit):
            return "I"
        if isinstance(t, Lam):
            head = f"{lam}({t.var} : {print_prop(t.ann, unicode)})" if t.ann is not None else f"{lam}{t.var}"
            s = f"{head}. {go(t.body, 0)}"
            return f"({s})" if ctx else s
        if isinstance(t, App):
            s = f"{go(t.fn, 1)} {go(t.arg, 2)}"
            return f"({s})" if ctx == 2 else s
        if isinstance(t, Pair):
            return f"{lt}{go(t.left, 0)}, {go(t.right, 0)}{gt}"
        if isinstance(t, Fst):
            return f"fst({go(t.arg, 0)})"
        if isinstance(t, Snd):
            return f"snd({go(t.arg, 0)})"
        raise TypeError(t)

    return go(t, 0)


# ---------------------------------------------------------------------------
# Type checking


class TypeMismatch(Exception):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class _Undecided(Exception):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(message)


class _Typer:
    def __init__(self, R: RewriteSystem, fuel: int):
        self.R, self.fuel = R, fuel

    def head(self, p: Prop, path: str) -> Prop:
        h = head_normalize(p, self.R, self.fuel)
        if h is None:
            raise _Undecided(path, f"no head connective for {print_prop(p)} within fuel")
        return h

    def same(self, got: Prop, want: Prop, path: str):
        r = congruent(got, want, self.R, self.fuel)
        if r is Tri.UNKNOWN:
            raise _Undecided(path, f"congruence of {print_prop(got)} and {print_prop(want)} undecided")
        if r is Tri.NO:
            raise TypeMismatch(path, f"{print_prop(got)} is not congruent to {print_prop(want)}")

    def check(self, t: Term, ctx: dict, goal: Prop, path: str):
        if isinstance(t, Lam):
            h = self.head(goal, path)
            if not isinstance(h, Imp):
                raise TypeMismatch(path, f"abstraction checked against {print_prop(goal)}")
            if t.ann is not None:
                self.same(t.ann, h.lhs, path)
            self.check(t.body, {**ctx, t.var: h.lhs}, h.rhs, path + ".body")
        elif isinstance(t, Pair):
            h = self.head(goal, path)
            if not isinstance(h, And):
                raise TypeMismatch(path, f"pair checked against {print_prop(goal)}")
            self.check(t.left, ctx, h.lhs, path + ".left")
            self.check(t.right, ctx, h.rhs, path + ".right")
        elif isinstance(t, App) and isinstance(t.fn, Lam) and t.fn.ann is None:
            arg = self.infer(t.arg, ctx, path + ".arg")
            self.check(t.fn, ctx, Imp(arg, goal), path + ".fn")
        else:
            self.same(self.infer(t, ctx, path), goal, path)

    def infer(self, t: Term, ctx: dict, path: str) -> Prop:
        if isinstance(t, PVar):
            if t.name not in ctx:
                raise TypeMismatch(path, f"unbound variable {t.name}")
            return ctx[t.name]
        if isinstance(t, Unit):
            return TOP
        if isinstance(t, Lam):
            if t.ann is None:
                raise TypeMismatch(path, f"cannot infer the type of unannotated abstraction over {t.var}")
            return Imp(t.ann, self.infer(t.body, {**ctx, t.var: t.ann}, path + ".body"))
        if isinstance(t, App):
            f = self.head(self.infer(t.fn, ctx, path + ".fn"), path + ".fn")
            if not isinstance(f, Imp):
                raise TypeMismatch(path, f"applying a proof of {print_prop(f)}")
            self.check(t.arg, ctx, f.lhs, path + ".arg")
            return f.rhs
        if isinstance(t, Pair):
            return And(self.infer(t.left, ctx, path + ".left"), self.infer(t.right, ctx, path + ".right"))
        if isinstance(t, (Fst, Snd)):
            p = self.head(self.infer(t.arg, ctx, path + ".arg"), path + ".arg")
            if not isinstance(p, And):
                raise TypeMismatch(path, f"projection from a proof of {print_prop(p)}")
            return p.lhs if isinstance(t, Fst) else p.rhs
        raise TypeError(t)


def type_check(t: Term, goal: Prop, R: RewriteSystem = RewriteSystem(), ctx: Optional[dict] = None,
               fuel: int = DEFAULT_FUEL) -> Verdict:
    v = Verdict()
    try:
        _Typer(R, fuel).check(t, dict(ctx or {}), goal, "root")
    except TypeMismatch as e:
        v.fail(e.path, str(e).split(": ", 1)[1])
    except _Undecided as e:
        v.unknown(e.path, str(e))
    return v


def infer_type(t: Term, R: RewriteSystem = RewriteSystem(), ctx: Optional[dict] = None,
               fuel: int = DEFAULT_FUEL) -> Prop:
    return _Typer(R, fuel).infer(t, dict(ctx or {}), "root")


# ---------------------------------------------------------------------------
# Reduction

LEFTMOST_OUTERMOST = "lo"
FULL = "full"


def _contract(t: Term) -> Optional[Term]:
    if isinstance(t, App) and isinstance(t.fn, Lam):
        return subst(t.fn.body, t.fn.var, t.arg)
    if isinstance(t, Fst) and isinstance(t.arg, Pair):
        return t.arg.left
    if isinstance(t, Snd) and isinstance(t.arg, Pair):
        return t.arg.right
    return None


def _lo_step(t: Term) -> Optional[Term]:
    r = _contract(t)
    if r is not None:
        return r
    if isinstance(t, Lam):
        b = _lo_step(t.body)
        return None if b is None else Lam(t.var, b, t.ann)
    if isinstance(t, App):
        f = _lo_step(t.fn)
        if f is not None:
            return App(f, t.arg)
        a = _lo_step(t.arg)
        return None if a is None else App(t.fn, a)
    if isinstance(t, Pair):
        left = _lo_step(t.left)
        if left is not None:
            return Pair(left, t.right)
        right = _lo_step(t.right)
        return None if right is None else Pair(t.left, right)
    if isinstance(t, (Fst, Snd)):
        a = _lo_step(t.arg)
        return None if a is None else type(t)(a)
    return None


def has_redex(t: Term) -> bool:
    return _lo_step(t) is not None


def develop(t: Term) -> Term:
    """Contract every redex of ``t`` at once (residuals created along the
    way are left for the next step)."""
    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            return subst(develop(t.fn.body), t.fn.var, develop(t.arg))
        return App(develop(t.fn), develop(t.arg))
    if isinstance(t, (Fst, Snd)):
        if isinstance(t.arg, Pair):
            return develop(t.arg.left if isinstance(t, Fst) else t.arg.right)
        return type(t)(develop(t.arg))
    if isinstance(t, Lam):
        return Lam(t.var, develop(t.body), t.ann)
    if isinstance(t, Pair):
        return Pair(develop(t.left), develop(t.right))
    return t


def reduce_step(t: Term, strategy: str = LEFTMOST_OUTERMOST) -> Optional[Term]:
    """One step, or ``None`` when ``t`` is normal."""
    if strategy == LEFTMOST_OUTERMOST:
        return _lo_step(t)
    if strategy == FULL:
        return develop(t) if has_redex(t) else None
    raise ValueError(f"unknown strategy {strategy!r}")


@dataclass
class Normal:
    term: Term
    steps: int


@dataclass
class Cycle:
    """``trace[0]`` is reached after ``start`` steps and comes back after
    ``period`` more."""

    trace: list[Term]
    start: int

    @property
    def period(self) -> int:
        return len(self.trace)


@dataclass
class FuelExhausted:
    term: Term
    steps: int


def reduce(t: Term, fuel: int = 1000, strategy: str = FULL, max_seen: int = 100_000):
    seen = {canonical(t): 0}
    trace = [t]
    for step in range(1, fuel + 1):
        nxt = reduce_step(t, strategy)
        if nxt is None:
            return Normal(t, step - 1)
        t = nxt
        k = canonical(t)
        if k in seen:
            first = seen[k]
            return Cycle(trace[first:], first)
        if len(seen) < max_seen:
            seen[k] = step
        trace.append(t)
    return FuelExhausted(t, fuel)


# ---------------------------------------------------------------------------
# The looping examples


@dataclass
class LoopExample:
    t1: Term
    t2: Term
    R: RewriteSystem
    t1_type: Prop
    t2_type: Prop

    @property
    def loop(self) -> Term:
        return App(self.t1, self.t2)

    @property
    def typed_loop(self) -> Term:
        """``t1 t2`` with ``t1``'s bound variable annotated, so that the
        application can be type checked."""
        return App(Lam(self.t1.var, self.t1.body, self.t1_type.lhs), self.t2)


def build_loop_example() -> LoopExample:
    """``t1 = \\x. fst(x I) (\\z. x I)`` and ``t2 = \\z. <t1, t1>`` under
    ``P -> (top => P => P) /\\ (top => P => P)``."""
    x = PVar("x")
    t1 = Lam("x", App(Fst(App(x, I)), Lam("z", App(x, I))))
    t2 = Lam("z", Pair(t1, t1))
    R = system(("P", "(top => P => P) /\\ (top => P => P)"))
    return LoopExample(t1, t2, R, parse_prop("top => P => P"), parse_prop("top => P"))


def build_self_application() -> tuple[Term, RewriteSystem, Prop]:
    """``(\\x. x x)(\\x. x x)`` typed at ``Q`` under ``P -> P => Q``.  The
    abstractions carry the annotation ``P`` so the function can be inferred."""
    P = Atom("P")
    delta = Lam("x", App(PVar("x"), PVar("x")), P)
    return App(delta, delta), system(("P", "P => Q")), Atom("Q")


# ---------------------------------------------------------------------------
# Random well-typed terms


def random_typed_term(rng: random.Random, goal: Prop, ctx: dict, R: RewriteSystem = RewriteSystem(),
                      depth: int = 4, types: tuple = ()) -> Term:
    """A term of type ``goal`` in ``ctx``.  Atomic goals must be reachable by
    eliminating some context entry.  With probability, a beta or projection
    redex is inserted so the result has something to reduce."""
    types = types or (goal,)
    if depth > 0 and rng.random() < 0.25:
        a = rng.choice(types)
        x = fresh_name("h", set(ctx) | {"h"})
        body = random_typed_term(rng, goal, {**ctx, x: a}, R, depth - 1, types)
        return App(Lam(x, body, a), random_typed_term(rng, a, ctx, R, depth - 1, types))
    if depth > 0 and rng.random() < 0.1:
        other = rng.choice(types)
        return Fst(Pair(random_typed_term(rng, goal, ctx, R, depth - 1, types),
                        random_typed_term(rng, other, ctx, R, depth - 1, types)))
    h = head_normalize(goal, R) or goal
    if isinstance(h, Top):
        return I
    if isinstance(h, Imp) and (depth > 0 or not _spines(ctx, goal, R)):
        x = fresh_name("v", set(ctx) | {"v"})
        return Lam(x, random_typed_term(rng, h.rhs, {**ctx, x: h.lhs}, R, depth - 1, types), h.lhs)
    if isinstance(h, And) and (depth > 0 or not _spines(ctx, goal, R)):
        return Pair(random_typed_term(rng, h.lhs, ctx, R, depth - 1, types),
                    random_typed_term(rng, h.rhs, ctx, R, depth - 1, types))
    options = _spines(ctx, goal, R)
    if not options:
        raise ValueError(f"no way to build a proof of {print_prop(goal)}")
    name, spine = rng.choice(options)
    t: Term = PVar(name)
    for step in spine:
        if step == "fst":
            t = Fst(t)
        elif step == "snd":
            t = Snd(t)
        else:
            t = App(t, random_typed_term(rng, step, ctx, R, max(depth - 1, 0), types))
    return t


def _spines(ctx: dict, goal: Prop, R: RewriteSystem, limit: int = 4) -> list:
    out = []
    for name, ty in sorted(ctx.items()):
        for spine in _paths(ty, goal, R, limit):
            out.append((name, spine))
    return out


def _paths(ty: Prop, goal: Prop, R: RewriteSystem, limit: int) -> list[list]:
    out = []
    if congruent(ty, goal, R, 200) is Tri.YES:
        out.append([])
    if limit == 0:
        return out
    h = head_normalize(ty, R, 200)
    if isinstance(h, Imp):
        out += [[h.lhs] + p for p in _paths(h.rhs, goal, R, limit - 1)]
    elif isinstance(h, And):
        out += [["fst"] + p for p in _paths(h.lhs, goal, R, limit - 1)]
        out += [["snd"] + p for p in _paths(h.rhs, goal, R, limit - 1)]
    return out
