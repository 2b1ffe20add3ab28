"""Finite full pseudo-Heyting algebras.

Elements are the indices ``0..n-1``.  The pre-order ``leq`` need not be
antisymmetric, so meets, joins and quantifiers are stored as explicit
tables rather than recomputed as bounds.  Quantifier tables are indexed by
the bitmask of the quantified subset.
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .verdict import Verdict

SOFT_LIMIT = 12

Table = tuple[tuple[int, ...], ...]
BoolTable = tuple[tuple[bool, ...], ...]


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def to_mask(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


@dataclass(frozen=True)
class FinitePHA:
    n: int
    leq: BoolTable
    sqle: BoolTable
    top: int
    bot: int
    imp: Table
    and_: Table
    or_: Table
    forall: tuple[int, ...]
    exists: tuple[int, ...]
    names: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ValueError("empty carrier")
        if n > SOFT_LIMIT:
            warnings.warn(f"carrier of size {n} exceeds the soft limit {SOFT_LIMIT}; checks enumerate 2^n subsets")
        for label in ("leq", "sqle", "imp", "and_", "or_"):
            t = getattr(self, label)
            if len(t) != n or any(len(row) != n for row in t):
                raise ValueError(f"{label} must be {n}x{n}")
        for label in ("imp", "and_", "or_"):
            if any(not 0 <= v < n for row in getattr(self, label) for v in row):
                raise ValueError(f"{label} has entries outside the carrier")
        for label in ("forall", "exists"):
            t = getattr(self, label)
            if len(t) != 1 << n:
                raise ValueError(f"{label} must have 2^{n} entries")
            if any(not 0 <= v < n for v in t):
                raise ValueError(f"{label} has entries outside the carrier")
        if not (0 <= self.top < n and 0 <= self.bot < n):
            raise ValueError("top/bot outside the carrier")
        if self.names and len(self.names) != n:
            raise ValueError("one name per element")

    def label(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def equiv(self, a: int, b: int) -> bool:
        return self.leq[a][b] and self.leq[b][a]

    def meet_all(self, elems: Iterable[int]) -> int:
        return self.forall[to_mask(elems)]

    def join_all(self, elems: Iterable[int]) -> int:
        return self.exists[to_mask(elems)]

    def dneg(self, b: int, a: int) -> int:
        """``(b => a) => a`` in the table."""
        return self.imp[self.imp[b][a]][a]

    @cached_property
    def leq_np(self) -> np.ndarray:
        return np.array(self.leq, dtype=bool)

    @cached_property
    def sqle_np(self) -> np.ndarray:
        return np.array(self.sqle, dtype=bool)

    def renamed(self, name: str) -> FinitePHA:
        return replace(self, name=name)

    def __str__(self):
        return self.name or f"pha({self.n})"


def from_functions(
    n: int,
    leq: Callable[[int, int], bool],
    top: int,
    bot: int,
    imp: Callable[[int, int], int],
    meet: Callable[[int, int], int],
    join: Callable[[int, int], int],
    forall: Callable[[list[int]], int],
    exists: Callable[[list[int]], int],
    sqle: Optional[Callable[[int, int], bool]] = None,
    names: Sequence[str] = (),
    name: str = "",
) -> FinitePHA:
    r = range(n)
    sqle = sqle or leq
    return FinitePHA(
        n=n,
        leq=tuple(tuple(bool(leq(a, b)) for b in r) for a in r),
        sqle=tuple(tuple(bool(sqle(a, b)) for b in r) for a in r),
        top=top,
        bot=bot,
        imp=tuple(tuple(imp(a, b) for b in r) for a in r),
        and_=tuple(tuple(meet(a, b) for b in r) for a in r),
        or_=tuple(tuple(join(a, b) for b in r) for a in r),
        forall=tuple(forall(members(s)) for s in range(1 << n)),
        exists=tuple(exists(members(s)) for s in range(1 << n)),
        names=tuple(names),
        name=name,
    )


# ---------------------------------------------------------------------------
# Builders


def chain_n(k: int) -> FinitePHA:
    """The ``k``-element Heyting chain ``0 < 1/(k-1) < ... < 1``."""
    if k < 2:
        raise ValueError("a chain needs at least two elements")
    top = k - 1
    return from_functions(
        k,
        leq=lambda a, b: a <= b,
        top=top,
        bot=0,
        imp=lambda a, b: top if a <= b else b,
        meet=min,
        join=max,
        forall=lambda s: min(s, default=top),
        exists=lambda s: max(s, default=0),
        names=[str(Fraction(i, k - 1)) for i in range(k)],
        name=f"chain_{k}",
    )


def boolean_2() -> FinitePHA:
    return chain_n(2).renamed("boolean_2")


def product(b1: FinitePHA, b2: FinitePHA) -> FinitePHA:
    """Componentwise product; element ``(i, j)`` has index ``i * b2.n + j``."""
    n2 = b2.n

    def split(x):
        return divmod(x, n2)

    def pair(i, j):
        return i * n2 + j

    def lift(op1, op2):
        def op(x, y):
            (x1, x2), (y1, y2) = split(x), split(y)
            return pair(op1[x1][y1], op2[x2][y2])
        return op

    def quant(q1, q2):
        def q(s):
            return pair(q1[to_mask(split(x)[0] for x in s)], q2[to_mask(split(x)[1] for x in s)])
        return q

    def rel(r1, r2):
        def r(x, y):
            (x1, x2), (y1, y2) = split(x), split(y)
            return r1[x1][y1] and r2[x2][y2]
        return r

    n = b1.n * n2
    return from_functions(
        n,
        leq=rel(b1.leq, b2.leq),
        sqle=rel(b1.sqle, b2.sqle),
        top=pair(b1.top, b2.top),
        bot=pair(b1.bot, b2.bot),
        imp=lift(b1.imp, b2.imp),
        meet=lift(b1.and_, b2.and_),
        join=lift(b1.or_, b2.or_),
        forall=quant(b1.forall, b2.forall),
        exists=quant(b1.exists, b2.exists),
        names=[f"({b1.label(i)},{b2.label(j)})" for i in range(b1.n) for j in range(n2)],
        name=f"product({b1},{b2})",
    )


def pre3() -> FinitePHA:
    """Three elements ``0, 1, 1'`` where ``1`` and ``1'`` are equivalent but
    distinct under the pre-order.  Operations follow the two-element Boolean
    algebra on the collapse; ``⊑`` is the chain ``0 ⊑ 1 ⊑ 1'`` and meets,
    joins and quantifiers pick its minimum or maximum."""
    truth = (0, 1, 1)
    return from_functions(
        3,
        leq=lambda a, b: truth[a] <= truth[b],
        sqle=lambda a, b: a <= b,
        top=2,
        bot=0,
        imp=lambda a, b: 2 if truth[a] <= truth[b] else 0,
        meet=min,
        join=max,
        forall=lambda s: min(s, default=2),
        exists=lambda s: max(s, default=0),
        names=["0", "1", "1'"],
        name="pre3",
    )


def bundled() -> dict[str, FinitePHA]:
    algebras = [boolean_2()] + [chain_n(k) for k in range(2, 6)]
    algebras += [product(boolean_2(), boolean_2()), pre3()]
    return {b.name: b for b in algebras}


def builtin(name: str) -> FinitePHA:
    if name.startswith("chain_"):
        return chain_n(int(name.split("_", 1)[1]))
    table = bundled()
    if name not in table:
        raise KeyError(f"unknown algebra {name!r}; known: {sorted(table)}")
    return table[name]


# ---------------------------------------------------------------------------
# Pseudo-Heyting axioms


def _down_masks(rel: BoolTable) -> list[int]:
    """``out[x]`` is the mask of elements ``y`` with ``rel[y][x]``."""
    n = len(rel)
    return [to_mask(y for y in range(n) if rel[y][x]) for x in range(n)]


def _up_masks(rel: BoolTable) -> list[int]:
    n = len(rel)
    return [to_mask(y for y in range(n) if rel[x][y]) for x in range(n)]


def _subset_fold(n: int, per_elem: list[int], empty: int, op) -> list[int]:
    out = [empty] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        out[s] = op(out[s ^ low], per_elem[low.bit_length() - 1])
    return out


def check_pha(B: FinitePHA) -> Verdict:
    """Exhaustively check the seven pseudo-Heyting clauses."""
    v = Verdict()
    n, le, lab = B.n, B.leq, B.label
    r = range(n)
    for a in r:
        if not le[a][a]:
            v.fail("clause 1", f"not reflexive at {lab(a)}")
        for b in r:
            for c in r:
                if le[a][b] and le[b][c] and not le[a][c]:
                    v.fail("clause 1", f"not transitive at a={lab(a)}, b={lab(b)}, c={lab(c)}")
    for a in r:
        if not le[a][B.top]:
            v.fail("clause 2", f"a={lab(a)} is not below top")
        if not le[B.bot][a]:
            v.fail("clause 2", f"a={lab(a)} is not above bot")
    for a in r:
        for b in r:
            m, j = B.and_[a][b], B.or_[a][b]
            if not (le[m][a] and le[m][b]):
                v.fail("clause 3", f"a={lab(a)}, b={lab(b)}: meet is not a lower bound")
            if not (le[a][j] and le[b][j]):
                v.fail("clause 4", f"a={lab(a)}, b={lab(b)}: join is not an upper bound")
            for c in r:
                if le[c][a] and le[c][b] and not le[c][m]:
                    v.fail("clause 3", f"a={lab(a)}, b={lab(b)}, c={lab(c)}: meet is not greatest")
                if le[a][c] and le[b][c] and not le[j][c]:
                    v.fail("clause 4", f"a={lab(a)}, b={lab(b)}, c={lab(c)}: join is not least")
    full = (1 << n) - 1
    lower = _subset_fold(n, _down_masks(le), full, int.__and__)
    upper = _subset_fold(n, _up_masks(le), full, int.__and__)
    down, up = _down_masks(le), _up_masks(le)
    for s in range(1 << n):
        f, e = B.forall[s], B.exists[s]
        if not (lower[s] >> f) & 1:
            v.fail("clause 5", f"S={_fmt_set(B, s)}: forall is not a lower bound")
        if lower[s] & ~down[f]:
            v.fail("clause 5", f"S={_fmt_set(B, s)}: forall is not greatest")
        if not (upper[s] >> e) & 1:
            v.fail("clause 6", f"S={_fmt_set(B, s)}: exists is not an upper bound")
        if upper[s] & ~up[e]:
            v.fail("clause 6", f"S={_fmt_set(B, s)}: exists is not least")
    for a in r:
        for b in r:
            for c in r:
                if le[a][B.imp[b][c]] != le[B.and_[a][b]][c]:
                    v.fail("clause 7", f"a={lab(a)}, b={lab(b)}, c={lab(c)}: residuation fails")
    return v


def _fmt_set(B: FinitePHA, s: int) -> str:
    return "{" + ", ".join(B.label(x) for x in members(s)) + "}"


# ---------------------------------------------------------------------------
# Ordered and complete


def set_order_matrix(B: FinitePHA, order: str = "egli-milner") -> np.ndarray:
    """``M[S, T]`` iff subset ``S`` is below subset ``T`` for the lifted ``⊑``.

    ``"egli-milner"``: every element of S is below some element of T and
    every element of T is above some element of S.  ``"lower"`` keeps only
    the first half.
    """
    n = B.n
    full = (1 << n) - 1
    up = np.array(_subset_fold(n, _up_masks(B.sqle), 0, int.__or__), dtype=np.int64)
    down = np.array(_subset_fold(n, _down_masks(B.sqle), 0, int.__or__), dtype=np.int64)
    masks = np.arange(1 << n, dtype=np.int64)
    lower = (masks[:, None] & (full & ~down[None, :])) == 0
    if order == "lower":
        return lower
    if order != "egli-milner":
        raise ValueError(f"unknown set order {order!r}")
    upper = (masks[None, :] & (full & ~up[:, None])) == 0
    return lower & upper


def check_ordered(B: FinitePHA, set_order: str = "egli-milner") -> Verdict:
    v = Verdict()
    n, sq, le, lab = B.n, B.sqle, B.leq, B.label
    r = range(n)
    for a in r:
        if not sq[a][a]:
            v.fail("partial order", f"not reflexive at {lab(a)}")
        for b in r:
            if a != b and sq[a][b] and sq[b][a]:
                v.fail("partial order", f"not antisymmetric at {lab(a)}, {lab(b)}")
            if sq[a][b] and not le[a][b]:
                v.fail("refinement", f"{lab(a)} ⊑ {lab(b)} but not {lab(a)} ≤ {lab(b)}")
            for c in r:
                if sq[a][b] and sq[b][c] and not sq[a][c]:
                    v.fail("partial order", f"not transitive at {lab(a)}, {lab(b)}, {lab(c)}")
    for b in r:
        if b != B.top and sq[B.top][b]:
            v.fail("top maximal", f"top ⊑ {lab(b)}")
    for a in r:
        for a2 in r:
            if a == a2 or not sq[a][a2]:
                continue
            for b in r:
                for label, t in (("meet", B.and_), ("join", B.or_)):
                    if not sq[t[a][b]][t[a2][b]] or not sq[t[b][a]][t[b][a2]]:
                        v.fail("monotonicity", f"{label} not monotone in {lab(a)} ⊑ {lab(a2)} with {lab(b)}")
                if not sq[B.imp[a2][b]][B.imp[a][b]]:
                    v.fail("monotonicity", f"implication not left anti-monotone in {lab(a)} ⊑ {lab(a2)} with {lab(b)}")
                if not sq[B.imp[b][a]][B.imp[b][a2]]:
                    v.fail("monotonicity", f"implication not right monotone in {lab(a)} ⊑ {lab(a2)} with {lab(b)}")
    rel = set_order_matrix(B, set_order)
    sqn = B.sqle_np
    for label, q in (("forall", B.forall), ("exists", B.exists)):
        qa = np.array(q)
        bad = rel & ~sqn[qa[:, None], qa[None, :]]
        for s, t in np.argwhere(bad)[:10]:
            v.fail("monotonicity", f"{label} not monotone: {_fmt_set(B, int(s))} ⊑ {_fmt_set(B, int(t))}")
        extra = int(bad.sum()) - 10
        if extra > 0:
            v.fail("monotonicity", f"{label}: {extra} more violations")
    return v


def sqle_bounds(B: FinitePHA) -> tuple[list[Optional[int]], list[Optional[int]]]:
    """Greatest lower and least upper ``⊑``-bounds of every subset (``None``
    when missing), indexed by bitmask."""
    n = B.n
    full = (1 << n) - 1
    down, up = _down_masks(B.sqle), _up_masks(B.sqle)
    lbs = _subset_fold(n, down, full, int.__and__)
    ubs = _subset_fold(n, up, full, int.__and__)
    glbs: list[Optional[int]] = []
    lubs: list[Optional[int]] = []
    for s in range(1 << n):
        glbs.append(next((g for g in members(lbs[s]) if not lbs[s] & ~down[g]), None))
        lubs.append(next((l for l in members(ubs[s]) if not ubs[s] & ~up[l]), None))
    return glbs, lubs


def check_complete(B: FinitePHA) -> Verdict:
    v = Verdict()
    glbs, lubs = sqle_bounds(B)
    for s in range(1 << B.n):
        if glbs[s] is None:
            v.fail("glb", f"{_fmt_set(B, s)} has no greatest lower bound for ⊑")
        if lubs[s] is None:
            v.fail("lub", f"{_fmt_set(B, s)} has no least upper bound for ⊑")
    return v


def check_all(B: FinitePHA) -> Verdict:
    v = Verdict()
    v.extend(check_pha(B), "pha ")
    v.extend(check_ordered(B), "ordered ")
    v.extend(check_complete(B), "complete ")
    return v


# ---------------------------------------------------------------------------
# Semantic a-translation


def a_translate(B: FinitePHA, a: int) -> FinitePHA:
    """The ``a``-translation: every operation precomposed with
    ``b |-> (b => a) => a``.  The refinement order is kept as is."""
    if not 0 <= a < B.n:
        raise ValueError(f"element {a} outside the carrier")
    d = [B.dneg(b, a) for b in range(B.n)]
    r = range(B.n)
    return FinitePHA(
        n=B.n,
        leq=tuple(tuple(B.leq[d[b]][d[c]] for c in r) for b in r),
        sqle=B.sqle,
        top=B.top,
        bot=B.bot,
        imp=tuple(tuple(B.imp[d[b]][d[c]] for c in r) for b in r),
        and_=tuple(tuple(B.and_[d[b]][d[c]] for c in r) for b in r),
        or_=tuple(tuple(B.or_[d[b]][d[c]] for c in r) for b in r),
        forall=tuple(B.forall[to_mask(d[x] for x in members(s))] for s in range(1 << B.n)),
        exists=tuple(B.exists[to_mask(d[x] for x in members(s))] for s in range(1 << B.n)),
        names=B.names,
        name=f"{B}^{B.label(a)}",
    )


INEQUALITIES = {
    1: "b ≤ a ⊃ b",
    2: "(a ⊃ b) ∧ a ≤ b",
    3: "b ≤ (b ⊃ a) ⊃ a",
    4: "a ⊃ b ≤ a ⊃ c",
    5: "c ⊃ a ≤ b ⊃ a",
    6: "(b ⊃ a) ⊃ a ≤ (c ⊃ a) ⊃ a",
    7: "((b ⊃ a) ⊃ a) ⊃ a ≤ b ⊃ a",
}


def check_implication_inequalities(B: FinitePHA) -> Verdict:
    """The seven implication inequalities; 4-6 assume ``b ≤ c``."""
    v = Verdict()
    le, imp, lab = B.leq, B.imp, B.label
    r = range(B.n)
    for a, b in itertools.product(r, r):
        checks = {
            1: le[b][imp[a][b]],
            2: le[B.and_[imp[a][b]][a]][b],
            3: le[b][B.dneg(b, a)],
            7: le[imp[B.dneg(b, a)][a]][imp[b][a]],
        }
        for c in r:
            if le[b][c]:
                checks[4] = checks.get(4, True) and le[imp[a][b]][imp[a][c]]
                checks[5] = checks.get(5, True) and le[imp[c][a]][imp[b][a]]
                checks[6] = checks.get(6, True) and le[B.dneg(b, a)][B.dneg(c, a)]
                for k in (4, 5, 6):
                    if not checks[k]:
                        v.fail(f"eq {k}", f"a={lab(a)}, b={lab(b)}, c={lab(c)}: {INEQUALITIES[k]}")
                        checks[k] = True
        for k in (1, 2, 3, 7):
            if not checks[k]:
                v.fail(f"eq {k}", f"a={lab(a)}, b={lab(b)}: {INEQUALITIES[k]}")
    return v


check_prop41 = check_implication_inequalities


# ---------------------------------------------------------------------------
# Files


def _bits(t: BoolTable) -> list[list[int]]:
    return [[int(x) for x in row] for row in t]


def to_json(B: FinitePHA) -> dict:
    return {
        "name": B.name,
        "n": B.n,
        "names": list(B.names),
        "leq": _bits(B.leq),
        "sqle": _bits(B.sqle),
        "top": B.top,
        "bot": B.bot,
        "imp": [list(r) for r in B.imp],
        "and": [list(r) for r in B.and_],
        "or": [list(r) for r in B.or_],
        "forall": list(B.forall),
        "exists": list(B.exists),
    }


def from_json(d: dict) -> FinitePHA:
    def bools(t):
        return tuple(tuple(bool(x) for x in row) for row in t)

    def ints(t):
        return tuple(tuple(int(x) for x in row) for row in t)

    return FinitePHA(
        n=d["n"],
        leq=bools(d["leq"]),
        sqle=bools(d.get("sqle", d["leq"])),
        top=d["top"],
        bot=d["bot"],
        imp=ints(d["imp"]),
        and_=ints(d["and"]),
        or_=ints(d["or"]),
        forall=tuple(d["forall"]),
        exists=tuple(d["exists"]),
        names=tuple(d.get("names", ())),
        name=d.get("name", ""),
    )


def load_algebra(source: str) -> FinitePHA:
    """A builtin name (``chain_3``, ``pre3``, ...) or a JSON file path."""
    if source.endswith(".json"):
        with open(source) as f:
            return from_json(json.load(f))
    return builtin(source)
