"""Command-line entry point.

Exit codes: 0 verified/found, 1 refuted, 2 unknown or budget/fuel
exhausted, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from typing import Callable, Optional

from . import natded as nd
from . import pha
from .atrans import TranslationContext, UnboundViolation, atrans_prop, atrans_system, kolmogorov
from .parser import ParseError, parse_prop, print_prop
from .rewrite import DEFAULT_FUEL, Normal, RewriteError, RewriteSystem, Tri, congruent, format_system, load_system, normalize
from .semantics import (
    DEFAULT_BUDGET, BudgetExhausted, check_translation_commutes, graft, is_model, load_structure,
    model_search, stability_witness, structure_to_json, superconsistency_probe,
)
from .sequent import ProofError, check, format_proof, load_proof, proof_to_json
from .translate import FrozenAtom, Representation, translate_clas_to_int, translate_int_to_clas
from .verdict import Verdict

USAGE = 3


class UsageError(Exception):
    pass


def data_path(name: str) -> str:
    return str(resources.files("modulo") / "data" / name)


def resolve(path: str) -> str:
    """A file path, falling back to the bundled data directory by basename."""
    if os.path.exists(path):
        return path
    bundled = data_path(os.path.basename(path))
    if os.path.exists(bundled):
        return bundled
    raise UsageError(f"no such file: {path}")


def load_R(path: Optional[str]) -> RewriteSystem:
    return load_system(resolve(path)) if path else RewriteSystem()


class Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.report: dict = {}

    def say(self, text: str, **fields):
        self.report.update(fields)
        if not self.as_json:
            print(text)

    def verdict(self, v: Verdict, label: str = "") -> int:
        self.report[label or "verdict"] = v.to_json()
        if not self.as_json:
            print(f"{label + ': ' if label else ''}{v}")
        return v.exit_code

    def done(self, code: int) -> int:
        if self.as_json:
            self.report.setdefault("exit", code)
            print(json.dumps(self.report, indent=1, default=str))
        return code


# ---------------------------------------------------------------------------
# Commands


def cmd_parse(args, out: Out) -> int:
    p = parse_prop(args.prop)
    out.say(print_prop(p, unicode=args.unicode), prop=print_prop(p))
    return 0


def cmd_normalize(args, out: Out) -> int:
    r = normalize(parse_prop(args.prop), load_R(args.system), args.fuel)
    if isinstance(r, Normal):
        out.say(f"{print_prop(r.prop)}   ({r.steps} steps)", normal=print_prop(r.prop), steps=r.steps)
        return 0
    msg = "diverges" if r.divergent else "fuel exhausted"
    out.say(f"{msg} after {r.steps} steps: {print_prop(r.prop)}", status=msg, steps=r.steps)
    return 2


def cmd_congruent(args, out: Out) -> int:
    r = congruent(parse_prop(args.lhs), parse_prop(args.rhs), load_R(args.system), args.fuel)
    out.say(r.value, congruent=r.value)
    return {Tri.YES: 0, Tri.NO: 1, Tri.UNKNOWN: 2}[r]


def cmd_atrans_prop(args, out: Out) -> int:
    b = parse_prop(args.prop)
    if args.kolmogorov:
        res = kolmogorov(b)
    else:
        if not args.a:
            raise UsageError("--a is required unless --kolmogorov is given")
        res = atrans_prop(b, TranslationContext(parse_prop(args.a), allow_open=args.allow_open))
    out.say(print_prop(res, unicode=args.unicode), result=print_prop(res))
    return 0


def cmd_atrans_system(args, out: Out) -> int:
    RA = atrans_system(load_R(args.system), TranslationContext(parse_prop(args.a), allow_open=args.allow_open))
    out.say(format_system(RA).rstrip(), rules=[str(r) for r in RA.rules])
    return 0


def cmd_pha_check(args, out: Out) -> int:
    B = pha.load_algebra(args.algebra)
    codes = [
        out.verdict(pha.check_pha(B), "pseudo-Heyting"),
        out.verdict(pha.check_ordered(B, args.set_order), "ordered"),
        out.verdict(pha.check_complete(B), "complete"),
        out.verdict(pha.check_implication_inequalities(B), "implication inequalities"),
    ]
    return max(codes)


def cmd_pha_atrans(args, out: Out) -> int:
    B = pha.load_algebra(args.algebra)
    C = pha.a_translate(B, args.element)
    if args.out:
        with open(args.out, "w") as f:
            json.dump(pha.to_json(C), f)
    out.report["algebra"] = pha.to_json(C)
    if not out.as_json:
        print(f"{C}: leq")
        for i in range(C.n):
            print("  " + " ".join("1" if C.leq[i][j] else "." for j in range(C.n)) + f"   {C.label(i)}")
    return max(out.verdict(pha.check_pha(C), "pseudo-Heyting"),
               out.verdict(pha.check_ordered(C), "ordered"),
               out.verdict(pha.check_complete(C), "complete"))


def cmd_model_check(args, out: Out) -> int:
    return out.verdict(is_model(load_structure(args.structure), load_R(args.system)), "model")


def cmd_model_search(args, out: Out) -> int:
    B = pha.load_algebra(args.algebra)
    try:
        S = model_search(load_R(args.system), B, args.m, args.budget)
    except BudgetExhausted as e:
        out.say(str(e), status="budget exhausted")
        return 2
    if S is None:
        out.say("no model", status="none")
        return 1
    js = structure_to_json(S)
    if args.out:
        with open(args.out, "w") as f:
            json.dump(js, f, indent=1)
    out.say(json.dumps(js), status="found", structure=js)
    return 0


def cmd_probe(args, out: Out) -> int:
    names = args.algebras.split(",") if args.algebras else list(pha.bundled())
    ms = [int(m) for m in args.m.split(",")]
    rep = superconsistency_probe(load_R(args.system), [pha.load_algebra(n) for n in names], ms, args.budget)
    out.say(str(rep), probe=rep.to_json())
    if rep.refuted:
        return 1
    return 2 if "inconclusive" in rep.summary else 0


def cmd_graft(args, out: Out) -> int:
    M2 = graft(load_structure(args.m0), load_structure(args.m1), parse_prop(args.a))
    js = structure_to_json(M2)
    if args.out:
        with open(args.out, "w") as f:
            json.dump(js, f, indent=1)
    out.say(json.dumps(js), structure=js)
    return 0


def cmd_commute(args, out: Out) -> int:
    S = load_structure(args.structure)
    return out.verdict(check_translation_commutes(S, parse_prop(args.a), args.samples, args.seed), "commutation")


def cmd_proof_check(args, out: Out) -> int:
    p = load_proof(resolve(args.proof))
    if args.show and not out.as_json:
        print(format_proof(p))
    return out.verdict(check(p, load_R(args.system), args.calc, args.fuel), args.calc)


def cmd_translate_ci(args, out: Out) -> int:
    R = load_R(args.system)
    a = parse_prop(args.a)
    ip = translate_clas_to_int(load_proof(resolve(args.proof)), a, R)
    if args.out:
        with open(args.out, "w") as f:
            json.dump(proof_to_json(ip), f)
    out.say(f"conclusion: {ip.concl}   ({ip.size()} nodes)", conclusion=str(ip.concl))
    v = check(ip, atrans_system(R, a), "intuitionistic", args.fuel)
    frozen = FrozenAtom(a).violations(ip)
    for path in frozen:
        v.fail(path, "right rule on the frozen parameter")
    return out.verdict(v, "intuitionistic check under the translated system")


def cmd_translate_ic(args, out: Out) -> int:
    R = load_R(args.system)
    a = parse_prop(args.a)
    ip = load_proof(resolve(args.proof))
    if args.rep:
        with open(args.rep) as f:
            rep = Representation.from_json(json.load(f))
    else:
        rep = Representation.induced(ip.concl, a)
    cp = translate_int_to_clas(ip, rep, a, R, args.fuel)
    if args.out:
        with open(args.out, "w") as f:
            json.dump(proof_to_json(cp), f)
    out.say(f"conclusion: {cp.concl}   ({cp.size()} nodes)", conclusion=str(cp.concl))
    return out.verdict(check(cp, R, "classical", args.fuel), "classical check")


def _ctx(entries) -> dict:
    ctx = {}
    for e in entries or ():
        name, _, ty = e.partition(":")
        if not ty:
            raise UsageError(f"context entries look like x:PROP, got {e!r}")
        ctx[name.strip()] = parse_prop(ty)
    return ctx


def cmd_natded_check(args, out: Out) -> int:
    t = nd.parse_term(args.term)
    return out.verdict(nd.type_check(t, parse_prop(args.type), load_R(args.system), _ctx(args.ctx), args.fuel), "type check")


def _report_reduction(r, out: Out) -> int:
    if isinstance(r, nd.Normal):
        out.say(f"normal after {r.steps} steps: {nd.print_term(r.term)}", status="normal", steps=r.steps)
        return 0
    if isinstance(r, nd.Cycle):
        lines = [f"cycle of period {r.period} entered after {r.start} steps:"]
        lines += [f"  {nd.print_term(t, unicode=True)}" for t in r.trace]
        lines.append(f"  back to {nd.print_term(r.trace[0], unicode=True)}")
        out.say("\n".join(lines), status="cycle", period=r.period, start=r.start,
                trace=[nd.print_term(t) for t in r.trace])
        return 0
    out.say(f"fuel exhausted after {r.steps} steps", status="fuel exhausted", steps=r.steps)
    return 2


def cmd_natded_reduce(args, out: Out) -> int:
    return _report_reduction(nd.reduce(nd.parse_term(args.term), args.fuel, args.strategy), out)


# ---------------------------------------------------------------------------
# Demos


def demo_cut_proof_q(args, out: Out) -> int:
    from .scenarios import cut_proof_q, sys_p_imp_q
    p = cut_proof_q()
    if not out.as_json:
        print(format_proof(p))
    return out.verdict(check(p, sys_p_imp_q(), "classical", args.fuel), "classical")


def demo_two_step_p(args, out: Out) -> int:
    from .scenarios import sys_p_imp_p, two_step_proof_p
    p = two_step_proof_p()
    if not out.as_json:
        print(format_proof(p))
    return out.verdict(check(p, sys_p_imp_p(), "classical", args.fuel), "classical")


def demo_loop(args, out: Out) -> int:
    ex = nd.build_loop_example()
    codes = [out.verdict(nd.type_check(ex.t1, ex.t1_type, ex.R), "t1"),
             out.verdict(nd.type_check(ex.t2, ex.t2_type, ex.R), "t2")]
    r = nd.reduce(ex.loop, args.fuel if args.fuel < DEFAULT_FUEL else 100, nd.FULL)
    codes.append(_report_reduction(r, out))
    return 0 if isinstance(r, nd.Cycle) and max(codes) == 0 else 1


def demo_self_application(args, out: Out) -> int:
    t, R, goal = nd.build_self_application()
    code = out.verdict(nd.type_check(t, goal, R), "typed at Q")
    r = nd.reduce(t, 10, nd.FULL)
    _report_reduction(r, out)
    return 0 if isinstance(r, nd.Cycle) and code == 0 else 1


def demo_translate_cut(args, out: Out) -> int:
    from .scenarios import S, cut_proof_q, sys_p_imp_q
    R = sys_p_imp_q()
    ip = translate_clas_to_int(cut_proof_q(), S, R)
    out.say(f"translated conclusion: {ip.concl}   ({ip.size()} nodes)")
    v = check(ip, atrans_system(R, S), "intuitionistic", args.fuel)
    for path in FrozenAtom(S).violations(ip):
        v.fail(path, "right rule on the frozen parameter")
    return out.verdict(v, "intuitionistic")


def demo_stability(args, out: Out) -> int:
    from .scenarios import sys_p_imp_p, sys_top_and_top
    from .syntax import Atom
    a = Atom("Q")
    code = 0
    for label, R in (("P -> top /\\ top", sys_top_and_top()), ("P -> P => P", sys_p_imp_p())):
        for B in pha.bundled().values():
            M2 = stability_witness(R, a, B, 1, args.budget)
            ok = M2 is not None and is_model(M2, atrans_system(R, a)).ok
            code = max(code, 0 if ok else 1)
            out.say(f"{label:<18} {str(B):<30} {'witness' if ok else 'FAILED'}")
    return code


def demo_probe(args, out: Out) -> int:
    from .scenarios import sys_top_and_top, sys_translated_top_and_top
    code = 0
    for label, R in (("P -> top /\\ top", sys_top_and_top()), ("translated", sys_translated_top_and_top())):
        rep = superconsistency_probe(R, pha.bundled().values(), (1, 2), args.budget)
        out.say(f"{label}: {rep.summary}")
        code = max(code, 1 if rep.refuted else 0)
    return code


DEMOS: dict[str, Callable] = {
    "cut-proof-q": demo_cut_proof_q,
    "two-step-p": demo_two_step_p,
    "loop": demo_loop,
    "self-application": demo_self_application,
    "translate-cut": demo_translate_cut,
    "stability": demo_stability,
    "probe": demo_probe,
}


def cmd_demo(args, out: Out) -> int:
    return DEMOS[args.name](args, out)


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=int, default=DEFAULT_FUEL, help="rewrite/reduction step bound")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="model search candidate bound")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable report")

    ap = argparse.ArgumentParser(prog="modulo", description="Deduction modulo workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, aliases=()):
        p = sub.add_parser(name, parents=[common], help=help_, aliases=list(aliases))
        p.set_defaults(fn=fn)
        return p

    p = add("parse", cmd_parse, "parse and pretty-print a proposition")
    p.add_argument("prop")
    p.add_argument("--unicode", action="store_true")

    p = add("normalize", cmd_normalize, "rewrite to normal form")
    p.add_argument("prop")
    p.add_argument("--system")

    p = add("congruent", cmd_congruent, "decide congruence of two propositions")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--system")

    p = add("atrans-prop", cmd_atrans_prop, "A-translate a proposition")
    p.add_argument("prop")
    p.add_argument("--a")
    p.add_argument("--kolmogorov", action="store_true")
    p.add_argument("--allow-open", action="store_true")
    p.add_argument("--unicode", action="store_true")

    p = add("atrans-system", cmd_atrans_system, "A-translate a rewrite system")
    p.add_argument("--system", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--allow-open", action="store_true")

    p = add("pha-check", cmd_pha_check, "check algebra axioms")
    p.add_argument("algebra", help="builtin name or JSON file")
    p.add_argument("--set-order", default="egli-milner", choices=["egli-milner", "lower"])

    p = add("pha-atrans", cmd_pha_atrans, "semantic a-translation of an algebra")
    p.add_argument("algebra")
    p.add_argument("--element", type=int, required=True)
    p.add_argument("--out")

    p = add("model-check", cmd_model_check, "check a structure is a model")
    p.add_argument("--structure", required=True)
    p.add_argument("--system", required=True)

    p = add("model-search", cmd_model_search, "search a model")
    p.add_argument("--system", required=True)
    p.add_argument("--algebra", default="boolean_2")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--out")

    p = add("probe", cmd_probe, "finite super-consistency probe")
    p.add_argument("--system", required=True)
    p.add_argument("--algebras", help="comma-separated; default all bundled")
    p.add_argument("--m", default="1,2", help="comma-separated domain sizes")

    p = add("graft", cmd_graft, "graft two structures")
    p.add_argument("--m0", required=True)
    p.add_argument("--m1", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--out")

    p = add("commute-check", cmd_commute, "sample that syntactic and semantic translation agree",
            aliases=["propag1-check"])
    p.add_argument("--structure", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--samples", type=int, default=1000)

    p = add("proof-check", cmd_proof_check, "check a sequent proof")
    p.add_argument("proof")
    p.add_argument("--system")
    p.add_argument("--calc", default="classical", choices=["classical", "intuitionistic"])
    p.add_argument("--show", action="store_true")

    p = add("translate-ci", cmd_translate_ci, "classical to intuitionistic proof translation")
    p.add_argument("proof")
    p.add_argument("--system")
    p.add_argument("--a", required=True)
    p.add_argument("--out")

    p = add("translate-ic", cmd_translate_ic, "intuitionistic to classical proof translation")
    p.add_argument("proof")
    p.add_argument("--system")
    p.add_argument("--a", required=True)
    p.add_argument("--rep", help="representation JSON; default induced from the conclusion")
    p.add_argument("--out")

    p = add("natded-check", cmd_natded_check, "type check a proof term")
    p.add_argument("term")
    p.add_argument("--type", required=True)
    p.add_argument("--system")
    p.add_argument("--ctx", nargs="*", help="x:PROP entries")

    p = add("natded-reduce", cmd_natded_reduce, "reduce a proof term with cycle detection")
    p.add_argument("term")
    p.add_argument("--strategy", default=nd.FULL, choices=[nd.FULL, nd.LEFTMOST_OUTERMOST])

    p = add("demo", cmd_demo, "replay a worked example")
    p.add_argument("name", choices=sorted(DEMOS))
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else USAGE
    out = Out(args.json)
    try:
        code = args.fn(args, out)
    except (UsageError, ParseError, nd.TermParseError, RewriteError, UnboundViolation,
            ProofError, KeyError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    return out.done(code)


def main() -> None:
    sys.exit(run())
