"""Hypothesis strategies for propositions."""

from hypothesis import strategies as st

from modulo.syntax import BOT, TOP, And, Atom, Exists, Fn, Forall, Imp, Or, Var

VARS = st.sampled_from(["x", "y", "z"])
TERMS = st.one_of(VARS.map(Var), st.just(Fn("c")), VARS.map(lambda v: Fn("f", (Var(v),))))
ATOMS = st.one_of(
    st.sampled_from(["P", "Q", "S"]).map(Atom),
    TERMS.map(lambda t: Atom("U", (t,))),
    st.just(TOP),
    st.just(BOT),
)


def props(max_leaves: int = 12, quantifiers: bool = True):
    def extend(children):
        binary = st.sampled_from([Imp, And, Or])
        out = st.builds(lambda k, a, b: k(a, b), binary, children, children)
        if quantifiers:
            out = out | st.builds(lambda k, v, b: k(v, b), st.sampled_from([Forall, Exists]), VARS, children)
        return out
    return st.recursive(ATOMS, extend, max_leaves=max_leaves)
