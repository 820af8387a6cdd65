"""Hypothesis strategies for formulas, teams and structures."""

from hypothesis import strategies as st

from teamsem.syntax import (
    And, Const, Dep, EqAtom, Exists, Forall, GuardedExists, GuardedForall, Imp,
    Or, RelAtom, Tensor, Var, Wand,
)

VARS = ("x", "y", "z")
names = st.sampled_from(VARS)
terms = st.one_of(names.map(Var), st.sampled_from(("c0", "c1")).map(Const))


def _rel(args, positive):
    return RelAtom("P" if len(args) == 1 else "Q", tuple(args), positive)


literals = st.one_of(
    st.builds(_rel, st.lists(terms, min_size=1, max_size=2), st.booleans()),
    st.builds(EqAtom, terms, terms, st.booleans()),
)
deps = st.builds(Dep, st.lists(names, max_size=2).map(tuple), names)
atoms = st.one_of(literals, deps)


def _guarded(node):
    @st.composite
    def build(draw, body):
        v = draw(names)
        ws = draw(st.lists(st.sampled_from([w for w in VARS if w != v]), max_size=2))
        return node(v, tuple(ws), draw(body))
    return build


def _extend(children):
    binary = st.sampled_from((And, Or, Imp, Tensor, Wand))
    return st.one_of(
        st.builds(lambda n, a, b: n(a, b), binary, children, children),
        st.builds(Forall, names, children),
        st.builds(Exists, names, children),
        _guarded(GuardedExists)(children),
        _guarded(GuardedForall)(children),
    )


formulas = st.recursive(atoms, _extend, max_leaves=12)

flat_formulas = st.recursive(
    literals,
    lambda ch: st.one_of(
        st.builds(And, ch, ch), st.builds(Tensor, ch, ch),
        st.builds(Forall, names, ch), st.builds(Exists, names, ch)),
    max_leaves=10,
)
