import pytest
from hypothesis import given

from strategies import flat_formulas, formulas
from teamsem.errors import FragmentError
from teamsem.syntax import (
    And, C, Const, D, Dep, Exists, Forall, Fragment, GuardedExists,
    GuardedForall, Imp, Or, P, RelAtom, Tensor, Var, Wand, children, classify,
    demorgan_dual, depth, eq, expand_guard, foralls, free_vars, subformulas,
)


def test_dep_governors_are_sorted_and_deduplicated():
    assert Dep(("y", "x", "y"), "z") == Dep(("x", "y"), "z")
    assert Dep(("y", "x"), "z").governors == ("x", "y")


def test_constancy_is_dependence_on_nothing():
    assert C("v") == D([], "v") == Dep((), "v")


def test_guard_must_not_mention_its_variable():
    with pytest.raises(ValueError):
        GuardedExists("x", ("x",), P("P", "x"))


@pytest.mark.parametrize("f, expected", [
    (D(["x"], "y"), {"x", "y"}),
    (Forall("x", eq("x", "y")), {"y"}),
    (GuardedExists("y", ("x",), P("P", "y")), {"x"}),
    (eq("x", Const("c0")), {"x"}),
    (Exists("x", Forall("y", D(["x"], "y"))), set()),
])
def test_free_vars(f, expected):
    assert free_vars(f) == expected


def test_free_vars_of_guard_matches_expansion():
    g = GuardedExists("y", ("x",), P("P", "y"))
    assert free_vars(g) == free_vars(expand_guard(g)) == {"x"}


def test_expand_guard_shapes():
    body = P("P", "y")
    assert expand_guard(GuardedExists("y", ("x",), body)) == Exists("y", And(D(["x"], "y"), body))
    assert expand_guard(GuardedForall("y", ("x",), body)) == Forall("y", Imp(D(["x"], "y"), body))


def test_demorgan_examples():
    px, qy = P("P", "x"), P("Q", "y")
    assert demorgan_dual(Tensor(px, qy)) == And(P("P", "x", positive=False), P("Q", "y", positive=False))
    assert demorgan_dual(Exists("v", P("P", "v"))) == Forall("v", P("P", "v", positive=False))
    assert demorgan_dual(eq("x", "y")) == eq("x", "y", positive=False)


@pytest.mark.parametrize("f", [C("x"), Or(P("P", "x"), P("P", "y")), Imp(C("x"), C("y")),
                               Wand(C("x"), C("y")), GuardedExists("y", (), C("y"))])
def test_demorgan_refuses_outside_its_fragment(f):
    with pytest.raises(FragmentError):
        demorgan_dual(f)


@given(flat_formulas)
def test_demorgan_is_an_involution(f):
    assert demorgan_dual(demorgan_dual(f)) == f


@given(flat_formulas)
def test_demorgan_keeps_free_variables(f):
    assert free_vars(demorgan_dual(f)) == free_vars(f)


@pytest.mark.parametrize("f, frag", [
    (And(P("P", "x"), eq("y", "z")), Fragment.FO_FLAT),
    (D(["x"], "y"), Fragment.DEP),
    (GuardedExists("y", ("x",), P("P", "y")), Fragment.DEP),
    (Or(C("x"), C("y")), Fragment.BID_MINUS),
    (GuardedForall("y", ("x",), P("P", "y")), Fragment.BID_MINUS),
    (Wand(P("P", "x"), P("Q", "x", "x")), Fragment.BID),
])
def test_classify(f, frag):
    assert classify(f) is frag


@given(formulas)
def test_classify_is_monotone_under_subformulas(f):
    assert all(classify(f) >= classify(g) for g in subformulas(f))


@given(flat_formulas)
def test_flat_generator_stays_flat(f):
    assert classify(f) is Fragment.FO_FLAT


def test_depth_counts_atoms_as_zero():
    assert depth(C("x")) == 0
    assert depth(And(C("x"), Forall("y", C("y")))) == 2


def test_children_and_foralls():
    f = foralls(["x", "y"], C("x"))
    assert f == Forall("x", Forall("y", C("x")))
    assert children(f) == (Forall("y", C("x")),)
    assert children(C("x")) == ()


def test_formulas_are_hashable_values():
    a = And(RelAtom("P", [Var("x")]), C("y"))
    b = And(RelAtom("P", (Var("x"),)), Dep((), "y"))
    assert a == b and hash(a) == hash(b)
