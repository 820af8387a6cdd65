import pytest
from hypothesis import given, settings

from strategies import formulas
from teamsem.parser import ParseError, parse, to_text
from teamsem.syntax import (
    And, C, Const, D, Dep, EqAtom, Exists, Forall, GuardedExists,
    GuardedForall, Imp, Or, P, RelAtom, Tensor, Var, Wand, eq,
)

CONSTS = ("c0", "c1")


@pytest.mark.parametrize("src, expected", [
    ("D(x ; y)", Dep(("x",), "y")),
    ("forall x. P(x) -> C(y)", Forall("x", Imp(P("P", "x"), C("y")))),
    ("C(x) /\\ C(y) -> C(z)", Imp(And(C("x"), C("y")), C("z"))),
    ("D(y, x ; z)", D(["x", "y"], "z")),
    ("D( ; z)", C("z")),
    ("!P(x)", P("P", "x", positive=False)),
    ("!(x = y)", eq("x", "y", positive=False)),
    ("x = y", eq("x", "y")),
    ("exists y \\ x . P(y)", GuardedExists("y", ("x",), P("P", "y"))),
    ("forall y \\ x, z . P(y)", GuardedForall("y", ("x", "z"), P("P", "y"))),
    ("exists y \\ . P(y)", GuardedExists("y", (), P("P", "y"))),
    ("R()", RelAtom("R", ())),
])
def test_parse_examples(src, expected):
    assert parse(src) == expected


def test_precedence_and_associativity():
    a, b, c = P("A", "x"), P("B", "x"), P("E", "x")
    assert parse("A(x) /\\ B(x) * E(x)") == Tensor(And(a, b), c)
    assert parse("A(x) * B(x) \\/ E(x)") == Or(Tensor(a, b), c)
    assert parse("A(x) \\/ B(x) -> E(x)") == Imp(Or(a, b), c)
    assert parse("A(x) -> B(x) -> E(x)") == Imp(a, Imp(b, c))
    assert parse("A(x) -* B(x) -* E(x)") == Wand(a, Wand(b, c))
    assert parse("A(x) /\\ B(x) /\\ E(x)") == And(And(a, b), c)
    assert parse("(A(x) -> B(x)) -> E(x)") == Imp(Imp(a, b), c)


def test_quantifier_body_extends_as_far_as_possible():
    assert parse("exists x. P(x) /\\ P(y)") == Exists("x", And(P("P", "x"), P("P", "y")))
    assert parse("(exists x. P(x)) /\\ P(y)") == And(Exists("x", P("P", "x")), P("P", "y"))


def test_constants_are_declared_names():
    f = parse("x = c0", constants=CONSTS)
    assert f == EqAtom(Var("x"), Const("c0"))
    assert parse("x = c0") == EqAtom(Var("x"), Var("c0"))


def test_dependence_dialect_reads_split_disjunction():
    assert parse("x = c0 \\/ x = c1", dialect="dependence") == parse("x = c0 * x = c1")
    with pytest.raises(ValueError):
        parse("C(x)", dialect="nope")


@pytest.mark.parametrize("src", [
    "(", "P(x", "x =", "forall . P(x)", "D(x ; y ; z)", "A(x) -> B(x) -* E(x)",
    "P(x) Q(x)", "!C(x)", "!(P(x) /\\ P(y))", "exists y \\ y . P(y)", "x = y = z", "@",
])
def test_parse_errors(src):
    with pytest.raises(ParseError):
        parse(src)


def test_parse_error_renders_a_caret():
    with pytest.raises(ParseError) as info:
        parse("P(x) /\\\n  Q(x) )")
    err = info.value
    assert (err.line, err.column) == (2, 8)
    lines = err.render().splitlines()
    assert lines[1].strip() == "Q(x) )"
    assert lines[2].index("^") == lines[1].rindex(")")


@pytest.mark.parametrize("f, text", [
    (Tensor(EqAtom(Var("x"), Const("0")), EqAtom(Var("x"), Const("1"))), "x = 0 * x = 1"),
    (Dep((), "v"), "C(v)"),
    (GuardedExists("y", ("x",), P("P", "y")), "exists y \\ x . P(y)"),
    (D(["x", "z"], "y"), "D(x, z ; y)"),
    (eq("x", "y", positive=False), "!(x = y)"),
    (Forall("x", Imp(P("P", "x"), C("y"))), "forall x. P(x) -> C(y)"),
    (And(Exists("x", P("P", "x")), P("P", "y")), "(exists x. P(x)) /\\ P(y)"),
])
def test_print_examples(f, text):
    assert to_text(f) == text


def test_unicode_printing():
    f = parse("forall x. C(x) /\\ !P(x) -* x = y * x = z \\/ exists y. P(y)")
    assert to_text(f, unicode=True) == "∀x. C(x) ∧ ¬P(x) ⊸ x = y ⊗ x = z ∨ ∃y. P(y)"


@settings(max_examples=300)
@given(formulas)
def test_parse_print_roundtrip(f):
    assert parse(to_text(f), constants=CONSTS) == f


@settings(max_examples=200)
@given(formulas)
def test_print_parse_is_idempotent(f):
    once = to_text(parse(to_text(f), constants=CONSTS))
    assert to_text(parse(once, constants=CONSTS)) == once
