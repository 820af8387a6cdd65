import json

import pytest

import oracle
from teamsem.errors import BoundExceeded, NoWitness
from teamsem.evaluation import TruthValue, truth_value
from teamsem.laws import (
    ARMSTRONG, IMPLICATIONAL, PAIRING, SUITES, armstrong_suite, d_from_c_check,
    d_from_c_formula, diagram_check, element_constants, full_abstraction_witness,
    implicational_suite, proposition_sweep, replay, run_suite, small_structure,
    sweep_structure, team_counterexample,
)
from teamsem.model import Structure, Team, rel
from teamsem.parser import parse, to_text
from teamsem.report import Report


@pytest.fixture(scope="module")
def small_sweep():
    return proposition_sweep(depth=2, cap=200)


def test_small_structure():
    m = small_structure(3, predicate=["1"])
    assert m.universe == ("0", "1", "2")
    assert m.constants["c2"] == "2" and m.constants["1"] == "1"
    assert m.relations["P"].tuples == {("1",)}
    assert sweep_structure().relations["P"].tuples == {("0",)}


def test_small_sweep_passes(small_sweep):
    assert small_sweep.passed, small_sweep.to_text()
    names = {r.law for r in small_sweep.results}
    assert {"downward-closure", "empty-team", "trivalence", "dual-path", "flatness",
            "wand-breaks-empty-team", "trivalence-all-values-occur"} <= names
    assert small_sweep.scale["formulas"] > 100


def test_sweep_is_deterministic_for_a_seed():
    a = proposition_sweep(depth=1, cap=50, seed=7)
    b = proposition_sweep(depth=1, cap=50, seed=7)
    assert a.scale == b.scale and [r.to_json() for r in a.results] == [r.to_json() for r in b.results]


def test_trivalence_witnesses_have_the_claimed_values(small_sweep):
    m = sweep_structure()
    note = small_sweep.get("trivalence-all-values-occur").note
    for part in note.split("; "):
        value, text = part.split(": ", 1)
        assert truth_value(m, parse(text, constants=m.constants)).value == value


def test_wand_witness_fails_on_empty_team(small_sweep):
    cex = small_sweep.get("wand-breaks-empty-team").counterexample
    assert cex["team"]["members"] == [] and "-*" in cex["formula"]
    assert replay(cex)


def test_replay_detects_a_forged_outcome():
    m = small_structure(2)
    f = parse("C(x)")
    t = Team.of(["x"], [{"x": "0"}, {"x": "1"}])
    honest = team_counterexample(m, ["x"], f, t, False)
    assert replay(honest)
    forged = dict(honest, observed=True)
    assert not replay(forged)
    assert replay(json.loads(json.dumps(honest)))
    with pytest.raises(ValueError):
        replay({"kind": "operator"})


@pytest.mark.parametrize("name", ["lift", "quantale", "heyting", "representation", "dependence",
                                  "d-from-c", "diagram"])
def test_algebraic_suites_pass(name):
    rep = run_suite(name)
    assert rep.passed, rep.to_text()
    assert all(r.checked > 0 for r in rep.results)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
    assert "all" in SUITES


def test_sweep_backed_suites_select_their_laws():
    rep = run_suite("downward", depth=1, cap=50)
    assert [r.law for r in rep.results] == ["downward-closure"]
    rep = run_suite("empty-team", depth=1, cap=50)
    assert {r.law for r in rep.results} == {"empty-team", "wand-breaks-empty-team"}


def test_representation_counts():
    rep = run_suite("representation")
    assert rep.get("join-primes are the principal down-sets |X|=1").note.startswith("4 join-primes among 6")


def test_full_abstraction_dependence_vs_constancy(m2):
    sep = full_abstraction_witness(m2, parse("D(x ; y)"), parse("C(y)"))
    assert sep.report.passed
    assert oracle.as_plain(sep.witness) == {(("x", "0"), ("y", "0")), (("x", "1"), ("y", "1"))}
    assert sep.structure.relations[sep.relation].tuples == rel(sep.witness, sep.order)
    assert truth_value(sep.structure, sep.context) is TruthValue.TRUE
    assert truth_value(sep.structure, sep.context_psi) is not TruthValue.TRUE
    assert "[·]" in sep.hole_context


def test_full_abstraction_replays_from_text(m2):
    sep = full_abstraction_witness(m2, parse("x = x"), parse("C(x)"))
    assert oracle.as_plain(sep.witness) == {(("x", "0"),), (("x", "1"),)}
    again = Structure.from_json(json.loads(json.dumps(sep.structure.to_json())))
    f = parse(to_text(sep.context), constants=again.constants)
    assert truth_value(again, f) is TruthValue.TRUE


def test_full_abstraction_fresh_relation_name(m2):
    m = m2.with_relation("R", 1, [("0",)])
    sep = full_abstraction_witness(m, parse("x = x"), parse("C(x)"))
    assert sep.relation == "R1"


def test_no_witness(m2):
    with pytest.raises(NoWitness):
        full_abstraction_witness(m2, parse("C(y)"), parse("D(x ; y)"))
    with pytest.raises(NoWitness):
        full_abstraction_witness(m2, parse("C(x)"), parse("C(x)"))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_diagram(n):
    rep = diagram_check(small_structure(n))
    assert rep.passed and rep.results[0].note == f"{n + 1} teams each"


def test_element_constants_adds_missing_names():
    m = Structure(("a", "b"), {}, {"c0": "b"})
    ext, names = element_constants(m)
    assert names == ["c0'", "c1"]
    assert ext.constants["c0'"] == "a" and ext.constants["c1"] == "b"


def test_d_from_c():
    assert d_from_c_formula((), "x") is None
    assert to_text(d_from_c_formula(("x", "y"), "z")) == "C(x) /\\ C(y) -> C(z)"
    rep = d_from_c_check(small_structure(2), ("x", "y", "z"), ("x", "y"), "z")
    assert rep.passed and rep.get("team sweep agrees").checked == 256
    rep = d_from_c_check(small_structure(3), ("x", "y"), (), "y")
    assert rep.passed and [r.law for r in rep.results] == ["denotations equal"]
    with pytest.raises(BoundExceeded):
        d_from_c_check(small_structure(3), ("x", "y", "z"), ("x",), "z")


def test_armstrong_and_implicational_agree():
    arm = armstrong_suite()
    imp = implicational_suite()
    assert arm.passed and imp.passed
    assert arm.scale["teams"] == 256
    for a, i in PAIRING.items():
        assert arm.get(a).passed == imp.get(i).passed
    assert len(ARMSTRONG) == len(IMPLICATIONAL) == 5
    assert not imp.get("Peirce ((p -> q) -> p) -> p").asserted


def test_armstrong_sampled_is_seeded():
    m = small_structure(3)
    a = armstrong_suite(m, sample=64, seed=1)
    b = armstrong_suite(m, sample=64, seed=1)
    assert a.passed and a.seed == 1 and a.scale["sampled"]
    assert [r.checked for r in a.results] == [r.checked for r in b.results] == [64] * 5


def test_report_json_round_trip():
    rep = run_suite("dependence")
    back = Report.from_json(json.loads(rep.dumps()))
    assert back.to_json() == rep.to_json()
