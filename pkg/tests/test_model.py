import json

import pytest
from hypothesis import given, strategies as st

import oracle
from teamsem.errors import BoundExceeded, DomainError, MissingValue, StructureError
from teamsem.model import (
    Assignment, Structure, Team, all_assignments, all_teams, check_team_in,
    equiv_w, extend_all, extend_fn, full_team, rel,
)

A2 = ("0", "1")


def team(domain, *rows):
    return Team.of(domain, [dict(r) for r in rows])


def test_assignment_is_sorted_and_overwrites():
    s = Assignment({"y": "1", "x": "0"})
    assert list(s) == [("x", "0"), ("y", "1")]
    assert s.extend("x", "1").as_dict() == {"x": "1", "y": "1"}
    assert s.restrict(["y"]) == Assignment({"y": "1"})
    with pytest.raises(DomainError):
        s.value("z")


def test_extend_all_examples():
    t = team(["x"], {"x": "0"})
    assert extend_all(t, "y", A2) == team(["x", "y"], {"x": "0", "y": "0"}, {"x": "0", "y": "1"})
    empty = Team.of(["x"])
    assert extend_all(empty, "y", A2).members == frozenset()
    both = team(["x"], {"x": "0"}, {"x": "1"})
    assert extend_all(both, "x", A2) == both


def test_extend_fn_examples():
    t = team(["x"], {"x": "0"}, {"x": "1"})
    assert extend_fn(t, "y", lambda s: s.value("x")) == team(["x", "y"], {"x": "0", "y": "0"}, {"x": "1", "y": "1"})
    assert extend_fn(Team.of(["x"]), "y", lambda s: "0").members == frozenset()
    # rebinding merges assignments
    assert extend_fn(t, "x", lambda s: "0") == team(["x"], {"x": "0"})


def test_extend_fn_needs_a_total_function():
    t = team(["x"], {"x": "0"}, {"x": "1"})
    with pytest.raises(MissingValue):
        extend_fn(t, "y", {Assignment({"x": "0"}): "1"})


@given(st.sets(st.sampled_from(all_assignments(["x"], A2))), st.sampled_from(["y", "z"]))
def test_extend_all_is_the_union_of_constant_extensions(members, v):
    t = Team(frozenset({"x"}), frozenset(members))
    union = frozenset().union(*(extend_fn(t, v, lambda s, a=a: a).members for a in A2))
    assert extend_all(t, v, A2).members == union


def test_equiv_w():
    s, t = Assignment({"x": "0", "y": "1"}), Assignment({"x": "0", "y": "0"})
    assert equiv_w(s, t, ["x"])
    assert not equiv_w(s, t, ["x", "y"])
    assert equiv_w(s, t, [])
    with pytest.raises(DomainError):
        equiv_w(s, t, ["z"])


@given(st.sampled_from(all_assignments(["x", "y", "z"], A2)),
       st.sampled_from(all_assignments(["x", "y", "z"], A2)),
       st.sets(st.sampled_from("xyz")), st.sets(st.sampled_from("xyz")))
def test_equiv_w_refines(s, t, w1, w2):
    big = w1 | w2
    if equiv_w(s, t, big):
        assert equiv_w(s, t, w1)


def test_rel_examples():
    assert rel(team(["x", "y"], {"x": "0", "y": "1"}), ["x", "y"]) == {("0", "1")}
    assert rel(Team.of(["x", "y"]), ["x", "y"]) == frozenset()
    t = team(["x", "y"], {"x": "0", "y": "1"}, {"x": "1", "y": "0"})
    assert rel(t, ["y", "x"]) == {("1", "0"), ("0", "1")}
    with pytest.raises(DomainError):
        rel(t, ["x"])


def test_rel_is_injective():
    ts = all_teams(["x", "y"], A2)
    assert len({rel(t, ["y", "x"]) for t in ts}) == len(ts)


def test_all_teams_counts():
    assert len(all_teams(["x"], A2)) == 4
    assert len(all_teams(["x", "y"], A2)) == 16
    assert [len(t) for t in all_teams([], A2)] == [0, 1]
    assert len(all_teams(["x", "y", "z"], A2)) == 256
    assert len(set(all_teams(["x", "y"], A2))) == 16


def test_all_teams_matches_brute_force_powerset():
    got = {oracle.as_plain(t) for t in all_teams(["x", "y"], A2)}
    assert got == set(oracle.teams(["x", "y"], A2))


def test_all_teams_bound():
    with pytest.raises(BoundExceeded):
        all_teams(["x", "y", "z"], ("0", "1", "2"))
    assert len(all_teams(["x"], ("0", "1", "2"), bound=3)) == 8
    with pytest.raises(BoundExceeded):
        all_teams(["x", "y"], A2, bound=3)


def test_team_set_operations():
    a = team(["x"], {"x": "0"})
    b = team(["x"], {"x": "1"})
    assert (a | b) == full_team(["x"], A2)
    assert (a & b).members == frozenset()
    assert ((a | b) - a) == b
    assert a <= a | b and a < a | b
    assert [len(s) for s in (a | b).subteams()] == [0, 1, 1, 2]


def test_structure_json_roundtrip(tmp_path, mr):
    path = tmp_path / "m.json"
    mr.dump(path)
    assert Structure.load(path) == mr
    assert Structure.from_json(json.loads(path.read_text())) == mr


@pytest.mark.parametrize("doc", [
    {"universe": []},
    {"universe": ["0", "0"]},
    {"universe": ["0"], "relations": {"P": {"arity": 1, "tuples": [["1"]]}}},
    {"universe": ["0"], "relations": {"P": {"arity": 2, "tuples": [["0"]]}}},
    {"universe": ["0"], "constants": {"c": "1"}},
    {"universe": ["0"], "colour": "red"},
    {"universe": [0, 1]},
])
def test_structure_rejects_bad_documents(doc):
    with pytest.raises(StructureError):
        Structure.from_json(doc)


def test_team_json_roundtrip(tmp_path):
    t = team(["x", "y"], {"x": "0", "y": "1"}, {"x": "1", "y": "1"})
    t.dump(tmp_path / "t.json")
    assert Team.load(tmp_path / "t.json") == t
    assert Team.from_json(Team.of([]).to_json()) == Team.of([])


@pytest.mark.parametrize("doc", [
    {"domain": ["x"], "members": [{"y": "0"}]},
    {"domain": ["x", "x"], "members": []},
    {"domain": ["x"]},
])
def test_team_rejects_bad_documents(doc):
    with pytest.raises((StructureError, DomainError)):
        Team.from_json(doc)


def test_check_team_in(m2):
    check_team_in(team(["x"], {"x": "1"}), m2)
    with pytest.raises(StructureError):
        check_team_in(team(["x"], {"x": "7"}), m2)
