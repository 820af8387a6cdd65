"""Executable law suites over small finite structures.

Each suite returns a :class:`~teamsem.report.Report`.  Laws that come with a
team-level counterexample record it in a form :func:`replay` can re-run
through the evaluator.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Sequence

from .algebra import (
    LowerSet, all_lower_sets, atoms, check_adjunction, denote, dep_lowerset,
    down, exists_h, exists_pi, forall_h, forall_pi, from_normal_form,
    guarded_exists_op, guarded_forall_op, heyting, is_join_prime, join,
    join_all, lift, meet, normal_form, normal_form_leq, preimage_pi, principal,
    subst_h, tensor, wand,
)
from .errors import NoWitness
from .evaluation import (
    DEFAULT_BOUNDS, Bounds, EvalContext, Evaluator, TruthValue, bind,
    dep_holds, dep_holds_functional, resolve_constants, tarski, truth_value,
)
from .generate import FormulaSpace
from .model import Assignment, Structure, Team, all_assignments, all_teams
from .parser import parse, to_text
from .report import LawResult, Report, merge
from .syntax import (
    C, Const, Dep, EqAtom, Forall, Formula, Fragment, GuardedExists,
    GuardedForall, Imp, RelAtom, Var, classify, conj,
    disj, expand_guard, foralls, free_vars, subformulas, tensor_all,
)

DEFAULT_SEED = 20240601


def small_structure(n: int, predicate: Iterable[str] | None = None) -> Structure:
    """Universe ``0..n-1``; each element is named both by itself and by ``c<i>``.

    With ``predicate`` given, a unary relation ``P`` holding of those elements.
    """
    universe = tuple(str(i) for i in range(n))
    consts = {a: a for a in universe} | {f"c{i}": a for i, a in enumerate(universe)}
    rels = {} if predicate is None else {"P": (1, [(a,) for a in predicate])}
    return Structure(universe, rels, consts)


def sweep_structure(n: int = 2) -> Structure:
    """The structure sweeps run on: ``small_structure(n)`` with ``P = {0}``."""
    return small_structure(n, predicate=["0"])


# replayable counterexamples

def team_counterexample(structure: Structure, variables: Iterable[str], f: Formula,
                        team: Team, observed: bool, **extra) -> dict:
    return {
        "kind": "satisfies",
        "structure": structure.to_json(),
        "variables": sorted(variables),
        "formula": to_text(f),
        "team": team.to_json(),
        "observed": observed,
        **extra,
    }


def replay(cex: dict, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    """Re-evaluate a recorded ``satisfies`` counterexample; True when the
    evaluator reproduces the recorded outcome."""
    if cex.get("kind") != "satisfies":
        raise ValueError(f"cannot replay counterexample of kind {cex.get('kind')!r}")
    structure = Structure.from_json(cex["structure"])
    f = parse(cex["formula"], constants=structure.constants)
    team = Team.from_json(cex["team"])
    ctx = EvalContext(structure, frozenset(cex["variables"]), bounds)
    ev = Evaluator(structure, bounds)
    return ev.sat(bind(ctx, f), team) == cex["observed"]


# formula sweeps

CURATED = [
    # (text, scope)
    ("C(x) -* x = c0", ("x",)),
    ("forall x. x = x", ()),
    ("forall x. !(x = x)", ()),
    ("(forall x. x = x) -* (forall x. !(x = x))", ()),
    ("x = c0 * x = c1", ("x",)),
    ("x = c0 \\/ x = c1", ("x",)),
    ("D(x ; y) -> C(y)", ("x", "y")),
    ("C(x) /\\ C(y) -> C(x)", ("x", "y")),
    ("exists y \\ x . x = y", ("x",)),
    ("forall y \\ x . P(y) \\/ x = y", ("x",)),
]


@dataclass
class _SweepStats:
    formulas: int = 0
    teams: int = 0
    sentences: int = 0
    bid_minus: int = 0
    flat: int = 0


def generated_formulas(depth: int, scopes: Sequence[Sequence[str]], cap: int,
                       rng: random.Random, space: FormulaSpace | None = None,
                       curated: bool = True):
    """(formula, scope) pairs for each depth up to ``depth`` and each scope;
    a depth is swept exhaustively when it has at most ``cap`` formulas and
    sampled otherwise, so shallow formulas can appear more than once."""
    space = space or FormulaSpace()
    if curated:
        for text, scope in CURATED:
            if tuple(scope) in {tuple(sorted(s)) for s in scopes}:
                yield parse(text), frozenset(scope)
    for scope in scopes:
        for d in range(depth + 1):
            for f in space.formulas(d, scope, cap, rng):
                yield f, frozenset(scope)


def proposition_sweep(structure: Structure | None = None, depth: int = 3,
                      scopes: Sequence[Sequence[str]] = ((), ("x",), ("x", "y")),
                      cap: int = 1000, seed: int = DEFAULT_SEED,
                      bounds: Bounds = DEFAULT_BOUNDS) -> Report:
    """Downward closure, the empty-team property, trivalence, flatness and
    the agreement of :func:`denote` with team satisfaction, over generated
    formulas.  Every team on each scope is tried."""
    structure = structure or sweep_structure()
    start = time.perf_counter()
    rng = random.Random(seed)
    stats = _SweepStats()
    fails: dict[str, dict | None] = {k: None for k in (
        "downward-closure", "empty-team", "trivalence", "dual-path", "flatness",
        "guard-coherence")}
    wand_witness: dict | None = None
    seen_values: dict[str, str] = {}

    for f, scope in generated_formulas(depth, scopes, cap, rng):
        stats.formulas += 1
        ctx = EvalContext(structure, scope, bounds)
        f = bind(ctx, f)
        ev = Evaluator(structure, bounds)
        teams = all_teams(scope, structure.universe, bounds.max_assignments)
        sat = {t: ev.sat(f, t) for t in teams}
        stats.teams += len(teams)
        frag = classify(f)
        empty = teams[0]

        if fails["downward-closure"] is None:
            for t in teams:
                if sat[t]:
                    bad = next((s for s in t.subteams() if not sat[s]), None)
                    if bad is not None:
                        fails["downward-closure"] = team_counterexample(
                            structure, scope, f, bad, False, superteam=t.to_json())
                        break

        if frag <= Fragment.BID_MINUS:
            stats.bid_minus += 1
            if not sat[empty] and fails["empty-team"] is None:
                fails["empty-team"] = team_counterexample(structure, scope, f, empty, False)
        elif not sat[empty] and wand_witness is None:
            wand_witness = team_counterexample(structure, scope, f, empty, False)

        if not scope:
            stats.sentences += 1
            value = _sentence_value(sat, teams)
            if value is None and fails["trivalence"] is None:
                fails["trivalence"] = team_counterexample(structure, scope, f, teams[1], sat[teams[1]])
            elif value is not None:
                seen_values.setdefault(value, to_text(f))

        if fails["dual-path"] is None:
            den = denote(structure, scope, f, bounds)
            for t in teams:
                if (t in den) != sat[t]:
                    fails["dual-path"] = team_counterexample(
                        structure, scope, f, t, sat[t], denote_member=t in den)
                    break

        if frag == Fragment.FO_FLAT:
            stats.flat += 1
            if fails["flatness"] is None:
                for t in teams:
                    member_wise = all(tarski(ctx, s, f) for s in t.members)
                    if member_wise != sat[t]:
                        fails["flatness"] = team_counterexample(structure, scope, f, t, sat[t])
                        break

        if fails["guard-coherence"] is None:
            for g in subformulas(f):
                if isinstance(g, (GuardedExists, GuardedForall)):
                    gscope = free_vars(g)
                    gev = Evaluator(structure, bounds)
                    for t in all_teams(gscope, structure.universe, bounds.max_assignments):
                        if gev.sat(g, t) != gev.sat(expand_guard(g), t):
                            fails["guard-coherence"] = team_counterexample(
                                structure, gscope, g, t, gev.sat(g, t))
                            break

    counts = {
        "downward-closure": stats.formulas, "empty-team": stats.bid_minus,
        "trivalence": stats.sentences, "dual-path": stats.formulas,
        "flatness": stats.flat, "guard-coherence": stats.formulas,
    }
    results = [LawResult(k, v is None, counts[k], v) for k, v in fails.items()]
    results.append(LawResult(
        "wand-breaks-empty-team", wand_witness is not None, stats.formulas - stats.bid_minus,
        wand_witness, note="" if wand_witness is None else f"witness: {wand_witness['formula']}"))
    all_three = {v.value for v in TruthValue} <= seen_values.keys()
    results.append(LawResult(
        "trivalence-all-values-occur", all_three, stats.sentences,
        note="; ".join(f"{k}: {v}" for k, v in sorted(seen_values.items()))))
    scale = {"|A|": len(structure.universe), "depth": depth,
             "scopes": [sorted(s) for s in scopes], "cap": cap, "formulas": stats.formulas,
             "team-checks": stats.teams}
    return Report("propositions", scale, results, time.perf_counter() - start, seed)


def _sentence_value(sat: dict[Team, bool], teams: Sequence[Team]) -> str | None:
    on_empty, on_unit = sat[teams[0]], sat[teams[1]]
    if on_unit and not on_empty:
        return None
    if on_unit:
        return TruthValue.TRUE.value
    return TruthValue.WEAK.value if on_empty else TruthValue.FALSE.value


def dep_equivalence_suite(structure: Structure | None = None,
                          domains: Sequence[Sequence[str]] = (("x",), ("x", "y")),
                          bounds: Bounds = DEFAULT_BOUNDS) -> Report:
    """The two phrasings of the dependence atom, and ``D_W`` from generators
    against ``D_W`` by filtering, on every team."""
    structure = structure or small_structure(2)
    start = time.perf_counter()
    results = []
    checked = 0
    cex = None
    lower_cex = None
    for dom in domains:
        teams = all_teams(dom, structure.universe, bounds.max_assignments)
        for v in dom:
            rest = sorted(set(dom) - {v})
            for k in range(len(rest) + 1):
                for ws in itertools.combinations(rest, k):
                    dw = dep_lowerset(ws, v, dom, structure.universe)
                    for t in teams:
                        checked += 1
                        a = dep_holds(t, ws, v)
                        b = dep_holds_functional(t, ws, v, structure.universe)
                        if a != b and cex is None:
                            cex = team_counterexample(structure, dom, Dep(ws, v), t, a)
                        if (t in dw) != a and lower_cex is None:
                            lower_cex = team_counterexample(structure, dom, Dep(ws, v), t, a)
    results.append(LawResult("dep-functional-equivalence", cex is None, checked, cex))
    results.append(LawResult("dep-lowerset-generators", lower_cex is None, checked, lower_cex))
    return Report("dependence", {"|A|": len(structure.universe),
                                 "domains": [list(d) for d in domains]},
                  results, time.perf_counter() - start)


# algebra suites

def _named(fn, name):
    fn.__name__ = name
    return fn


def lift_suite(n: int = 2) -> Report:
    """Hodges quantifiers as images of the Tarski ones, functoriality, and
    order enrichment of the lift."""
    start = time.perf_counter()
    universe = tuple(str(i) for i in range(n))
    results = []
    for src, v in ((("x", "y"), "y"), (("x",), "x")):
        lattice = all_lower_sets(src, universe)
        tgt = frozenset(src) - {v}
        l_exists = lift(lambda t: exists_pi(t, v), src, tgt)
        l_forall = lift(lambda t: forall_pi(t, v, universe), src, tgt)
        results.append(_op_equal(lambda u: exists_h(u, v), l_exists, lattice,
                                 f"exists_H = L(exists_pi) on {len(lattice)} lower sets over {list(src)}"))
        results.append(_op_equal(lambda u: forall_h(u, v), l_forall, lattice,
                                 f"forall_H = L(forall_pi) on {len(lattice)} lower sets over {list(src)}"))

    lattice2 = all_lower_sets(("x", "y"), universe)
    ident = lift(lambda t: t, ("x", "y"), ("x", "y"))
    results.append(_op_equal(lambda u: u, ident, lattice2, "L(id) = id"))

    # composites 𝓟(A^{x,y}) → 𝓟(A^{x}) → 𝓟(A^∅)
    g_ops = {"exists_pi[y]": lambda t: exists_pi(t, "y"),
             "forall_pi[y]": lambda t: forall_pi(t, "y", universe)}
    h_ops = {"exists_pi[x]": lambda t: exists_pi(t, "x"),
             "forall_pi[x]": lambda t: forall_pi(t, "x", universe)}
    for (gn, g), (hn, h) in itertools.product(g_ops.items(), h_ops.items()):
        whole = lift(lambda t, g=g, h=h: h(g(t)), ("x", "y"), ())
        steps = lift(g, ("x", "y"), ("x",)).then(lift(h, ("x",), ()))
        results.append(_op_equal(whole, steps, lattice2, f"L({hn}∘{gn}) = L({hn})∘L({gn})"))

    # order enrichment: pointwise h ≤ k gives L(h) ≤ L(k)
    pairs = [
        ("forall_pi[y] <= exists_pi[y]", g_ops["forall_pi[y]"], g_ops["exists_pi[y]"], ("x", "y"), ("x",)),
        ("id <= pre(exists_pi[y])", lambda t: t,
         lambda t: preimage_pi(exists_pi(t, "y"), "y", universe), ("x", "y"), ("x", "y")),
        ("pre(forall_pi[y]) <= id", lambda t: preimage_pi(forall_pi(t, "y", universe), "y", universe),
         lambda t: t, ("x", "y"), ("x", "y")),
    ]
    teams = all_teams(("x", "y"), universe)
    for name, h, k, src, tgt in pairs:
        pointwise = all(h(t) <= k(t) for t in teams)
        lh, lk = lift(h, src, tgt), lift(k, src, tgt)
        bad = next((u for u in lattice2 if not lh(u) <= lk(u)), None)
        results.append(LawResult(f"order-enrichment {name}", pointwise and bad is None, len(lattice2),
                                 None if bad is None else {"kind": "operator", "U": bad.to_json()}))

    # monotonicity of every quantifier operator
    for name, op in (("exists_H", lambda u: exists_h(u, "y")), ("forall_H", lambda u: forall_h(u, "y")),
                     ("subst_H", lambda u: subst_h(u, "z"))):
        bad = _monotone_failure(op, lattice2)
        results.append(LawResult(f"monotone {name}", bad is None, len(lattice2) ** 2, bad))
    return Report("lift", {"|A|": n, "|X|": "<=2"}, results, time.perf_counter() - start)


def _op_equal(f, g, elements, name) -> LawResult:
    for i, u in enumerate(elements, 1):
        a, b = f(u), g(u)
        if a != b:
            return LawResult(name, False, i, {"kind": "operator", "U": u.to_json(),
                                              "left": a.to_json(), "right": b.to_json()})
    return LawResult(name, True, len(elements))


def _monotone_failure(op, lattice) -> dict | None:
    images = [op(u) for u in lattice]
    for i, u in enumerate(lattice):
        for j, w in enumerate(lattice):
            if u <= w and not images[i] <= images[j]:
                return {"kind": "operator", "U": u.to_json(), "W": w.to_json()}
    return None


def adjunction_suite(n: int = 2, bounds: Bounds = DEFAULT_BOUNDS) -> Report:
    """Quantifiers as adjoints to substitution, residuation of ``⊗`` and of
    ``∧``, and the guarded quantifiers' adjoint characterisations, swept
    exhaustively for ``|X| <= 2``."""
    start = time.perf_counter()
    universe = tuple(str(i) for i in range(n))
    lat = {k: all_lower_sets(d, universe) for k, d in
           ((0, ()), (1, ("x",)), (2, ("x", "y")))}
    results = []

    for k, (small, big, v) in enumerate([((), ("x",), "x"), (("x",), ("x", "y"), "y")]):
        ls, lb = lat[len(small)], lat[len(big)]
        tag = f"{list(big)}->{list(small)}"
        results.append(check_adjunction(lambda u: exists_h(u, v, bounds=bounds),
                                        lambda w: subst_h(w, v), lb, ls,
                                        f"exists_H -| subst_H {tag}"))
        results.append(check_adjunction(lambda w: subst_h(w, v),
                                        lambda u: forall_h(u, v, bounds=bounds), ls, lb,
                                        f"subst_H -| forall_H {tag}"))

    for size in (1, 2):
        elems = lat[size]
        for law, left, right in (
            ("tensor(-,B) -| wand(B,-)", tensor, lambda b, c: wand(b, c, bounds)),
            ("meet(-,B) -| heyting(B,-)", meet, lambda b, c: heyting(b, c, bounds)),
        ):
            res = None
            total = 0
            for b in elems:
                r = check_adjunction(lambda a, b=b: left(a, b), lambda c, b=b: right(b, c),
                                     elems, elems, law)
                total += r.checked
                if not r.passed:
                    r.counterexample["B"] = b.to_json()
                    res = r
                    break
            results.append(res or LawResult(f"{law} |X|={size}", True, total))
            if res is not None:
                res.law = f"{law} |X|={size}"

    # Tarski level: exists_pi -| preimage -| forall_pi, on powersets
    for small, big, v in [((), ("x",), "x"), (("x",), ("x", "y"), "y")]:
        ps, pb = all_teams(small, universe), all_teams(big, universe)
        bad = None
        for s in pb:
            for t in ps:
                pre = preimage_pi(t, v, universe)
                if (exists_pi(s, v) <= t) != (s <= pre) or (pre <= s) != (t <= forall_pi(s, v, universe)):
                    bad = {"kind": "tarski", "S": s.to_json(), "T": t.to_json()}
        results.append(LawResult(f"exists_pi -| preimage -| forall_pi {list(big)}->{list(small)}",
                                 bad is None, len(ps) * len(pb), bad))

    # guarded quantifiers
    for small, big, v in [((), ("x",), "x"), (("x",), ("x", "y"), "y")]:
        ls, lb = lat[len(small)], lat[len(big)]
        for k in range(len(small) + 1):
            for ws in itertools.combinations(small, k):
                dw = dep_lowerset(ws, v, big, universe)
                tag = f"W={list(ws)} {list(big)}->{list(small)}"
                results.append(check_adjunction(
                    lambda u, ws=ws: guarded_exists_op(u, ws, v, bounds=bounds),
                    lambda w, dw=dw: heyting(dw, subst_h(w, v), bounds), lb, ls,
                    f"exists_W -| (D_W -> subst_H) {tag}"))
                results.append(check_adjunction(
                    lambda w, dw=dw: meet(dw, subst_h(w, v)),
                    lambda u, ws=ws: guarded_forall_op(u, ws, v, bounds=bounds), ls, lb,
                    f"(D_W /\\ subst_H) -| forall_W {tag}"))
    return Report("adjunctions", {"|A|": n, "|X|": "<=2"}, results, time.perf_counter() - start)


def quantale_suite(n: int = 2) -> Report:
    start = time.perf_counter()
    universe = tuple(str(i) for i in range(n))
    lat = all_lower_sets(("x",), universe)
    unit = principal(Team(frozenset({"x"}), frozenset()), universe)
    results = [
        _all_tuples("tensor associative", lat, 3, lambda a, b, c: tensor(tensor(a, b), c) == tensor(a, tensor(b, c))),
        _all_tuples("tensor commutative", lat, 2, lambda a, b: tensor(a, b) == tensor(b, a)),
        _all_tuples("tensor unit down({∅})", lat, 1, lambda a: tensor(a, unit) == a == tensor(unit, a)),
        _all_tuples("tensor monotone", lat, 3, lambda a, b, c: not a <= b or tensor(a, c) <= tensor(b, c)),
    ]
    # distributivity over arbitrary joins: every family of lattice elements
    bottom = LowerSet.bottom(("x",), universe)
    checked, bad = 0, None
    for a in lat:
        for k in range(len(lat) + 1):
            for family in itertools.combinations(lat, k):
                checked += 1
                lhs = tensor(a, join_all(family, ("x",), universe))
                rhs = join_all((tensor(a, s) for s in family), ("x",), universe)
                if lhs != rhs and bad is None:
                    bad = {"kind": "operator", "A": a.to_json(), "family": [s.to_json() for s in family]}
    results.append(LawResult("tensor distributes over all joins", bad is None, checked, bad))
    results.append(_all_tuples("tensor with bottom", lat, 1, lambda a: tensor(a, bottom) == bottom))
    # pairs at |X|=2 as well
    lat2 = all_lower_sets(("x", "y"), universe)
    results.append(_all_tuples("tensor commutative |X|=2", lat2, 2, lambda a, b: tensor(a, b) == tensor(b, a)))
    return Report("quantale", {"|A|": n, "|X|": 1}, results, time.perf_counter() - start)


def heyting_suite(n: int = 2) -> Report:
    start = time.perf_counter()
    universe = tuple(str(i) for i in range(n))
    lat = all_lower_sets(("x",), universe)
    top = LowerSet.top(("x",), universe)
    bottom = LowerSet.bottom(("x",), universe)
    results = [
        _all_tuples("meet/join commutative", lat, 2, lambda a, b: meet(a, b) == meet(b, a) and join(a, b) == join(b, a)),
        _all_tuples("meet/join associative", lat, 3,
                    lambda a, b, c: meet(meet(a, b), c) == meet(a, meet(b, c)) and join(join(a, b), c) == join(a, join(b, c))),
        _all_tuples("absorption", lat, 2, lambda a, b: meet(a, join(a, b)) == a == join(a, meet(a, b))),
        _all_tuples("distributive", lat, 3, lambda a, b, c: meet(a, join(b, c)) == join(meet(a, b), meet(a, c))),
        _all_tuples("bounds", lat, 1, lambda a: meet(a, top) == a == join(a, bottom)),
        _all_tuples("meet is intersection", lat, 2, lambda a, b: meet(a, b).members == a.members & b.members),
        _all_tuples("join is union", lat, 2, lambda a, b: join(a, b).members == a.members | b.members),
        _all_tuples("residuation U∩V ⊆ W iff U ⊆ V→W", lat, 3,
                    lambda u, v, w: (meet(u, v) <= w) == (u <= heyting(v, w))),
        _all_tuples("heyting is pointwise definition", lat, 2, lambda a, b: heyting(a, b).members == frozenset(
            m for m in all_teams(("x",), universe)
            if all((s not in a) or (s in b) for s in m.subteams()))),
        _all_tuples("wand is pointwise definition", lat, 2, lambda a, b: wand(a, b).members == frozenset(
            m for m in all_teams(("x",), universe) if all((m | s) in b for s in a.members))),
    ]
    return Report("heyting", {"|A|": n, "|X|": 1}, results, time.perf_counter() - start)


def _all_tuples(name: str, elems, k: int, law: Callable[..., bool]) -> LawResult:
    checked = 0
    for tup in itertools.product(elems, repeat=k):
        checked += 1
        if not law(*tup):
            return LawResult(name, False, checked, {"kind": "lattice", "elements": [t.to_json() for t in tup]})
    return LawResult(name, True, checked)


def representation_suite(n: int = 2) -> Report:
    """Join-primes, atoms, ``⊗`` against ``∨`` on principal down-sets, and the
    normal form ``⋁ᵢ ⊗ⱼ Aᵢⱼ``."""
    start = time.perf_counter()
    universe = tuple(str(i) for i in range(n))
    results = []
    lat1 = all_lower_sets(("x",), universe)
    primes = [u for u in lat1 if is_join_prime(u, lat1)]
    principal_sets = {principal(t, universe) for t in all_teams(("x",), universe)}
    results.append(LawResult("join-primes are the principal down-sets |X|=1",
                             set(primes) == principal_sets, len(lat1),
                             note=f"{len(primes)} join-primes among {len(lat1)} lower sets"))
    found_atoms = atoms(("x",), universe)
    singletons = {principal(Team(frozenset({"x"}), frozenset({s})), universe)
                  for s in all_assignments(("x",), universe)}
    results.append(LawResult("atoms are the double singletons |X|=1", set(found_atoms) == singletons,
                             len(primes), note=f"{len(found_atoms)} atoms"))
    for dom in (("x",), ("x", "y")):
        teams = all_teams(dom, universe)
        ok = all(tensor(principal(t, universe), principal(t, universe)) == principal(t, universe)
                 for t in teams)
        results.append(LawResult(f"tensor idempotent on join-primes |X|={len(dom)}", ok, len(teams)))
        closed = all(tensor(principal(s, universe), principal(t, universe)) == principal(s | t, universe)
                     for s in teams for t in teams)
        results.append(LawResult(f"join-primes closed under tensor |X|={len(dom)}", closed, len(teams) ** 2))
    # ⊗ and ∨ differ on the two singleton down-sets
    t1 = Team(frozenset({"x"}), frozenset({Assignment({"x": universe[0]})}))
    t2 = Team(frozenset({"x"}), frozenset({Assignment({"x": universe[-1]})}))
    p1, p2 = principal(t1, universe), principal(t2, universe)
    differ = (join(p1, p2) == down([t1, t2], universe=universe)
              and tensor(p1, p2) == principal(t1 | t2, universe)
              and join(p1, p2) != tensor(p1, p2))
    results.append(LawResult("join vs tensor of principal down-sets", differ, 1))
    for dom in (("x",), ("x", "y")):
        lat = all_lower_sets(dom, universe)
        nfs = [normal_form(u) for u in lat]
        roundtrip = all(from_normal_form(nf, dom, universe) == u for nf, u in zip(nfs, lat))
        results.append(LawResult(f"normal form round-trips |X|={len(dom)}", roundtrip, len(lat)))
        order = all(normal_form_leq(a, b) == (u <= w)
                    for (a, u), (b, w) in itertools.product(zip(nfs, lat), repeat=2))
        results.append(LawResult(f"normal-form order is inclusion |X|={len(dom)}", order, len(lat) ** 2))
        orderly = all(order_gen_ok(u, lat) for u in lat)
        results.append(LawResult(f"join-primes order-generate |X|={len(dom)}", orderly, len(lat)))
    return Report("representation", {"|A|": n, "|X|": "<=2"}, results, time.perf_counter() - start)


def order_gen_ok(u: LowerSet, lattice) -> bool:
    """``u`` is the join of the principal down-sets below it."""
    below = [principal(t, u.universe) for t in u.members]
    return join_all(below, u.domain, u.universe) == u


# dependence

def d_from_c_formula(governors: Sequence[str], v: str) -> Formula | None:
    """``(⋀_{w∈W} C(w)) → C(v)``; ``None`` for empty ``W``, whose conjunction
    is the top element and is handled algebraically."""
    if not governors:
        return None
    return Imp(conj(C(w) for w in governors), C(v))


def d_from_c_check(structure: Structure, variables: Sequence[str], governors: Sequence[str],
                   v: str, bounds: Bounds = DEFAULT_BOUNDS) -> Report:
    """``D(W, v)`` against ``(⋀ C(w)) → C(v)``: lower-set equality plus a sweep
    of every team through the evaluator."""
    start = time.perf_counter()
    dom = frozenset(variables)
    univ = structure.universe
    lhs = denote(structure, dom, Dep(tuple(governors), v), bounds)
    antecedent = reduce(meet, (denote(structure, dom, C(w), bounds) for w in governors),
                        LowerSet.top(dom, univ))
    rhs = heyting(antecedent, denote(structure, dom, C(v), bounds), bounds)
    results = [LawResult("denotations equal", lhs == rhs, 1,
                         None if lhs == rhs else {"kind": "operator", "D": lhs.to_json(), "C": rhs.to_json()})]
    f = d_from_c_formula(governors, v)
    teams = all_teams(dom, univ, bounds.max_assignments)
    if f is not None:
        ev = Evaluator(structure, bounds)
        dep = Dep(tuple(governors), v)
        bad = None
        for t in teams:
            if ev.sat(dep, t) != ev.sat(f, t):
                bad = team_counterexample(structure, dom, f, t, ev.sat(f, t))
                break
        results.append(LawResult("team sweep agrees", bad is None, len(teams), bad))
    scale = {"|A|": len(univ), "X": sorted(dom), "W": sorted(governors), "v": v, "teams": len(teams)}
    return Report("d-from-c", scale, results, time.perf_counter() - start)


def d_from_c_suite(sizes: Sequence[int] = (2, 3), variables: Sequence[str] = ("x", "y"),
                   bounds: Bounds = DEFAULT_BOUNDS) -> Report:
    start = time.perf_counter()
    results = []
    for n in sizes:
        m = small_structure(n)
        for v in variables:
            rest = [w for w in variables if w != v]
            for k in range(len(rest) + 1):
                for ws in itertools.combinations(rest, k):
                    rep = d_from_c_check(m, variables, ws, v, bounds)
                    for r in rep.results:
                        results.append(LawResult(f"|A|={n} D({','.join(ws)};{v}) {r.law}",
                                                 r.passed, r.checked, r.counterexample))
    return Report("d-from-c", {"|A|": list(sizes), "X": list(variables)}, results,
                  time.perf_counter() - start)


ARMSTRONG = {
    "(1) D(x;x)": "D(x ; x)",
    "(2) D(x,y;z) -> D(y,x;z)": "D(x, y ; z) -> D(y, x ; z)",
    "(3) D(x,x;y) -> D(x;y)": "D(x, x ; y) -> D(x ; y)",
    "(4) D(x;z) -> D(x,y;z)": "D(x ; z) -> D(x, y ; z)",
    "(5) D(x;y) /\\ D(y;z) -> D(x;z)": "D(x ; y) /\\ D(y ; z) -> D(x ; z)",
}

_P, _Q, _R = "C(x)", "C(y)", "C(z)"
IMPLICATIONAL = {
    "I": f"{_P} -> {_P}",
    "C": f"({_P} -> {_Q} -> {_R}) -> ({_Q} -> {_P} -> {_R})",
    "W": f"({_P} -> {_P} -> {_Q}) -> ({_P} -> {_Q})",
    "K": f"({_P} -> {_R}) -> ({_P} -> {_Q} -> {_R})",
    "B": f"({_P} -> {_Q}) -> ({_Q} -> {_R}) -> ({_P} -> {_R})",
}
K_STANDARD = f"{_P} -> {_Q} -> {_P}"
PEIRCE = f"(({_P} -> {_Q}) -> {_P}) -> {_P}"
# Armstrong axiom k corresponds to the k-th implicational axiom
PAIRING = dict(zip(ARMSTRONG, IMPLICATIONAL))


def _teams_for(structure: Structure, variables: Sequence[str], sample: int | None,
               rng: random.Random, bounds: Bounds) -> list[Team]:
    dom = frozenset(variables)
    if sample is None:
        return list(all_teams(dom, structure.universe, bounds.max_assignments))
    everything = all_assignments(dom, structure.universe)
    out = []
    for _ in range(sample):
        bits = rng.getrandbits(len(everything))
        out.append(Team(dom, frozenset(a for i, a in enumerate(everything) if bits >> i & 1)))
    return out


def _validity(name: str, structure: Structure, variables: Sequence[str], f: Formula,
              teams: Sequence[Team], ev: Evaluator, asserted: bool = True) -> LawResult:
    for i, t in enumerate(teams, 1):
        if not ev.sat(f, t):
            return LawResult(name, False, i, team_counterexample(structure, variables, f, t, False),
                             asserted=asserted)
    return LawResult(name, True, len(teams), asserted=asserted)


def armstrong_suite(structure: Structure | None = None, sample: int | None = None,
                    seed: int = DEFAULT_SEED, bounds: Bounds = DEFAULT_BOUNDS) -> Report:
    """Each Armstrong axiom, as an implication between dependence atoms, on
    every team over ``{x, y, z}`` (or ``sample`` seeded random teams)."""
    structure = structure or small_structure(2)
    start = time.perf_counter()
    variables = ("x", "y", "z")
    teams = _teams_for(structure, variables, sample, random.Random(seed), bounds)
    ev = Evaluator(structure, bounds, strategy="brute" if sample is None else "pruned")
    results = [_validity(name, structure, variables, parse(text), teams, ev)
               for name, text in ARMSTRONG.items()]
    scale = {"|A|": len(structure.universe), "X": list(variables), "teams": len(teams),
             "sampled": sample is not None}
    return Report("armstrong", scale, results, time.perf_counter() - start,
                  seed if sample is not None else None)


def implicational_suite(structure: Structure | None = None, sample: int | None = None,
                        seed: int = DEFAULT_SEED, bounds: Bounds = DEFAULT_BOUNDS) -> Report:
    """I, C, W, K, B with ``p, q, r = C(x), C(y), C(z)``, the standard K as a
    derived sixth check, and Peirce's law reported without an expected verdict."""
    structure = structure or small_structure(2)
    start = time.perf_counter()
    variables = ("x", "y", "z")
    teams = _teams_for(structure, variables, sample, random.Random(seed), bounds)
    ev = Evaluator(structure, bounds, strategy="brute" if sample is None else "pruned")
    results = [_validity(name, structure, variables, parse(text), teams, ev)
               for name, text in IMPLICATIONAL.items()]
    results.append(_validity("K standard (p -> q -> p)", structure, variables, parse(K_STANDARD), teams, ev))
    peirce = _validity("Peirce ((p -> q) -> p) -> p", structure, variables, parse(PEIRCE), teams, ev,
                       asserted=False)
    peirce.note = "valid on every team checked" if peirce.passed else "counterexample team found"
    results.append(peirce)
    scale = {"|A|": len(structure.universe), "X": list(variables), "teams": len(teams),
             "sampled": sample is not None}
    return Report("implicational", scale, results, time.perf_counter() - start,
                  seed if sample is not None else None)


# full abstraction

@dataclass
class Separation:
    structure: Structure
    context: Formula            # with the hole already filled by phi
    context_psi: Formula
    hole_context: str           # printed context with [.] for the hole
    witness: Team
    relation: str
    order: list[str]
    report: Report


def _fresh_relation(structure: Structure) -> str:
    name, i = "R", 0
    while name in structure.relations:
        i += 1
        name = f"R{i}"
    return name


def full_abstraction_witness(structure: Structure, phi: Formula, psi: Formula,
                             bounds: Bounds = DEFAULT_BOUNDS) -> Separation:
    """Separate two formulas by a sentential context.

    A team ``T`` in ``⟦phi⟧ ∖ ⟦psi⟧`` is chosen (smallest, then
    lexicographically least), a fresh relation ``R`` is interpreted by
    ``rel(T)`` so that ``R(v⃗)`` denotes ``↓T``, and the context
    ``∀v⃗. (R(v⃗) → [·])`` is built.  Both truth values are then computed,
    never assumed.
    """
    start = time.perf_counter()
    phi = resolve_constants(phi, structure, ())
    psi = resolve_constants(psi, structure, ())
    order = sorted(free_vars(phi) | free_vars(psi))
    dphi = denote(structure, order, phi, bounds)
    dpsi = denote(structure, order, psi, bounds)
    candidates = sorted((t for t in dphi.members if t not in dpsi), key=Team.sort_key)
    if not candidates:
        raise NoWitness(f"⟦{to_text(phi)}⟧ ⊆ ⟦{to_text(psi)}⟧ over {structure.universe}")
    witness = candidates[0]
    name = _fresh_relation(structure)
    from .model import rel
    extended = structure.with_relation(name, len(order), rel(witness, order))
    guard = RelAtom(name, tuple(Var(v) for v in order))
    c_phi = foralls(order, Imp(guard, phi))
    c_psi = foralls(order, Imp(guard, psi))
    hole = to_text(foralls(order, Imp(guard, RelAtom("HOLE", ())))).replace("HOLE()", "[·]")
    v_phi = truth_value(extended, c_phi, bounds)
    v_psi = truth_value(extended, c_psi, bounds)
    r_denotes = denote(extended, order, guard, bounds) == principal(witness, structure.universe)
    results = [
        LawResult("R denotes down(T)", r_denotes, 1),
        LawResult("C[phi] is TRUE", v_phi is TruthValue.TRUE, 1, note=v_phi.value),
        LawResult("C[psi] is not TRUE", v_psi is not TruthValue.TRUE, 1, note=v_psi.value),
    ]
    scale = {"|A|": len(structure.universe), "X": order, "phi": to_text(phi), "psi": to_text(psi),
             "witness": witness.to_json()}
    report = Report("fullabs", scale, results, time.perf_counter() - start)
    return Separation(extended, c_phi, c_psi, hole, witness, name, order, report)


# diagrams

def element_constants(structure: Structure) -> tuple[Structure, list[str]]:
    """Names ``c<i>`` for the i-th element, adding any that are missing."""
    names = []
    extra = {}
    for i, a in enumerate(structure.universe):
        name = f"c{i}"
        while structure.constants.get(name, a) != a:
            name += "'"
        if name not in structure.constants:
            extra[name] = a
        names.append(name)
    return (structure.with_constants(extra) if extra else structure), names


def diagram_check(structure: Structure, v: str = "x", bounds: Bounds = DEFAULT_BOUNDS) -> Report:
    """``C(v)`` against the finite disjunction ``⋁ₐ v = cₐ``, and the tensor
    axiom ``∀v. ⊗ₐ v = cₐ`` as a TRUE sentence."""
    start = time.perf_counter()
    m, names = element_constants(structure)
    eqs = [EqAtom(Var(v), Const(c)) for c in names]
    disjunction = disj(eqs)
    axiom = Forall(v, tensor_all(eqs))
    lhs = denote(m, (v,), C(v), bounds)
    rhs = denote(m, (v,), disjunction, bounds)
    teams = all_teams((v,), m.universe, bounds.max_assignments)
    ev = Evaluator(m, bounds)
    bad = next((t for t in teams if ev.sat(C(v), t) != ev.sat(disjunction, t)), None)
    value = truth_value(m, axiom, bounds)
    results = [
        LawResult(f"[[C({v})]] = [[{to_text(disjunction)}]]", lhs == rhs, len(teams),
                  note=f"{len(lhs)} teams each"),
        LawResult("team sweep agrees", bad is None, len(teams),
                  None if bad is None else team_counterexample(m, (v,), disjunction, bad, ev.sat(disjunction, bad))),
        LawResult(f"{to_text(axiom)} is TRUE", value is TruthValue.TRUE, 1, note=value.value),
    ]
    return Report(f"diagram |A|={len(m.universe)}", {"|A|": len(m.universe), "v": v}, results, time.perf_counter() - start)


# dispatch

SUITES = ("downward", "empty-team", "trivalence", "dual-path", "adjunctions", "lift",
          "quantale", "heyting", "armstrong", "implicational", "d-from-c", "diagram",
          "representation", "dependence", "all")

_SWEEP_LAWS = {
    "downward": ("downward-closure",),
    "empty-team": ("empty-team", "wand-breaks-empty-team"),
    "trivalence": ("trivalence", "trivalence-all-values-occur"),
    "dual-path": ("dual-path", "flatness", "guard-coherence"),
}


def run_suite(name: str, structure: Structure | None = None, seed: int = DEFAULT_SEED,
              bounds: Bounds = DEFAULT_BOUNDS, depth: int = 3, cap: int = 1000,
              sample: int = 4096) -> Report:
    """Run one named suite (or ``all``) at the default desk scale.

    ``structure`` overrides the structure for the evaluator-based suites.
    """
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    sweep_cache: dict[str, Report] = {}

    def sweep() -> Report:
        if "r" not in sweep_cache:
            sweep_cache["r"] = proposition_sweep(structure or sweep_structure(), depth,
                                                 cap=cap, seed=seed, bounds=bounds)
        return sweep_cache["r"]

    def one(n: str) -> Report:
        if n in _SWEEP_LAWS:
            full = sweep()
            return Report(n, full.scale, [r for r in full.results if r.law in _SWEEP_LAWS[n]],
                          full.elapsed, full.seed)
        if n == "adjunctions":
            return adjunction_suite(bounds=bounds)
        if n == "lift":
            return lift_suite()
        if n == "quantale":
            return quantale_suite()
        if n == "heyting":
            return heyting_suite()
        if n == "representation":
            return representation_suite()
        if n == "dependence":
            return dep_equivalence_suite(structure, bounds=bounds)
        if n == "d-from-c":
            return d_from_c_suite(bounds=bounds)
        if n == "diagram":
            if structure is not None:
                return diagram_check(structure, bounds=bounds)
            return merge("diagram", [diagram_check(small_structure(n), bounds=bounds) for n in (1, 2, 3)])
        if n in ("armstrong", "implicational"):
            fn = armstrong_suite if n == "armstrong" else implicational_suite
            if structure is not None:
                return fn(structure, bounds=bounds)
            return merge(n, [fn(small_structure(2), bounds=bounds),
                             fn(small_structure(3), sample=sample, seed=seed, bounds=bounds)])
        raise AssertionError(n)

    if name != "all":
        return one(name)
    start = time.perf_counter()
    rep = merge("all", [one(n) for n in SUITES if n != "all"])
    rep.elapsed = time.perf_counter() - start
    rep.seed = seed
    return rep
