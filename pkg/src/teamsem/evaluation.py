"""Tarski satisfaction for single assignments and team satisfaction for BID.

The team clauses are implemented by brute force over subteams, splits,
choice functions and hypothetical teams.  That path is the reference
semantics.  ``strategy="pruned"`` switches ``->`` and ``*`` to searches that
rely on downward closure of denotations; it is only meant for sampled runs
on teams too large for the reference path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import (
    BoundExceeded, DomainError, FragmentError, NotASentence, UnboundName,
)
from .model import (
    DEFAULT_MAX_ASSIGNMENTS, Assignment, Structure, Team, all_teams, extend_all,
    extend_fn,
)
from .syntax import (
    And, Const, Dep, EqAtom, Exists, Forall, Formula, GuardedExists,
    GuardedForall, Imp, Or, RelAtom, Tensor, Term, Var, Wand, expand_guard,
    free_vars, map_terms,
)


@dataclass(frozen=True)
class Bounds:
    max_fn: int = 4096          # |A|^|T| choice functions per existential
    max_teams: int = 65536      # 2^(|A|^|X|) hypothetical teams per wand
    max_assignments: int = DEFAULT_MAX_ASSIGNMENTS

    def __post_init__(self) -> None:
        if min(self.max_fn, self.max_teams, self.max_assignments) <= 0:
            raise ValueError("bounds must be positive")


DEFAULT_BOUNDS = Bounds()


@dataclass(frozen=True)
class EvalContext:
    structure: Structure
    variables: frozenset[str] = frozenset()
    bounds: Bounds = DEFAULT_BOUNDS
    strategy: str = "brute"

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", frozenset(self.variables))
        if self.strategy not in ("brute", "pruned"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


class TruthValue(Enum):
    FALSE = "false"
    WEAK = "weak-true (empty team only)"
    TRUE = "true"


def resolve_constants(f: Formula, structure: Structure, variables: Iterable[str]) -> Formula:
    """Turn free variable occurrences that name structure constants into constants.

    A name bound by a quantifier or present in ``variables`` stays a variable.
    """
    ctx = frozenset(variables)

    def fix(t: Term, bound: frozenset[str]) -> Term:
        if isinstance(t, Var) and t.name not in bound and t.name not in ctx \
                and t.name in structure.constants:
            return Const(t.name)
        return t

    return map_terms(f, fix)


def bind(ctx: EvalContext, f: Formula) -> Formula:
    """Resolve constants and check that every free variable is in context."""
    f = resolve_constants(f, ctx.structure, ctx.variables)
    missing = free_vars(f) - ctx.variables
    if missing:
        raise UnboundName(f"{sorted(missing)} are neither in context "
                          f"{sorted(ctx.variables)} nor declared constants")
    for name, arity in _relations(f):
        rel = ctx.structure.relations.get(name)
        if rel is None:
            raise UnboundName(f"relation {name} is not declared by the structure")
        if rel.arity != arity:
            raise UnboundName(f"relation {name} has arity {rel.arity}, used with {arity}")
    return f


def _relations(f: Formula) -> set[tuple[str, int]]:
    from .syntax import subformulas
    return {(g.name, len(g.args)) for g in subformulas(f) if isinstance(g, RelAtom)}


def term_value(structure: Structure, s: Assignment, t: Term) -> str:
    if isinstance(t, Var):
        return s.value(t.name)
    try:
        return structure.constants[t.name]
    except KeyError:
        raise UnboundName(f"constant {t.name} is not declared by the structure") from None


def literal_holds(structure: Structure, s: Assignment, f: RelAtom | EqAtom) -> bool:
    if isinstance(f, RelAtom):
        tup = tuple(term_value(structure, s, t) for t in f.args)
        holds = tup in structure.relations[f.name].tuples
    else:
        holds = term_value(structure, s, f.left) == term_value(structure, s, f.right)
    return holds == f.positive


def _tarski(structure: Structure, s: Assignment, f: Formula) -> bool:
    if isinstance(f, (RelAtom, EqAtom)):
        return literal_holds(structure, s, f)
    if isinstance(f, And):
        return _tarski(structure, s, f.left) and _tarski(structure, s, f.right)
    if isinstance(f, Tensor):
        # on single assignments the split reads as classical disjunction
        return _tarski(structure, s, f.left) or _tarski(structure, s, f.right)
    if isinstance(f, Forall):
        return all(_tarski(structure, s.extend(f.var, a), f.body) for a in structure.universe)
    if isinstance(f, Exists):
        return any(_tarski(structure, s.extend(f.var, a), f.body) for a in structure.universe)
    raise FragmentError(f"Tarski semantics undefined for {type(f).__name__}")


def tarski(ctx: EvalContext, s: Assignment, f: Formula) -> bool:
    """Classical truth of a first-order (flat) formula under one assignment."""
    if s.domain != ctx.variables:
        raise DomainError(f"assignment domain {sorted(s.domain)} != context {sorted(ctx.variables)}")
    return _tarski(ctx.structure, s, bind(ctx, f))


def dep_holds(team: Team, governors: Iterable[str], v: str) -> bool:
    """``∀s,t ∈ T. s ≃_W t ⇒ s(v) = t(v)``, via a table from W-values to v-values."""
    ws = tuple(governors)
    seen: dict[tuple[str, ...], str] = {}
    for t in team.members:
        key = tuple(t.value(w) for w in ws)
        val = t.value(v)
        if seen.setdefault(key, val) != val:
            return False
    return True


def dep_holds_functional(team: Team, governors: Iterable[str], v: str, universe: Iterable[str]) -> bool:
    """The same atom phrased as: some ``g : A^W -> A`` has ``t(v) = g(t|W)`` on T.

    Searches every ``g`` over the W-projections occurring in T.
    """
    ws = tuple(governors)
    keys = sorted({tuple(t.value(w) for w in ws) for t in team.members})
    for values in itertools.product(tuple(universe), repeat=len(keys)):
        g = dict(zip(keys, values))
        if all(t.value(v) == g[tuple(t.value(w) for w in ws)] for t in team.members):
            return True
    return False


class Evaluator:
    """Team satisfaction with a memo table keyed by (subformula, team).

    One evaluator may be reused for many teams and formulas; results never
    depend on the order of calls.
    """

    def __init__(self, structure: Structure, bounds: Bounds = DEFAULT_BOUNDS,
                 strategy: str = "brute") -> None:
        self.structure = structure
        self.universe = structure.universe
        self.bounds = bounds
        self.pruned = strategy == "pruned"
        self.memo: dict[tuple[int, Team], bool] = {}
        self._keep: dict[int, Formula] = {}
        self._expansions: dict[int, Formula] = {}
        self._maxsub: dict[tuple[int, Team], list[int]] = {}
        self._orders: dict[Team, tuple[Assignment, ...]] = {}

    def sat(self, f: Formula, team: Team) -> bool:
        key = (id(f), team)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self._keep[id(f)] = f
        result = self._sat(f, team)
        self.memo[key] = result
        return result

    def _sat(self, f: Formula, team: Team) -> bool:
        M = self.structure
        if isinstance(f, (RelAtom, EqAtom)):
            return all(literal_holds(M, t, f) for t in team.members)
        if isinstance(f, Dep):
            return dep_holds(team, f.governors, f.dependent)
        if isinstance(f, And):
            return self.sat(f.left, team) and self.sat(f.right, team)
        if isinstance(f, Or):
            return self.sat(f.left, team) or self.sat(f.right, team)
        if isinstance(f, Imp):
            return self._imp(f, team)
        if isinstance(f, Tensor):
            return self._tensor(f, team)
        if isinstance(f, Wand):
            return self._wand(f, team)
        if isinstance(f, Forall):
            return self.sat(f.body, extend_all(team, f.var, self.universe))
        if isinstance(f, Exists):
            return self._exists(f, team)
        if isinstance(f, (GuardedExists, GuardedForall)):
            g = self._expansions.get(id(f))
            if g is None:
                g = self._expansions[id(f)] = expand_guard(f)
            return self.sat(g, team)
        raise TypeError(f"not a formula: {f!r}")

    def _imp(self, f: Imp, team: Team) -> bool:
        if self.pruned:
            left = self._antichain(f.left, team)
            if isinstance(f.right, Imp) and len(left) <= 32:
                # a nested consequent is usually cheaper on the smaller subteams
                order = self._order(team)
                return all(self.sat(f.right, Team._raw(team.domain, frozenset(
                    s for i, s in enumerate(order) if x >> i & 1))) for x in left)
            # every maximal A-subteam must lie inside some maximal B-subteam
            right = self._antichain(f.right, team)
            tops = set(right)
            return all(x in tops or any(x & ~y == 0 for y in right) for x in left)
        for u in team.subteams():
            if self.sat(f.left, u) and not self.sat(f.right, u):
                return False
        return True

    def _tensor(self, f: Tensor, team: Team) -> bool:
        for u in team.subteams():
            if not self.sat(f.left, u):
                continue
            rest = team - u
            if self.pruned:
                if self.sat(f.right, rest):
                    return True
                continue
            # every V with U ∪ V = T, overlapping splits included
            for extra in u.subteams():
                if self.sat(f.right, rest | extra):
                    return True
        return False

    def _wand(self, f: Wand, team: Team) -> bool:
        n_ass = len(self.universe) ** len(team.domain)
        if n_ass > self.bounds.max_assignments or 2 ** n_ass > self.bounds.max_teams:
            raise BoundExceeded("hypothetical teams 2^(|A|^|X|)", 2 ** n_ass, self.bounds.max_teams)
        for u in all_teams(team.domain, self.universe, self.bounds.max_assignments):
            if self.sat(f.left, u) and not self.sat(f.right, team | u):
                return False
        return True

    def _exists(self, f: Exists, team: Team) -> bool:
        members = sorted(team.members)
        n_fn = len(self.universe) ** len(members)
        if n_fn > self.bounds.max_fn:
            raise BoundExceeded("choice functions |A|^|T|", n_fn, self.bounds.max_fn)
        for choice in itertools.product(self.universe, repeat=len(members)):
            ext = extend_fn(team, f.var, dict(zip(members, choice)))
            if self.sat(f.body, ext):
                return True
        return False

    def maximal_subteams(self, f: Formula, team: Team) -> list[Team]:
        """Maximal subteams of ``team`` satisfying ``f``.

        Built connective by connective where the shape allows (literals,
        dependence atoms, ``/\\``, ``\\/``, ``*`` and ``->``), otherwise found by
        a depth-first search over members.  Both rely on satisfaction being
        closed under subteams.
        """
        order = self._order(team)
        return [Team._raw(team.domain, frozenset(s for i, s in enumerate(order) if m >> i & 1))
                for m in self._antichain(f, team)]

    def _order(self, team: Team) -> tuple[Assignment, ...]:
        order = self._orders.get(team)
        if order is None:
            order = self._orders[team] = tuple(sorted(team.members))
        return order

    def _antichain(self, f: Formula, team: Team) -> list[int]:
        """:meth:`maximal_subteams` as bitmasks over the sorted members of ``team``."""
        key = (id(f), team)
        hit = self._maxsub.get(key)
        if hit is None:
            self._keep[id(f)] = f
            hit = self._maxsub[key] = self._build_antichain(f, team)
        return hit

    def _build_antichain(self, f: Formula, team: Team) -> list[int]:
        order = self._order(team)
        full = (1 << len(order)) - 1
        if isinstance(f, (RelAtom, EqAtom)):
            return [sum(1 << i for i, s in enumerate(order) if literal_holds(self.structure, s, f))]
        if isinstance(f, Dep):
            classes: dict[tuple[str, ...], dict[str, int]] = {}
            for i, s in enumerate(order):
                by_value = classes.setdefault(tuple(s.value(w) for w in f.governors), {})
                by_value[s.value(f.dependent)] = by_value.get(s.value(f.dependent), 0) | 1 << i
            options = [list(c.values()) for c in classes.values()]
            if _product_size(options) <= self.bounds.max_fn:
                return [sum(pick) for pick in itertools.product(*options)]
        elif isinstance(f, (And, Or, Tensor, Imp)):
            left = self._antichain(f.left, team)
            right = self._antichain(f.right, team)
            if isinstance(f, Or):
                return _maximal_masks(left + right)
            if isinstance(f, And):
                return _maximal_masks([x & y for x in left for y in right])
            if isinstance(f, Tensor):
                return _maximal_masks([x | y for x in left for y in right])
            # S satisfies A -> B iff every S & a (a maximal for A) lies in some
            # b maximal for B; per a the largest such S is (T - a) | (a & b)
            if _disjoint(left):
                # blocks are independent: pick a maximal a & b in each one
                rest = full & ~sum(left)
                blocks = [_maximal_masks([x & y for y in right]) for x in left]
                if _product_size(blocks) <= self.bounds.max_fn:
                    return [rest | sum(pick) for pick in itertools.product(*blocks)]
            else:
                # intersect choice by choice, keeping only maximal candidates
                found = [full]
                for x in left:
                    options = [(full & ~x) | (x & y) for y in right]
                    found = _maximal_masks([c & o for c in found for o in options])
                    if len(found) > self.bounds.max_fn:
                        break
                else:
                    return found
        index = {s: i for i, s in enumerate(order)}
        return [sum(1 << index[s] for s in t.members) for t in self._dfs_maximal(f, team)]

    def _dfs_maximal(self, f: Formula, team: Team) -> list[Team]:
        if self.sat(f, team):
            return [team]
        if not self.sat(f, Team._raw(team.domain, frozenset())):
            return []   # possible only under -*
        members = sorted(team.members)
        found: list[Team] = []

        def grow(i: int, current: frozenset) -> None:
            if i == len(members):
                cand = Team._raw(team.domain, current)
                if not any(cand.members < m.members for m in found):
                    found[:] = [m for m in found if not m.members <= cand.members]
                    found.append(cand)
                return
            bigger = current | {members[i]}
            if self.sat(f, Team._raw(team.domain, bigger)):
                grow(i + 1, bigger)
            grow(i + 1, current)

        grow(0, frozenset())
        return found


def _product_size(options: list[list[int]]) -> int:
    n = 1
    for o in options:
        n *= len(o)
    return n


def _disjoint(masks: list[int]) -> bool:
    seen = 0
    for m in masks:
        if seen & m:
            return False
        seen |= m
    return True


def _maximal_masks(masks: Iterable[int]) -> list[int]:
    out: list[int] = []
    for m in sorted(set(masks), key=int.bit_count, reverse=True):
        if all(m & ~k for k in out):
            out.append(m)
    return out


def satisfies(ctx: EvalContext, team: Team, f: Formula) -> bool:
    """``M, T ⊨_X f`` with X the context's variables."""
    if team.domain != ctx.variables:
        raise DomainError(f"team domain {sorted(team.domain)} != context {sorted(ctx.variables)}")
    f = bind(ctx, f)
    return Evaluator(ctx.structure, ctx.bounds, ctx.strategy).sat(f, team)


def truth_value(structure: Structure, sentence: Formula, bounds: Bounds = DEFAULT_BOUNDS) -> TruthValue:
    """Trivalent value of a sentence from its two teams over no variables."""
    ctx = EvalContext(structure, frozenset(), bounds)
    sentence = resolve_constants(sentence, structure, ())
    if free_vars(sentence):
        raise NotASentence(f"free variables {sorted(free_vars(sentence))}")
    f = bind(ctx, sentence)
    ev = Evaluator(structure, bounds)
    empty = Team(frozenset(), frozenset())
    unit = Team(frozenset(), frozenset({Assignment()}))
    on_empty, on_unit = ev.sat(f, empty), ev.sat(f, unit)
    if on_unit and not on_empty:
        raise AssertionError("denotation is not downward closed")
    if on_unit:
        return TruthValue.TRUE
    return TruthValue.WEAK if on_empty else TruthValue.FALSE
