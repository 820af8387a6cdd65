"""Lower sets of teams: the quantale / Heyting algebra in which formulas denote.

A :class:`LowerSet` is stored as its antichain of maximal teams; the set it
stands for is everything below one of them.  Operations compute on
antichains wherever the algebra allows and fall back to sweeping all teams on
the domain (bounded) for the two implications and the Hodges quantifiers.

:func:`denote` computes a formula's denotation bottom-up from these
operations.  It shares nothing with :mod:`teamsem.evaluation` beyond the
Tarski truth of literals, so the two make an independent pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Callable, Iterable, Iterator, Sequence

from .errors import BoundExceeded, DomainError, DomainMismatch
from .evaluation import DEFAULT_BOUNDS, Bounds, EvalContext, bind, literal_holds
from .model import (
    Assignment, Structure, Team, all_assignments, all_teams, extend_all,
    extend_fn, full_team,
)
from .report import LawResult
from .syntax import (
    And, Dep, EqAtom, Exists, Forall, Formula, GuardedExists, GuardedForall,
    Imp, Or, RelAtom, Tensor, Wand,
)


def maximal(teams: Iterable[Team]) -> frozenset[Team]:
    """The maximal elements of a family of teams under inclusion."""
    out: list[Team] = []
    for t in sorted(set(teams), key=len, reverse=True):
        if not any(t.members <= m.members for m in out):
            out.append(t)
    return frozenset(out)


@dataclass(frozen=True)
class LowerSet:
    domain: frozenset[str]
    universe: tuple[str, ...]
    maximal: frozenset[Team]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(self, "universe", tuple(self.universe))
        ms = frozenset(self.maximal)
        for t in ms:
            if t.domain != self.domain:
                raise DomainMismatch(f"team on {sorted(t.domain)} in lower set on {sorted(self.domain)}")
        object.__setattr__(self, "maximal", ms)

    @classmethod
    def bottom(cls, domain: Iterable[str], universe: Sequence[str]) -> "LowerSet":
        return cls(frozenset(domain), tuple(universe), frozenset())

    @classmethod
    def top(cls, domain: Iterable[str], universe: Sequence[str]) -> "LowerSet":
        return cls(frozenset(domain), tuple(universe), frozenset({full_team(domain, universe)}))

    @classmethod
    def from_members(cls, domain, universe, members: Iterable[Team]) -> "LowerSet":
        """Lower set generated by ``members`` (need not be downward closed)."""
        return cls(frozenset(domain), tuple(universe), maximal(members))

    @cached_property
    def members(self) -> frozenset[Team]:
        out: set[Team] = set()
        for m in self.maximal:
            out.update(m.subteams())
        return frozenset(out)

    def __contains__(self, team: object) -> bool:
        if not isinstance(team, Team):
            return False
        return any(team.members <= m.members for m in self.maximal)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Team]:
        return iter(sorted(self.members, key=Team.sort_key))

    def __le__(self, other: "LowerSet") -> bool:
        _same(self, other)
        return all(m in other for m in self.maximal)

    def __lt__(self, other: "LowerSet") -> bool:
        return self <= other and self != other

    def sorted_maximal(self) -> list[Team]:
        return sorted(self.maximal, key=Team.sort_key)

    def to_json(self) -> list[dict]:
        return [t.to_json() for t in self.sorted_maximal()]

    def __repr__(self) -> str:
        if not self.maximal:
            return "∅"
        return "↓{" + ", ".join(repr(t) for t in self.sorted_maximal()) + "}"


def _same(u: LowerSet, v: LowerSet) -> None:
    if u.domain != v.domain or u.universe != v.universe:
        raise DomainMismatch(f"lower sets on {sorted(u.domain)} and {sorted(v.domain)}")


def down(teams: Iterable[Team], domain: Iterable[str] | None = None,
         universe: Sequence[str] = ()) -> LowerSet:
    """``↓ts``, the smallest lower set containing every team in ``teams``."""
    ts = list(teams)
    doms = {t.domain for t in ts}
    if domain is not None:
        doms.add(frozenset(domain))
    if len(doms) != 1:
        raise DomainMismatch(f"teams on differing domains {[sorted(d) for d in doms]}"
                             if doms else "empty family needs an explicit domain")
    return LowerSet(doms.pop(), tuple(universe), maximal(ts))


def principal(team: Team, universe: Sequence[str]) -> LowerSet:
    return LowerSet(team.domain, tuple(universe), frozenset({team}))


def _teams_of(u: LowerSet, bounds: Bounds) -> tuple[Team, ...]:
    n_ass = len(u.universe) ** len(u.domain)
    if 2 ** n_ass > bounds.max_teams:
        raise BoundExceeded("teams 2^(|A|^|X|)", 2 ** n_ass, bounds.max_teams)
    return all_teams(u.domain, u.universe, bounds.max_assignments)


# quantale and Heyting operations

def meet(u: LowerSet, v: LowerSet) -> LowerSet:
    _same(u, v)
    return LowerSet.from_members(u.domain, u.universe, (a & b for a in u.maximal for b in v.maximal))


def join(u: LowerSet, v: LowerSet) -> LowerSet:
    _same(u, v)
    return LowerSet.from_members(u.domain, u.universe, u.maximal | v.maximal)


def join_all(items: Iterable[LowerSet], domain, universe) -> LowerSet:
    return reduce(join, items, LowerSet.bottom(domain, universe))


def tensor(u: LowerSet, v: LowerSet) -> LowerSet:
    """``↓{m ∪ n | m ∈ U, n ∈ V}``; only maximal pairs matter."""
    _same(u, v)
    return LowerSet.from_members(u.domain, u.universe, (a | b for a in u.maximal for b in v.maximal))


def wand(u: LowerSet, v: LowerSet, bounds: Bounds = DEFAULT_BOUNDS) -> LowerSet:
    """``{m | ∀n ∈ U. m ∪ n ∈ V}``, the residual of :func:`tensor`."""
    _same(u, v)
    gens = [n.members for n in u.maximal]
    tops = [w.members for w in v.maximal]
    keep = [m for m in _teams_of(u, bounds)
            if all(any(m.members | n <= w for w in tops) for n in gens)]
    return LowerSet.from_members(u.domain, u.universe, keep)


def heyting(u: LowerSet, v: LowerSet, bounds: Bounds = DEFAULT_BOUNDS) -> LowerSet:
    """``{m | ∀n ⊆ m. n ∈ U ⇒ n ∈ V}``.

    ``↓m ∩ U`` is generated by the ``m ∩ u`` for maximal ``u``, so it is
    enough to test those.
    """
    _same(u, v)
    gens = [a.members for a in u.maximal]
    tops = [w.members for w in v.maximal]
    keep = [m for m in _teams_of(u, bounds)
            if all(any(m.members & a <= w for w in tops) for a in gens)]
    return LowerSet.from_members(u.domain, u.universe, keep)


# Tarski-level quantifiers on sets of assignments (teams read as relations)

def exists_pi(s: Team, v: str) -> Team:
    """``∃(π)(S)``: assignments that extend to some member of ``S``."""
    if v not in s.domain:
        raise DomainError(f"{v} not in {sorted(s.domain)}")
    return Team(s.domain - {v}, frozenset(t.restrict(s.domain - {v}) for t in s.members))


def forall_pi(s: Team, v: str, universe: Sequence[str]) -> Team:
    """``∀(π)(S)``: assignments all of whose ``v``-extensions lie in ``S``."""
    if v not in s.domain:
        raise DomainError(f"{v} not in {sorted(s.domain)}")
    rest = s.domain - {v}
    return Team(rest, frozenset(t for t in all_assignments(rest, universe)
                                if all(t.extend(v, a) in s.members for a in universe)))


def preimage_pi(t: Team, v: str, universe: Sequence[str]) -> Team:
    """``π⁻¹(T)``, which is ``T[v ↦ A]``."""
    if v in t.domain:
        raise DomainError(f"{v} already in {sorted(t.domain)}")
    return extend_all(t, v, universe)


@dataclass(frozen=True)
class TeamOperator:
    """A map between lower-set lattices, tagged with its source and target domains."""

    source: frozenset[str]
    target: frozenset[str]
    fn: Callable[[LowerSet], LowerSet] = field(compare=False)
    name: str = ""

    def __call__(self, u: LowerSet) -> LowerSet:
        if u.domain != self.source:
            raise DomainMismatch(f"{self.name or 'operator'} expects domain {sorted(self.source)}")
        return self.fn(u)

    def then(self, other: "TeamOperator") -> "TeamOperator":
        """Composite ``other ∘ self``."""
        return TeamOperator(self.source, other.target, lambda u: other(self(u)),
                            f"{other.name}∘{self.name}")


def lift(h: Callable[[Team], Team], source: Iterable[str], target: Iterable[str],
         name: str = "") -> TeamOperator:
    """``𝓛(h) : U ↦ ↓{h(T) | T ∈ U}``."""
    tgt = frozenset(target)

    def apply(u: LowerSet) -> LowerSet:
        return down((h(t) for t in u.members), domain=tgt, universe=u.universe)

    return TeamOperator(frozenset(source), tgt, apply, name or f"L({getattr(h, '__name__', 'h')})")


# Hodges quantifiers

def _quantifier_target(u: LowerSet, v: str, into: Iterable[str] | None) -> frozenset[str]:
    if into is None:
        if v not in u.domain:
            raise DomainError(f"{v} not in {sorted(u.domain)}")
        return u.domain - {v}
    tgt = frozenset(into)
    if tgt | {v} != u.domain:
        raise DomainError(f"{sorted(tgt)} extended by {v} is not {sorted(u.domain)}")
    return tgt


def exists_h(u: LowerSet, v: str, into: Iterable[str] | None = None,
             bounds: Bounds = DEFAULT_BOUNDS) -> LowerSet:
    """``∃_H(U) = {T | ∃f : T → A. T[v ↦ f] ∈ U}``.

    Choice functions are enumerated explicitly.  ``into`` names the target
    domain; it defaults to ``U``'s domain without ``v`` and may keep ``v``,
    in which case ``v`` is rebound.
    """
    tgt = _quantifier_target(u, v, into)
    keep = []
    for t in _teams_of(LowerSet.bottom(tgt, u.universe), bounds):
        members = sorted(t.members)
        n_fn = len(u.universe) ** len(members)
        if n_fn > bounds.max_fn:
            raise BoundExceeded("choice functions |A|^|T|", n_fn, bounds.max_fn)
        for choice in itertools.product(u.universe, repeat=len(members)):
            if extend_fn(t, v, dict(zip(members, choice))) in u:
                keep.append(t)
                break
    return LowerSet.from_members(tgt, u.universe, keep)


def forall_h(u: LowerSet, v: str, into: Iterable[str] | None = None,
             bounds: Bounds = DEFAULT_BOUNDS) -> LowerSet:
    """``∀_H(U) = {T | T[v ↦ A] ∈ U}``."""
    tgt = _quantifier_target(u, v, into)
    keep = [t for t in _teams_of(LowerSet.bottom(tgt, u.universe), bounds)
            if extend_all(t, v, u.universe) in u]
    return LowerSet.from_members(tgt, u.universe, keep)


def subst_h(v_set: LowerSet, v: str) -> LowerSet:
    """``𝓗(π) = 𝓛(π⁻¹)``: ``V ↦ ↓{T[v ↦ A] | T ∈ V}``."""
    if v in v_set.domain:
        raise DomainError(f"{v} already in {sorted(v_set.domain)}")
    return LowerSet.from_members(v_set.domain | {v}, v_set.universe,
                                 (extend_all(t, v, v_set.universe) for t in v_set.maximal))


def dep_lowerset(governors: Iterable[str], v: str, domain: Iterable[str],
                 universe: Sequence[str]) -> LowerSet:
    """``D_W`` built from its generators: one maximal team per function
    ``g : A^W → A``, namely the graph ``{s ∈ A^X | s(v) = g(s|W)}``."""
    ws = sorted(set(governors))
    dom = frozenset(domain)
    if not set(ws) | {v} <= dom:
        raise DomainError(f"{ws} and {v} must lie in {sorted(dom)}")
    keys = list(itertools.product(universe, repeat=len(ws)))
    everything = all_assignments(dom, universe)
    gens = []
    for values in itertools.product(universe, repeat=len(keys)):
        g = dict(zip(keys, values))
        gens.append(Team(dom, frozenset(s for s in everything
                                        if s.value(v) == g[tuple(s.value(w) for w in ws)])))
    return LowerSet.from_members(dom, universe, gens)


def guarded_exists_op(u: LowerSet, governors: Iterable[str], v: str,
                      into: Iterable[str] | None = None,
                      bounds: Bounds = DEFAULT_BOUNDS) -> LowerSet:
    """``∃_W(U) = ∃_H(D_W ∩ U)``."""
    d = dep_lowerset(governors, v, u.domain, u.universe)
    return exists_h(meet(d, u), v, into, bounds)


def guarded_forall_op(u: LowerSet, governors: Iterable[str], v: str,
                      into: Iterable[str] | None = None,
                      bounds: Bounds = DEFAULT_BOUNDS) -> LowerSet:
    """``∀_W(U) = ∀_H(D_W → U)``."""
    d = dep_lowerset(governors, v, u.domain, u.universe)
    return forall_h(heyting(d, u, bounds), v, into, bounds)


# denotations

def denote(structure: Structure, variables: Iterable[str], f: Formula,
           bounds: Bounds = DEFAULT_BOUNDS) -> LowerSet:
    """The lower set of teams on ``variables`` satisfying ``f``, computed bottom-up."""
    ctx = EvalContext(structure, frozenset(variables), bounds)
    f = bind(ctx, f)
    univ = structure.universe
    n_ass = len(univ) ** len(ctx.variables)
    if n_ass > bounds.max_assignments:
        raise BoundExceeded("assignments |A|^|X|", n_ass, bounds.max_assignments)

    def go(g: Formula, dom: frozenset[str]) -> LowerSet:
        if isinstance(g, (RelAtom, EqAtom)):
            flat = Team(dom, frozenset(s for s in all_assignments(dom, univ)
                                       if literal_holds(structure, s, g)))
            return principal(flat, univ)
        if isinstance(g, Dep):
            return dep_lowerset(g.governors, g.dependent, dom, univ)
        if isinstance(g, And):
            return meet(go(g.left, dom), go(g.right, dom))
        if isinstance(g, Or):
            return join(go(g.left, dom), go(g.right, dom))
        if isinstance(g, Imp):
            return heyting(go(g.left, dom), go(g.right, dom), bounds)
        if isinstance(g, Tensor):
            return tensor(go(g.left, dom), go(g.right, dom))
        if isinstance(g, Wand):
            return wand(go(g.left, dom), go(g.right, dom), bounds)
        inner = dom | {g.var}
        if len(univ) ** len(inner) > bounds.max_assignments:
            raise BoundExceeded("assignments |A|^|X|", len(univ) ** len(inner), bounds.max_assignments)
        body = go(g.body, inner)
        if isinstance(g, Forall):
            return forall_h(body, g.var, dom, bounds)
        if isinstance(g, Exists):
            return exists_h(body, g.var, dom, bounds)
        if isinstance(g, GuardedExists):
            return guarded_exists_op(body, g.governors, g.var, dom, bounds)
        if isinstance(g, GuardedForall):
            return guarded_forall_op(body, g.governors, g.var, dom, bounds)
        raise TypeError(f"not a formula: {g!r}")

    return go(f, ctx.variables)


# lattice enumeration and representation

def all_lower_sets(domain: Iterable[str], universe: Sequence[str],
                   max_teams: int = 16) -> list[LowerSet]:
    """Every lower set of teams on ``domain``.

    Recurses on a largest remaining team ``m``: lower sets either avoid
    ``m``, or contain it together with all of ``↓m``.  ``max_teams`` caps the
    number of teams, since the count grows like a Dedekind number.
    """
    dom = frozenset(domain)
    teams = list(all_teams(dom, universe))
    if len(teams) > max_teams:
        raise BoundExceeded("teams in lattice sweep", len(teams), max_teams)
    order = sorted(teams, key=Team.sort_key)

    def rec(pool: list[Team]) -> list[frozenset[Team]]:
        if not pool:
            return [frozenset()]
        m = pool[-1]
        rest = pool[:-1]
        out = []
        for s in rec(rest):
            out.append(s)
            if all(t in s for t in rest if t.members < m.members):
                out.append(s | {m})
        return out

    return [LowerSet.from_members(dom, universe, s) for s in rec(order)]


def is_join_prime(u: LowerSet, lattice: Sequence[LowerSet]) -> bool:
    """Finite join-primality: non-bottom, and below a binary join only if
    below one of the joinands.  On a finite lattice this coincides with
    complete join-primality."""
    if not u.maximal:
        return False
    for v, w in itertools.combinations_with_replacement(lattice, 2):
        if u <= join(v, w) and not (u <= v or u <= w):
            return False
    return True


def join_primes(domain: Iterable[str], universe: Sequence[str]) -> list[LowerSet]:
    lattice = all_lower_sets(domain, universe)
    return [u for u in lattice if is_join_prime(u, lattice)]


def atoms(domain: Iterable[str], universe: Sequence[str]) -> list[LowerSet]:
    """Atoms of the join-prime semilattice under ``⊗``: join-primes with
    nothing strictly between them and the unit ``↓{∅}``."""
    primes = join_primes(domain, universe)
    unit = LowerSet(frozenset(domain), tuple(universe), frozenset({Team(frozenset(domain), frozenset())}))
    above = [p for p in primes if unit < p]
    return [p for p in above if not any(unit < q < p for q in above)]


AtomDescriptor = tuple[tuple[str, str], ...]
NormalForm = list[list[AtomDescriptor]]


def normal_form(u: LowerSet) -> NormalForm:
    """``⋁ᵢ ⊗ⱼ Aᵢⱼ``: one tensor of tuple atoms per maximal team of ``u``.

    Each atom is the descriptor ``((v1, a1), ..., (vn, an))`` of one
    assignment, standing for ``v1 = a1 ∧ ... ∧ vn = an``.
    """
    return [[tuple(s) for s in t] for t in u.sorted_maximal()]


def from_normal_form(nf: NormalForm, domain: Iterable[str], universe: Sequence[str]) -> LowerSet:
    """Rebuild a lower set as the join of tensors of principal atoms."""
    dom = frozenset(domain)
    unit = LowerSet(dom, tuple(universe), frozenset({Team(dom, frozenset())}))
    terms = []
    for row in nf:
        atom_sets = [principal(Team(dom, frozenset({Assignment(a)})), universe) for a in row]
        terms.append(reduce(tensor, atom_sets, unit))
    return join_all(terms, dom, universe)


def normal_form_leq(a: NormalForm, b: NormalForm) -> bool:
    """Order on normal forms without going back to lower sets: every tensor
    term of ``a`` has its atoms among those of some term of ``b``."""
    return all(any(set(row) <= set(other) for other in b) for row in a)


def render_normal_form(nf: NormalForm, unicode: bool = True) -> str:
    if not nf:
        return "⊥" if unicode else "bottom"
    ors, tens, ands = (" ∨ ", " ⊗ ", " ∧ ") if unicode else (" \\/ ", " * ", " /\\ ")

    def atom(a: AtomDescriptor) -> str:
        return "(" + ands.join(f"{v}={x}" for v, x in a) + ")" if a else "⊤"

    rows = []
    for row in nf:
        rows.append(tens.join(atom(a) for a in row) if row else ("I" if unicode else "unit"))
    return ors.join(rows)


# adjunctions

class _Poset:
    """A fixed list of lower sets with its order precomputed as bitmasks.

    ``up[i]`` has bit ``j`` set when ``elements[i] <= elements[j]``;
    ``down[j]`` is the transpose.  Lower sets outside the list are placed
    by comparing member bitmasks.
    """

    def __init__(self, elements: Sequence[LowerSet]) -> None:
        self.elements = list(elements)
        self.index = {u: i for i, u in enumerate(self.elements)}
        self.table: dict[Team, int] = {}
        self.masks = [self.mask(u) for u in self.elements]
        n = len(self.elements)
        self.up = [0] * n
        self.down = [0] * n
        for i, a in enumerate(self.masks):
            for j, b in enumerate(self.masks):
                if a & ~b == 0:
                    self.up[i] |= 1 << j
                    self.down[j] |= 1 << i

    def mask(self, u: LowerSet) -> int:
        bits = 0
        for t in u.members:
            i = self.table.get(t)
            if i is None:
                i = self.table[t] = len(self.table)
            bits |= 1 << i
        return bits

    def up_of(self, u: LowerSet) -> int:
        """Elements above ``u``."""
        i = self.index.get(u)
        if i is not None:
            return self.up[i]
        m = self.mask(u)
        return sum(1 << j for j, b in enumerate(self.masks) if m & ~b == 0)

    def down_of(self, u: LowerSet) -> int:
        """Elements below ``u``."""
        i = self.index.get(u)
        if i is not None:
            return self.down[i]
        m = self.mask(u)
        return sum(1 << j for j, a in enumerate(self.masks) if a & ~m == 0)


_POSETS: dict[tuple[LowerSet, ...], _Poset] = {}


def _poset(elements: Sequence[LowerSet]) -> _Poset:
    key = tuple(elements)
    p = _POSETS.get(key)
    if p is None:
        if len(_POSETS) > 32:
            _POSETS.clear()
        p = _POSETS[key] = _Poset(key)
    return p


def check_adjunction(left: Callable[[LowerSet], LowerSet],
                     right: Callable[[LowerSet], LowerSet],
                     sources: Sequence[LowerSet], targets: Sequence[LowerSet],
                     name: str = "adjunction") -> LawResult:
    """Check ``F(U) <= V  iff  U <= G(V)`` for every ``U`` in ``sources`` and
    ``V`` in ``targets``; the failing pair, if any, is the counterexample.

    Column ``j`` of each side is the set of sources related to ``V_j``:
    ``{i | F(U_i) <= V_j}`` against ``{i | U_i <= G(V_j)}``, both as bitmasks.
    """
    src, tgt = _poset(sources), _poset(targets)
    n_src = len(src.elements)
    # for every target j, the sources i with F(U_i) <= V_j
    by_image: dict[LowerSet, int] = {}
    for i, u in enumerate(src.elements):
        f = left(u)
        by_image[f] = by_image.get(f, 0) | 1 << i
    lhs = [0] * len(tgt.elements)
    for f, sources_mask in by_image.items():
        above = tgt.up_of(f)
        while above:
            low = above & -above
            lhs[low.bit_length() - 1] |= sources_mask
            above ^= low
    for j, v in enumerate(tgt.elements):
        rhs = src.down_of(right(v))
        if rhs != lhs[j]:
            i = ((rhs ^ lhs[j]) & -(rhs ^ lhs[j])).bit_length() - 1
            return LawResult(name, False, j * n_src + i + 1, counterexample={
                "kind": "adjunction", "U": src.elements[i].to_json(), "V": v.to_json(),
                "F(U)<=V": bool(lhs[j] >> i & 1), "U<=G(V)": bool(rhs >> i & 1)})
    return LawResult(name, True, n_src * len(tgt.elements))


def operator_equal(f: Callable[[LowerSet], LowerSet], g: Callable[[LowerSet], LowerSet],
                   elements: Sequence[LowerSet], name: str) -> LawResult:
    """Extensional equality of two operators over ``elements``."""
    for i, u in enumerate(elements, 1):
        a, b = f(u), g(u)
        if a != b:
            return LawResult(name, False, i, counterexample={
                "kind": "operator", "U": u.to_json(), "left": a.to_json(), "right": b.to_json()})
    return LawResult(name, True, len(elements))


