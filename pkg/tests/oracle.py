"""Brute-force reference semantics used as a test oracle.

Written directly from the team clauses with plain frozensets of
``(var, value)`` tuples, sharing nothing with ``teamsem.evaluation`` or
``teamsem.algebra`` beyond the AST classes.  Slow on purpose: every split,
subteam, hypothetical team and choice function is enumerated.
"""

from __future__ import annotations

import itertools

from teamsem.syntax import (
    And, Dep, EqAtom, Exists, Forall, GuardedExists, GuardedForall, Imp,
    Or, RelAtom, Tensor, Var, Wand,
)


def assignment(**values):
    return tuple(sorted(values.items()))


def powerset(items):
    items = sorted(items)
    for k in range(len(items) + 1):
        for combo in itertools.combinations(items, k):
            yield frozenset(combo)


def assignments(domain, universe):
    dom = sorted(domain)
    return [tuple(zip(dom, vals)) for vals in itertools.product(universe, repeat=len(dom))]


def teams(domain, universe):
    return list(powerset(assignments(domain, universe)))


def _get(s, v):
    return dict(s)[v]


def _set(s, v, a):
    d = dict(s)
    d[v] = a
    return tuple(sorted(d.items()))


def _term(M, s, t):
    return _get(s, t.name) if isinstance(t, Var) else M["constants"][t.name]


def _literal(M, s, f):
    if isinstance(f, RelAtom):
        holds = tuple(_term(M, s, t) for t in f.args) in M["relations"][f.name]
    else:
        holds = _term(M, s, f.left) == _term(M, s, f.right)
    return holds == f.positive


def sat(M, T, f, domain):
    """``M, T |=_domain f``; ``M`` is a dict with universe/relations/constants."""
    A = M["universe"]
    if isinstance(f, (RelAtom, EqAtom)):
        return all(_literal(M, s, f) for s in T)
    if isinstance(f, Dep):
        return all(_get(s, f.dependent) == _get(t, f.dependent)
                   for s in T for t in T
                   if all(_get(s, w) == _get(t, w) for w in f.governors))
    if isinstance(f, And):
        return sat(M, T, f.left, domain) and sat(M, T, f.right, domain)
    if isinstance(f, Or):
        return sat(M, T, f.left, domain) or sat(M, T, f.right, domain)
    if isinstance(f, Imp):
        return all(not sat(M, U, f.left, domain) or sat(M, U, f.right, domain) for U in powerset(T))
    if isinstance(f, Tensor):
        return any(sat(M, U, f.left, domain) and sat(M, V, f.right, domain)
                   for U in powerset(T) for V in powerset(T) if U | V == T)
    if isinstance(f, Wand):
        return all(not sat(M, U, f.left, domain) or sat(M, T | U, f.right, domain)
                   for U in teams(domain, A))
    inner = set(domain) | {f.var}
    if isinstance(f, Forall):
        return sat(M, frozenset(_set(s, f.var, a) for s in T for a in A), f.body, inner)
    if isinstance(f, Exists):
        members = sorted(T)
        return any(sat(M, frozenset(_set(s, f.var, a) for s, a in zip(members, choice)), f.body, inner)
                   for choice in itertools.product(A, repeat=len(members)))
    if isinstance(f, GuardedExists):
        return sat(M, T, Exists(f.var, And(Dep(f.governors, f.var), f.body)), domain)
    if isinstance(f, GuardedForall):
        return sat(M, T, Forall(f.var, Imp(Dep(f.governors, f.var), f.body)), domain)
    raise TypeError(f)


def satisfying(M, f, domain):
    """Every team on ``domain`` satisfying ``f``."""
    return {T for T in teams(domain, M["universe"]) if sat(M, T, f, domain)}


def structure_dict(structure):
    """Plain-dict view of a :class:`teamsem.model.Structure`."""
    return {
        "universe": list(structure.universe),
        "relations": {n: set(r.tuples) for n, r in structure.relations.items()},
        "constants": dict(structure.constants),
    }


def as_plain(team):
    """A ``teamsem`` Team as the oracle's frozenset of tuples."""
    return frozenset(tuple(s) for s in team.members)


def lower_sets(domain, universe):
    """Every downward-closed family of teams, by filtering all families."""
    ts = teams(domain, universe)
    out = []
    for bits in range(1 << len(ts)):
        fam = {ts[i] for i in range(len(ts)) if bits >> i & 1}
        if all(sub in fam for t in fam for sub in powerset(t)):
            out.append(frozenset(fam))
    return out
