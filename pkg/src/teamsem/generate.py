"""Deterministic enumeration and seeded sampling of formulas by depth.

Formulas of depth at most ``d`` whose free variables lie in a scope ``S`` form
a finite space that is counted exactly and indexed, so the i-th formula can
be built directly.  Exhaustive sweeps walk every index; larger spaces are
sampled uniformly by drawing distinct indices from a seeded RNG.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator, Sequence

from .syntax import (
    And, Const, Dep, EqAtom, Exists, Forall, Formula, GuardedExists,
    GuardedForall, Imp, Or, RelAtom, Tensor, Var, Wand,
)

BINARY_NODES = (And, Or, Imp, Tensor, Wand)
PLAIN_QUANTIFIERS = (Forall, Exists)
GUARDED_QUANTIFIERS = (GuardedExists, GuardedForall)


def atom_pool(scope: Sequence[str], relation: str = "P", constant: str = "c0") -> list[Formula]:
    """Instances of ``P(x)``, ``x = y``, ``x = c0``, ``D(x ; y)``, ``C(x)`` over
    ``scope``; literals come in both polarities."""
    vs = sorted(scope)
    out: list[Formula] = []
    for u in vs:
        out += [RelAtom(relation, (Var(u),)), RelAtom(relation, (Var(u),), False)]
    for u, w in itertools.combinations(vs, 2):
        out += [EqAtom(Var(u), Var(w)), EqAtom(Var(u), Var(w), False)]
    for u in vs:
        out += [EqAtom(Var(u), Const(constant)), EqAtom(Var(u), Const(constant), False)]
    for u, w in itertools.permutations(vs, 2):
        out.append(Dep((u,), w))
    for u in vs:
        out.append(Dep((), u))
    return out


class FormulaSpace:
    """All formulas of depth ``<= depth`` with free variables in ``scope``.

    Quantifiers bind variables from ``pool`` (rebinding a variable already in
    scope is allowed), so every subformula lives over at most
    ``scope ∪ pool``.
    """

    def __init__(self, pool: Sequence[str] = ("x", "y"), relation: str = "P",
                 constant: str = "c0") -> None:
        self.pool = tuple(sorted(pool))
        self.relation = relation
        self.constant = constant
        self._atoms = lru_cache(maxsize=None)(self._atoms_uncached)
        self.count = lru_cache(maxsize=None)(self._count)

    def _atoms_uncached(self, scope: frozenset[str]) -> tuple[Formula, ...]:
        return tuple(atom_pool(sorted(scope), self.relation, self.constant))

    def _quantifier_slots(self, scope: frozenset[str]):
        """(node, var, governors) triples in a fixed order."""
        for node in PLAIN_QUANTIFIERS:
            for v in self.pool:
                yield node, v, None
        for node in GUARDED_QUANTIFIERS:
            for v in self.pool:
                rest = sorted(scope - {v})
                for k in range(len(rest) + 1):
                    for ws in itertools.combinations(rest, k):
                        yield node, v, ws

    def _count(self, depth: int, scope: frozenset[str]) -> int:
        n = len(self._atoms(scope))
        if depth == 0:
            return n
        sub = self.count(depth - 1, scope)
        n += len(BINARY_NODES) * sub * sub
        for _, v, _ in self._quantifier_slots(scope):
            n += self.count(depth - 1, scope | {v})
        return n

    def unrank(self, i: int, depth: int, scope: frozenset[str]) -> Formula:
        scope = frozenset(scope)
        if not 0 <= i < self.count(depth, scope):
            raise IndexError(i)
        atoms = self._atoms(scope)
        if i < len(atoms):
            return atoms[i]
        i -= len(atoms)
        sub = self.count(depth - 1, scope)
        for node in BINARY_NODES:
            if i < sub * sub:
                left, right = divmod(i, sub)
                return node(self.unrank(left, depth - 1, scope), self.unrank(right, depth - 1, scope))
            i -= sub * sub
        for node, v, ws in self._quantifier_slots(scope):
            inner = scope | {v}
            n = self.count(depth - 1, inner)
            if i < n:
                body = self.unrank(i, depth - 1, inner)
                return node(v, body) if ws is None else node(v, ws, body)
            i -= n
        raise AssertionError("index bookkeeping is off")

    def formulas(self, depth: int, scope, cap: int | None = None,
                 rng: random.Random | None = None) -> Iterator[Formula]:
        """Every formula when the space has at most ``cap`` members, else a
        uniform sample of ``cap`` distinct ones drawn with ``rng``."""
        scope = frozenset(scope)
        n = self.count(depth, scope)
        if cap is None or n <= cap:
            indices: Sequence[int] = range(n)
        else:
            indices = sorted((rng or random.Random(0)).sample(range(n), cap))
        for i in indices:
            yield self.unrank(i, depth, scope)
