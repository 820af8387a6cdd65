"""Abstract syntax of BID formulas.

Formulas are kept in negation normal form: polarity lives on relational and
equality atoms, and there is no negation node.  Dependence atoms carry no
polarity.  All nodes are frozen dataclasses, so formulas are hashable values
that can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import reduce
from typing import Iterable, Iterator, Union

from .errors import FragmentError


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


Term = Union[Var, Const]


def _governor_tuple(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names)))


@dataclass(frozen=True)
class RelAtom:
    name: str
    args: tuple[Term, ...]
    positive: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class EqAtom:
    left: Term
    right: Term
    positive: bool = True


@dataclass(frozen=True)
class Dep:
    """``D(W; v)``: the value of ``dependent`` is a function of ``governors``.

    Governors are stored sorted and without repetition.  ``Dep((), v)`` is the
    constancy atom ``C(v)``.
    """

    governors: tuple[str, ...]
    dependent: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "governors", _governor_tuple(self.governors))


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Wand:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class GuardedExists:
    """``exists v \\ W . body``, shorthand for ``exists v. (D(W; v) /\\ body)``."""

    var: str
    governors: tuple[str, ...]
    body: "Formula"

    def __post_init__(self) -> None:
        object.__setattr__(self, "governors", _governor_tuple(self.governors))
        if self.var in self.governors:
            raise ValueError(f"guard of {self.var} may not mention {self.var} itself")


@dataclass(frozen=True)
class GuardedForall:
    """``forall v \\ W . body``, shorthand for ``forall v. (D(W; v) -> body)``."""

    var: str
    governors: tuple[str, ...]
    body: "Formula"

    def __post_init__(self) -> None:
        object.__setattr__(self, "governors", _governor_tuple(self.governors))
        if self.var in self.governors:
            raise ValueError(f"guard of {self.var} may not mention {self.var} itself")


Literal = Union[RelAtom, EqAtom]
Binary = Union[And, Or, Imp, Tensor, Wand]
Quantifier = Union[Forall, Exists, GuardedExists, GuardedForall]
Formula = Union[RelAtom, EqAtom, Dep, And, Or, Imp, Tensor, Wand,
                Forall, Exists, GuardedExists, GuardedForall]

LITERALS = (RelAtom, EqAtom)
BINARY = (And, Or, Imp, Tensor, Wand)
QUANTIFIERS = (Forall, Exists, GuardedExists, GuardedForall)


class Fragment(IntEnum):
    """Syntactic fragments, ordered by inclusion."""

    FO_FLAT = 0
    DEP = 1
    BID_MINUS = 2
    BID = 3

    @property
    def label(self) -> str:
        return {0: "FO-flat", 1: "DEP", 2: "BID-", 3: "BID"}[int(self)]


# convenience constructors

def C(v: str) -> Dep:
    """Constancy atom, i.e. dependence on nothing."""
    return Dep((), v)


def D(governors: Iterable[str], dependent: str) -> Dep:
    return Dep(tuple(governors), dependent)


def P(name: str, *args: str | Term, positive: bool = True) -> RelAtom:
    return RelAtom(name, tuple(a if isinstance(a, (Var, Const)) else Var(a) for a in args), positive)


def eq(left: str | Term, right: str | Term, positive: bool = True) -> EqAtom:
    lt = left if isinstance(left, (Var, Const)) else Var(left)
    rt = right if isinstance(right, (Var, Const)) else Var(right)
    return EqAtom(lt, rt, positive)


def conj(parts: Iterable["Formula"]) -> "Formula":
    """Left-nested additive conjunction; raises on an empty iterable."""
    return reduce(And, parts)


def disj(parts: Iterable["Formula"]) -> "Formula":
    return reduce(Or, parts)


def tensor_all(parts: Iterable["Formula"]) -> "Formula":
    return reduce(Tensor, parts)


def foralls(variables: Iterable[str], body: "Formula") -> "Formula":
    """Quantify ``body`` universally over ``variables``, first name outermost."""
    for v in reversed(list(variables)):
        body = Forall(v, body)
    return body


# structural operations

def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, QUANTIFIERS):
        return (f.body,)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, including ``f`` itself."""
    yield f
    for c in children(f):
        yield from subformulas(c)


def depth(f: Formula) -> int:
    """Nesting depth of connectives and quantifiers; atoms have depth 0."""
    cs = children(f)
    return 0 if not cs else 1 + max(depth(c) for c in cs)


def term_vars(terms: Iterable[Term]) -> set[str]:
    return {t.name for t in terms if isinstance(t, Var)}


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, RelAtom):
        return frozenset(term_vars(f.args))
    if isinstance(f, EqAtom):
        return frozenset(term_vars((f.left, f.right)))
    if isinstance(f, Dep):
        return frozenset(f.governors) | {f.dependent}
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.var}
    if isinstance(f, (GuardedExists, GuardedForall)):
        return (free_vars(f.body) - {f.var}) | frozenset(f.governors)
    raise TypeError(f"not a formula: {f!r}")


def expand_guard(f: GuardedExists | GuardedForall) -> Formula:
    """Desugar a guarded quantifier into a plain quantifier over a guard."""
    guard = Dep(f.governors, f.var)
    if isinstance(f, GuardedExists):
        return Exists(f.var, And(guard, f.body))
    return Forall(f.var, Imp(guard, f.body))


def negate_literal(f: Literal) -> Literal:
    if isinstance(f, RelAtom):
        return RelAtom(f.name, f.args, not f.positive)
    return EqAtom(f.left, f.right, not f.positive)


def demorgan_dual(f: Formula) -> Formula:
    """Game-theoretic negation on the fragment of literals, ``/\\``, ``*`` and
    plain quantifiers.  Anything else raises :class:`FragmentError`."""
    if isinstance(f, LITERALS):
        return negate_literal(f)
    if isinstance(f, And):
        return Tensor(demorgan_dual(f.left), demorgan_dual(f.right))
    if isinstance(f, Tensor):
        return And(demorgan_dual(f.left), demorgan_dual(f.right))
    if isinstance(f, Forall):
        return Exists(f.var, demorgan_dual(f.body))
    if isinstance(f, Exists):
        return Forall(f.var, demorgan_dual(f.body))
    raise FragmentError(f"dual undefined for {type(f).__name__}")


def _node_fragment(f: Formula) -> Fragment:
    if isinstance(f, Wand):
        return Fragment.BID
    if isinstance(f, (Or, Imp, GuardedForall)):
        return Fragment.BID_MINUS
    if isinstance(f, (Dep, GuardedExists)):
        return Fragment.DEP
    return Fragment.FO_FLAT


def classify(f: Formula) -> Fragment:
    """Smallest fragment containing ``f``."""
    return max(_node_fragment(g) for g in subformulas(f))


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def map_terms(f: Formula, fn) -> Formula:
    """Rebuild ``f`` applying ``fn(term, bound)`` to every term occurrence,
    where ``bound`` is the set of variables bound at that point."""

    def go(g: Formula, bound: frozenset[str]) -> Formula:
        if isinstance(g, RelAtom):
            return RelAtom(g.name, tuple(fn(t, bound) for t in g.args), g.positive)
        if isinstance(g, EqAtom):
            return EqAtom(fn(g.left, bound), fn(g.right, bound), g.positive)
        if isinstance(g, Dep):
            return g
        if isinstance(g, BINARY):
            return type(g)(go(g.left, bound), go(g.right, bound))
        if isinstance(g, (Forall, Exists)):
            return type(g)(g.var, go(g.body, bound | {g.var}))
        if isinstance(g, (GuardedExists, GuardedForall)):
            return type(g)(g.var, g.governors, go(g.body, bound | {g.var}))
        raise TypeError(f"not a formula: {g!r}")

    return go(f, frozenset())
