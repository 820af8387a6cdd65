"""Finite structures, assignments and teams.

A team is a set of assignments that all share one variable domain.  Teams are
immutable and compare extensionally; the empty team still remembers its
domain, which matters once quantifiers extend it.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import BoundExceeded, DomainError, MissingValue, StructureError

DEFAULT_MAX_ASSIGNMENTS = 16


@dataclass(frozen=True)
class Relation:
    arity: int
    tuples: frozenset[tuple[str, ...]]


@dataclass(frozen=True, eq=True)
class Structure:
    universe: tuple[str, ...]
    relations: Mapping[str, Relation] = field(default_factory=dict)
    constants: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "universe", tuple(self.universe))
        if not self.universe:
            raise StructureError("universe must be non-empty")
        if len(set(self.universe)) != len(self.universe):
            raise StructureError("universe has repeated elements")
        elems = set(self.universe)
        rels = {}
        for name, rel in dict(self.relations).items():
            if not isinstance(rel, Relation):
                arity, tuples = rel
                rel = Relation(arity, frozenset(tuple(t) for t in tuples))
            for tup in rel.tuples:
                if len(tup) != rel.arity:
                    raise StructureError(f"{name}: tuple {tup} does not have arity {rel.arity}")
                if not set(tup) <= elems:
                    raise StructureError(f"{name}: tuple {tup} leaves the universe")
            rels[name] = rel
        object.__setattr__(self, "relations", rels)
        for name, value in self.constants.items():
            if value not in elems:
                raise StructureError(f"constant {name} = {value!r} is not in the universe")
        object.__setattr__(self, "constants", dict(self.constants))

    def with_relation(self, name: str, arity: int, tuples: Iterable[Sequence[str]]) -> "Structure":
        rels = dict(self.relations)
        rels[name] = Relation(arity, frozenset(tuple(t) for t in tuples))
        return Structure(self.universe, rels, self.constants)

    def with_constants(self, extra: Mapping[str, str]) -> "Structure":
        return Structure(self.universe, self.relations, {**self.constants, **extra})

    def to_json(self) -> dict:
        return {
            "universe": list(self.universe),
            "relations": {
                name: {"arity": rel.arity, "tuples": [list(t) for t in sorted(rel.tuples)]}
                for name, rel in sorted(self.relations.items())
            },
            "constants": dict(sorted(self.constants.items())),
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "Structure":
        _check_keys(doc, {"universe"}, {"relations", "constants"}, "structure")
        universe = doc["universe"]
        if not isinstance(universe, list) or not all(isinstance(a, str) for a in universe):
            raise StructureError("universe must be a list of strings")
        rels = {}
        for name, rdoc in doc.get("relations", {}).items():
            _check_keys(rdoc, {"arity", "tuples"}, set(), f"relation {name}")
            arity = rdoc["arity"]
            if not isinstance(arity, int) or arity < 0:
                raise StructureError(f"relation {name}: arity must be a non-negative integer")
            rels[name] = Relation(arity, frozenset(tuple(t) for t in rdoc["tuples"]))
        return cls(tuple(universe), rels, dict(doc.get("constants", {})))

    @classmethod
    def load(cls, path: str | Path) -> "Structure":
        return cls.from_json(_read_json(path))

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")


def _read_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise StructureError(f"{path}: invalid JSON ({e})") from e


def _check_keys(doc, required: set[str], optional: set[str], what: str) -> None:
    if not isinstance(doc, Mapping):
        raise StructureError(f"{what}: expected a JSON object")
    missing = required - doc.keys()
    unknown = doc.keys() - required - optional
    if missing:
        raise StructureError(f"{what}: missing key(s) {sorted(missing)}")
    if unknown:
        raise StructureError(f"{what}: unknown key(s) {sorted(unknown)}")


class Assignment(tuple):
    """A total map from a finite set of variables to elements.

    Stored as a tuple of ``(variable, element)`` pairs sorted by variable, so
    hashing and equality are plain tuple operations.
    """

    __slots__ = ()

    def __new__(cls, pairs: Mapping[str, str] | Iterable[tuple[str, str]] = ()):
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        return super().__new__(cls, tuple(sorted(pairs)))

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(v for v, _ in self)

    def value(self, v: str) -> str:
        for w, a in self:
            if w == v:
                return a
        raise DomainError(f"variable {v} not in assignment domain {sorted(self.domain)}")

    def extend(self, v: str, a: str) -> "Assignment":
        """``s[v -> a]``; overwrites ``v`` if already bound."""
        return Assignment([p for p in self if p[0] != v] + [(v, a)])

    def restrict(self, variables: Iterable[str]) -> "Assignment":
        keep = set(variables)
        return Assignment([p for p in self if p[0] in keep])

    def as_dict(self) -> dict[str, str]:
        return dict(self)

    def __repr__(self) -> str:
        return "(" + ", ".join(f"{v}↦{a}" for v, a in self) + ")"


@dataclass(frozen=True)
class Team:
    domain: frozenset[str]
    members: frozenset[Assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(self, "members", frozenset(self.members))

    @classmethod
    def of(cls, domain: Iterable[str], members: Iterable[Mapping[str, str] | Assignment] = ()) -> "Team":
        dom = frozenset(domain)
        ms = frozenset(m if isinstance(m, Assignment) else Assignment(m) for m in members)
        for m in ms:
            if m.domain != dom:
                raise DomainError(f"assignment {m!r} does not have domain {sorted(dom)}")
        return cls(dom, ms)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Assignment]:
        return iter(sorted(self.members))

    def __contains__(self, s: object) -> bool:
        return s in self.members

    def __le__(self, other: "Team") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Team") -> bool:
        return self.members < other.members

    @classmethod
    def _raw(cls, domain: frozenset[str], members: frozenset[Assignment]) -> "Team":
        # skips the normalisation in __post_init__; both arguments must be frozensets
        t = object.__new__(cls)
        object.__setattr__(t, "domain", domain)
        object.__setattr__(t, "members", members)
        return t

    def __or__(self, other: "Team") -> "Team":
        return Team._raw(self.domain, self.members | other.members)

    def __and__(self, other: "Team") -> "Team":
        return Team._raw(self.domain, self.members & other.members)

    def __sub__(self, other: "Team") -> "Team":
        return Team._raw(self.domain, self.members - other.members)

    def __repr__(self) -> str:
        if not self.members:
            return f"∅[{','.join(sorted(self.domain))}]"
        return "{" + ", ".join(repr(s) for s in self) + "}"

    def sort_key(self) -> tuple:
        return (len(self.members), sorted(self.members))

    def subteams(self) -> Iterator["Team"]:
        """Every subset of the team, smallest first."""
        ms = sorted(self.members)
        for k in range(len(ms) + 1):
            for combo in itertools.combinations(ms, k):
                yield Team._raw(self.domain, frozenset(combo))

    def to_json(self) -> dict:
        return {"domain": sorted(self.domain), "members": [s.as_dict() for s in self]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "Team":
        _check_keys(doc, {"domain", "members"}, set(), "team")
        dom = doc["domain"]
        if len(set(dom)) != len(dom):
            raise StructureError("team domain has repeated variables")
        try:
            return cls.of(dom, doc["members"])
        except DomainError as e:
            raise StructureError(str(e)) from e

    @classmethod
    def load(cls, path: str | Path) -> "Team":
        return cls.from_json(_read_json(path))

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")


def check_team_in(team: Team, structure: Structure) -> None:
    elems = set(structure.universe)
    for s in team.members:
        for v, a in s:
            if a not in elems:
                raise StructureError(f"team value {v}={a!r} is not in the universe")


def extend_all(team: Team, v: str, universe: Sequence[str]) -> Team:
    """``T[v -> A]``: every member paired with every element for ``v``."""
    return Team(team.domain | {v}, frozenset(t.extend(v, a) for t in team.members for a in universe))


def extend_fn(team: Team, v: str, f: Callable[[Assignment], str] | Mapping[Assignment, str]) -> Team:
    """``T[v -> f]`` for a choice function defined on the members of ``team``."""
    get = f.get if isinstance(f, Mapping) else f
    out = []
    for t in team.members:
        try:
            a = get(t)
        except KeyError:
            a = None
        if a is None:
            raise MissingValue(f"choice function undefined on {t!r}")
        out.append(t.extend(v, a))
    return Team(team.domain | {v}, frozenset(out))


def equiv_w(s: Assignment, t: Assignment, w: Iterable[str]) -> bool:
    """``s ≃_W t``: the assignments agree on every variable in ``w``."""
    ws = list(w)
    if not set(ws) <= s.domain or not set(ws) <= t.domain:
        raise DomainError(f"{sorted(ws)} not contained in both assignment domains")
    return all(s.value(x) == t.value(x) for x in ws)


def rel(team: Team, order: Sequence[str]) -> frozenset[tuple[str, ...]]:
    """The relation ``{(t(v1), ..., t(vn)) | t in T}`` for a listing of the domain."""
    if len(set(order)) != len(order) or frozenset(order) != team.domain:
        raise DomainError(f"order {list(order)} is not a listing of {sorted(team.domain)}")
    return frozenset(tuple(t.value(v) for v in order) for t in team.members)


@lru_cache(maxsize=None)
def _assignments(domain: tuple[str, ...], universe: tuple[str, ...]) -> tuple[Assignment, ...]:
    return tuple(Assignment(zip(domain, values))
                 for values in itertools.product(universe, repeat=len(domain)))


def all_assignments(domain: Iterable[str], universe: Sequence[str]) -> tuple[Assignment, ...]:
    """``A^X`` in lexicographic order of the universe ordering."""
    return _assignments(tuple(sorted(domain)), tuple(universe))


def full_team(domain: Iterable[str], universe: Sequence[str]) -> Team:
    return Team(frozenset(domain), frozenset(all_assignments(domain, universe)))


@lru_cache(maxsize=64)
def _teams(domain: tuple[str, ...], universe: tuple[str, ...]) -> tuple[Team, ...]:
    ass = _assignments(domain, universe)
    dom = frozenset(domain)
    out = []
    for mask in range(1 << len(ass)):
        out.append(Team(dom, frozenset(a for i, a in enumerate(ass) if mask >> i & 1)))
    return tuple(out)


def all_teams(domain: Iterable[str], universe: Sequence[str] | Structure,
              bound: int = DEFAULT_MAX_ASSIGNMENTS) -> tuple[Team, ...]:
    """Every team on ``domain``, each exactly once, in bitmask order of ``A^X``.

    ``bound`` caps ``|A|^|X|``, so at most ``2**bound`` teams are produced.
    """
    if isinstance(universe, Structure):
        universe = universe.universe
    dom = tuple(sorted(domain))
    n = len(universe) ** len(dom)
    if n > bound:
        raise BoundExceeded("assignments |A|^|X|", n, bound)
    return _teams(dom, tuple(universe))
