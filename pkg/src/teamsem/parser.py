"""ASCII surface syntax: recursive-descent parser and minimal-parenthesis printer.

Precedence, tightest first::

    !  (atoms only)
    /\\
    *
    \\/
    ->  -*        right associative, not mixable without parentheses

Quantifier bodies extend as far to the right as possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import TeamsemError
from .syntax import (
    And, Const, Dep, EqAtom, Exists, Forall, Formula, GuardedExists,
    GuardedForall, Imp, Or, RelAtom, Tensor, Term, Var, Wand,
)

DIALECTS = ("bid", "dependence")


class ParseError(TeamsemError):
    def __init__(self, src: str, offset: int, expected: str, found: str) -> None:
        self.src = src
        self.offset = max(0, min(offset, len(src)))
        self.line = src.count("\n", 0, self.offset) + 1
        self.column = self.offset - (src.rfind("\n", 0, self.offset) + 1) + 1
        self.expected = expected
        self.found = found
        super().__init__(
            f"line {self.line}, column {self.column}: expected {expected}, found {found}")

    def render(self) -> str:
        """Error message followed by the offending line and a caret."""
        start = self.src.rfind("\n", 0, self.offset) + 1
        end = self.src.find("\n", self.offset)
        line = self.src[start:] if end < 0 else self.src[start:end]
        return f"parse error: {self}\n  {line}\n  {' ' * (self.column - 1)}^"


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<sym>/\\|\\/|->|-\*|\*|!|=|\(|\)|,|;|\.|\\)
  | (?P<ident>[A-Za-z0-9_][A-Za-z0-9_']*)
""", re.VERBOSE)

KEYWORDS = {"forall", "exists"}
RESERVED_ATOMS = {"D", "C"}


@dataclass(frozen=True)
class Token:
    kind: str      # 'sym', 'ident', 'kw', 'eof'
    text: str
    offset: int

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        return f"'{self.text}'"


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(src, pos, "a token", repr(src[pos]))
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            if kind == "ident" and text in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, text, pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, constants: frozenset[str], dialect: str) -> None:
        if dialect not in DIALECTS:
            raise ValueError(f"unknown dialect {dialect!r}")
        self.src = src
        self.toks = tokenize(src)
        self.i = 0
        self.constants = constants
        self.dialect = dialect

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, expected: str) -> ParseError:
        return ParseError(self.src, self.tok.offset, expected, self.tok.describe())

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"'{text}'")
        t = self.tok
        self.i += 1
        return t

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "ident":
            raise self.error(what)
        t = self.tok
        self.i += 1
        return t

    # grammar

    def parse(self) -> Formula:
        f = self.implication()
        if self.tok.kind != "eof":
            raise self.error("a binary connective or end of input")
        return f

    def implication(self) -> Formula:
        first = self.disjunction()
        if not (self.at("->") or self.at("-*")):
            return first
        op = self.tok.text
        operands = [first]
        while self.at("->") or self.at("-*"):
            if self.tok.text != op:
                raise self.error(f"'{op}' (mixing '->' and '-*' needs parentheses)")
            self.i += 1
            operands.append(self.disjunction())
        node = Imp if op == "->" else Wand
        result = operands[-1]
        for left in reversed(operands[:-1]):
            result = node(left, result)
        return result

    def _left_assoc(self, sym: str, sub, node) -> Formula:
        f = sub()
        while self.at(sym):
            self.i += 1
            f = node(f, sub())
        return f

    def disjunction(self) -> Formula:
        node = Or if self.dialect == "bid" else Tensor
        return self._left_assoc("\\/", self.tensor, node)

    def tensor(self) -> Formula:
        return self._left_assoc("*", self.conjunction, Tensor)

    def conjunction(self) -> Formula:
        return self._left_assoc("/\\", self.unary, And)

    def unary(self) -> Formula:
        if self.tok.kind == "kw":
            return self.quantifier()
        if self.at("!"):
            self.i += 1
            return self.negated_atom()
        if self.at("("):
            self.i += 1
            f = self.implication()
            self.expect(")")
            return f
        if self.tok.kind == "ident":
            return self.atom()
        raise self.error("a formula (atom, '!', '(' or quantifier)")

    def quantifier(self) -> Formula:
        kw = self.tok.text
        self.i += 1
        var = self.ident("a variable").text
        governors: list[str] = []
        guarded = False
        if self.at("\\"):
            guarded = True
            self.i += 1
            if not self.at("."):
                governors.append(self.ident("a governing variable or '.'").text)
                while self.at(","):
                    self.i += 1
                    governors.append(self.ident("a governing variable").text)
            if var in governors:
                raise ParseError(self.src, self.toks[self.i - 1].offset,
                                 f"a variable other than {var}", f"'{var}'")
        self.expect(".")
        body = self.implication()
        if guarded:
            cls = GuardedForall if kw == "forall" else GuardedExists
            return cls(var, tuple(governors), body)
        return Forall(var, body) if kw == "forall" else Exists(var, body)

    def negated_atom(self) -> Formula:
        if self.at("("):
            self.i += 1
            f = self.negated_atom_inner()
            self.expect(")")
        else:
            f = self.negated_atom_inner()
        if isinstance(f, RelAtom):
            return RelAtom(f.name, f.args, not f.positive)
        return EqAtom(f.left, f.right, not f.positive)

    def negated_atom_inner(self) -> Formula:
        if self.tok.kind != "ident":
            raise self.error("a relational or equality atom after '!'")
        if self.tok.text in RESERVED_ATOMS and self.peek().text == "(":
            raise self.error("a relational or equality atom (dependence atoms cannot be negated)")
        return self.atom()

    def term(self) -> Term:
        name = self.ident("a term").text
        return Const(name) if name in self.constants else Var(name)

    def atom(self) -> Formula:
        if self.peek().kind == "sym" and self.peek().text == "(":
            name = self.ident().text
            self.expect("(")
            if name in RESERVED_ATOMS:
                return self.dependence(name)
            args: list[Term] = []
            if not self.at(")"):
                args.append(self.term())
                while self.at(","):
                    self.i += 1
                    args.append(self.term())
            self.expect(")")
            return RelAtom(name, tuple(args))
        left = self.term()
        if not self.at("="):
            raise self.error("'(' or '='")
        self.i += 1
        right = self.term()
        return EqAtom(left, right)

    def dependence(self, name: str) -> Formula:
        if name == "C":
            v = self.ident("a variable").text
            self.expect(")")
            return Dep((), v)
        governors: list[str] = []
        if not self.at(";"):
            governors.append(self.ident("a variable or ';'").text)
            while self.at(","):
                self.i += 1
                governors.append(self.ident("a variable").text)
        self.expect(";")
        v = self.ident("the dependent variable").text
        self.expect(")")
        return Dep(tuple(governors), v)


def parse(src: str, constants: Iterable[str] = (), dialect: str = "bid") -> Formula:
    """Parse ``src``.  Identifiers listed in ``constants`` become :class:`Const`
    terms, every other term identifier a :class:`Var`."""
    return _Parser(src, frozenset(constants), dialect).parse()


# printing

_PREC = {Imp: 1, Wand: 1, Or: 2, Tensor: 3, And: 4}
ASCII = {And: "/\\", Or: "\\/", Imp: "->", Tensor: "*", Wand: "-*",
         "forall": "forall", "exists": "exists", "not": "!"}
UNICODE = {And: "∧", Or: "∨", Imp: "→", Tensor: "⊗", Wand: "⊸",
           "forall": "∀", "exists": "∃", "not": "¬"}


def _term(t: Term) -> str:
    return t.name


def _atom(f: Formula, sym: dict) -> str:
    if isinstance(f, RelAtom):
        s = f"{f.name}({', '.join(_term(a) for a in f.args)})"
        return s if f.positive else sym["not"] + s
    if isinstance(f, EqAtom):
        s = f"{_term(f.left)} = {_term(f.right)}"
        return s if f.positive else f"{sym['not']}({s})"
    assert isinstance(f, Dep)
    if not f.governors:
        return f"C({f.dependent})"
    return f"D({', '.join(f.governors)} ; {f.dependent})"


def to_text(f: Formula, unicode: bool = False) -> str:
    """Render ``f`` with the fewest parentheses that still parse back to ``f``."""
    sym = UNICODE if unicode else ASCII

    def go(g: Formula, tail: bool) -> str:
        # tail: nothing follows g up to the end of the enclosing group
        if isinstance(g, (RelAtom, EqAtom, Dep)):
            return _atom(g, sym)
        if isinstance(g, (Forall, Exists, GuardedExists, GuardedForall)):
            kw = sym["forall"] if isinstance(g, (Forall, GuardedForall)) else sym["exists"]
            head = f"{kw}{'' if unicode else ' '}{g.var}"
            if isinstance(g, (GuardedExists, GuardedForall)):
                head += f" \\ {', '.join(g.governors)} ." if g.governors else " \\ ."
            else:
                head += "."
            s = f"{head} {go(g.body, True)}"
            return s if tail else f"({s})"
        prec = _PREC[type(g)]
        right_assoc = prec == 1
        left = child(g.left, prec, right_assoc, type(g), is_left=True)
        right = child(g.right, prec, right_assoc, type(g), is_left=False, tail=tail)
        return f"{left} {sym[type(g)]} {right}"

    def child(c: Formula, prec: int, right_assoc: bool, parent, is_left: bool,
              tail: bool = False) -> str:
        if type(c) in _PREC:
            cp = _PREC[type(c)]
            if cp < prec:
                return f"({go(c, True)})"
            if cp == prec:
                if right_assoc:
                    if is_left or type(c) is not parent:
                        return f"({go(c, True)})"
                elif not is_left:
                    return f"({go(c, True)})"
            return go(c, tail and not is_left)
        return go(c, tail and not is_left)

    return go(f, True)
