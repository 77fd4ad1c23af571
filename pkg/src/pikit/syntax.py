"""The clause-file grammar: parsing and printing.

Uppercase-initial identifiers are variables; lowercase-initial identifiers
are predicates, functors, or constants depending on position.  Clauses are
pipe-separated literals terminated by a period; `#` starts a comment.

    q(Y). ~r(f(X),b). p(X)|r(Y,b)|~q(Z).

Arity is fixed per symbol within one file (declared implicitly by first
use); predicates and functors live in separate namespaces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .clauses import Clause
from .terms import Atom, Compound, Literal, Term, Variable


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__("line %d, col %d: %s" % (line, col, message))


@dataclass
class Signature:
    """Predicate and functor arities, enforced on first use."""

    predicates: dict[str, int] = field(default_factory=dict)
    functions: dict[str, int] = field(default_factory=dict)

    def note_predicate(self, name: str, arity: int, pos: tuple[int, int] | None = None) -> None:
        known = self.predicates.get(name)
        if known is None:
            self.predicates[name] = arity
        elif known != arity:
            raise _arity_error("predicate", name, known, arity, pos)

    def note_function(self, name: str, arity: int, pos: tuple[int, int] | None = None) -> None:
        known = self.functions.get(name)
        if known is None:
            self.functions[name] = arity
        elif known != arity:
            raise _arity_error("function symbol", name, known, arity, pos)

    def note_clause(self, clause: Clause) -> None:
        for lit in clause.literals:
            self.note_predicate(lit.atom.predicate, len(lit.atom.args))
            for arg in lit.atom.args:
                self.note_term(arg)

    def note_term(self, term: Term) -> None:
        if isinstance(term, Compound):
            self.note_function(term.functor, len(term.args))
            for arg in term.args:
                self.note_term(arg)


def _arity_error(kind: str, name: str, known: int, arity: int, pos: tuple[int, int] | None):
    message = "arity mismatch: %s '%s' used with arity %d after arity %d" % (
        kind,
        name,
        arity,
        known,
    )
    if pos is None:
        return ValueError(message)
    return ParseError(message, pos[0], pos[1])


@dataclass
class ClauseFile:
    """Parsed clause file: clauses in order, with source positions."""

    clauses: list[Clause] = field(default_factory=list)
    positions: list[tuple[int, int]] = field(default_factory=list)
    signature: Signature = field(default_factory=Signature)


_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<uident>[A-Z][A-Za-z0-9_]*)
      | (?P<lident>[a-z][A-Za-z0-9_]*)
      | (?P<punct>[(),|~.])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError("unexpected character %r" % text[i], line, col)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append((kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        i = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, signature: Signature | None = None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.signature = signature if signature is not None else Signature()

    def peek(self) -> tuple[str, str, int, int]:
        return self.tokens[self.pos]

    def next(self) -> tuple[str, str, int, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> tuple[str, str, int, int]:
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError("expected %r, found %r" % (want, tok[1] or "end of input"), tok[2], tok[3])
        return self.next()

    def parse_file(self) -> ClauseFile:
        out = ClauseFile(signature=self.signature)
        while self.peek()[0] != "eof":
            tok = self.peek()
            if tok[0] == "punct" and tok[1] == ".":
                raise ParseError("empty clause", tok[2], tok[3])
            out.positions.append((tok[2], tok[3]))
            out.clauses.append(self.parse_clause_line())
        return out

    def parse_clause_line(self) -> Clause:
        literals = [self.parse_literal()]
        while True:
            tok = self.peek()
            if tok[0] == "punct" and tok[1] == "|":
                self.next()
                literals.append(self.parse_literal())
            elif tok[0] == "punct" and tok[1] == ".":
                self.next()
                return Clause(tuple(literals))
            else:
                raise ParseError(
                    "expected '|' or '.', found %r" % (tok[1] or "end of input"), tok[2], tok[3]
                )

    def parse_literal(self) -> Literal:
        tok = self.peek()
        positive = True
        if tok[0] == "punct" and tok[1] == "~":
            self.next()
            positive = False
        return Literal(self.parse_atom(), positive)

    def parse_atom(self) -> Atom:
        kind, name, line, col = self.peek()
        if kind != "lident":
            raise ParseError(
                "expected a predicate, found %r" % (name or "end of input"), line, col
            )
        self.next()
        args = self.parse_args()
        self.signature.note_predicate(name, len(args), (line, col))
        return Atom(name, args)

    def parse_args(self) -> tuple[Term, ...]:
        tok = self.peek()
        if not (tok[0] == "punct" and tok[1] == "("):
            return ()
        self.next()
        args = [self.parse_term()]
        while True:
            tok = self.peek()
            if tok[0] == "punct" and tok[1] == ",":
                self.next()
                args.append(self.parse_term())
            elif tok[0] == "punct" and tok[1] == ")":
                self.next()
                return tuple(args)
            else:
                raise ParseError(
                    "expected ',' or ')', found %r" % (tok[1] or "end of input"), tok[2], tok[3]
                )

    def parse_term(self) -> Term:
        kind, name, line, col = self.peek()
        if kind == "uident":
            self.next()
            return Variable(name)
        if kind == "lident":
            self.next()
            args = self.parse_args()
            self.signature.note_function(name, len(args), (line, col))
            return Compound(name, args)
        raise ParseError("expected a term, found %r" % (name or "end of input"), line, col)


def parse_clause_file(text: str, signature: Signature | None = None) -> ClauseFile:
    return _Parser(text, signature).parse_file()


def parse_clause(text: str, signature: Signature | None = None) -> Clause:
    """Parse exactly one clause (for queries and store entries)."""
    parsed = _Parser(text, signature).parse_file()
    if len(parsed.clauses) != 1:
        raise ParseError("expected exactly one clause, found %d" % len(parsed.clauses), 1, 1)
    return parsed.clauses[0]


def parse_term(text: str) -> Term:
    """Parse a single term (used for association bindings)."""
    parser = _Parser(text)
    term = parser.parse_term()
    tok = parser.peek()
    if tok[0] != "eof":
        raise ParseError("trailing input after term: %r" % tok[1], tok[2], tok[3])
    return term


def print_clause(c: Clause) -> str:
    """Canonical-order one-line form, terminated by a period."""
    return "%s." % c


def print_clause_file(f: ClauseFile | Iterable[Clause]) -> str:
    clauses = f.clauses if isinstance(f, ClauseFile) else list(f)
    return "".join(print_clause(c) + "\n" for c in clauses)
