"""Clauses as canonical literal sets, θ-subsumption, and subsumption residue."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .terms import EMPTY, Literal, Substitution, _match, apply, variables_of


@dataclass(frozen=True)
class Clause:
    """A duplicate-free disjunction of literals in a fixed canonical order.

    Construction merges duplicate literals and sorts, so clause equality is
    insensitive to the order literals were supplied in.  The empty clause
    prints as ``$false``.
    """

    literals: tuple[Literal, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(set(self.literals), key=lambda l: l.sort_key))
        object.__setattr__(self, "literals", ordered)

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self.literals)
            object.__setattr__(self, "_hash", h)
        return h

    def is_fundamental(self) -> bool:
        """False iff some atom occurs both positively and negatively."""
        pos = {l.atom for l in self.literals if l.positive}
        neg = {l.atom for l in self.literals if not l.positive}
        return not (pos & neg)

    @property
    def is_empty(self) -> bool:
        return not self.literals

    def apply_substitution(self, sub: Substitution) -> "Clause":
        return Clause(tuple(apply(sub, l) for l in self.literals))

    def variables(self) -> set[str]:
        return variables_of(self)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "$false"
        return "|".join(str(l) for l in self.literals)

    __repr__ = __str__


def subsumes(c1: Clause, c2: Clause) -> Substitution | None:
    """Witness substitution s with apply(s, c1) ⊆ c2, or None.

    Complete backtracking search over literal-to-literal matchings; the
    first witness in canonical literal order is returned, so the result is
    deterministic.  The empty clause subsumes everything.
    """
    lits1 = c1.literals
    lits2 = c2.literals

    def search(i: int, d: dict) -> dict | None:
        if i == len(lits1):
            return d
        lit = lits1[i]
        for cand in lits2:
            if cand.positive != lit.positive:
                continue
            nxt = _match(lit.atom, cand.atom, d)
            if nxt is None:
                continue
            found = search(i + 1, nxt)
            if found is not None:
                return found
        return None

    found = search(0, {})
    return None if found is None else Substitution(found)


@dataclass(frozen=True)
class AssocClause:
    """A clause together with its association and provenance.

    Input clauses carry the empty association; consensus results carry the
    composed substitution and the ids of their parents.
    """

    clause: Clause
    assoc: Substitution = EMPTY
    parents: tuple[int, int] | None = None

    @property
    def key(self) -> tuple[Clause, Substitution]:
        return (self.clause, self.assoc)

    @property
    def origin(self) -> str:
        if self.parents is None:
            return "input"
        return "consensus(%d,%d)" % self.parents

    @property
    def entry_text(self) -> str:
        assoc = self.assoc.bindings_text
        return "%s ; assoc%s ; origin %s" % (
            self.clause,
            " " + assoc if assoc else "",
            self.origin,
        )

    def __str__(self) -> str:
        return self.entry_text

    __repr__ = __str__


class ClauseSet:
    """Insertion-ordered collection of associated clauses.

    Members are unique by (clause, assoc): the same clause text with a
    different association is kept as a distinct member, since associations
    gate consensus eligibility.
    """

    __slots__ = ("_members",)

    def __init__(self, members: Iterable[AssocClause] = ()):
        self._members: dict[tuple, AssocClause] = {}
        for m in members:
            self.add(m)

    def add(self, member: AssocClause) -> bool:
        """Append a member; False when an equal (clause, assoc) pair exists."""
        k = member.key
        if k in self._members:
            return False
        self._members[k] = member
        return True

    def contains_key(self, key: tuple) -> bool:
        return key in self._members

    def __contains__(self, member: AssocClause) -> bool:
        return member.key in self._members

    def __iter__(self) -> Iterator[AssocClause]:
        return iter(self._members.values())

    def __len__(self) -> int:
        return len(self._members)

    def copy(self) -> "ClauseSet":
        out = ClauseSet()
        out._members = dict(self._members)
        return out

    @property
    def members(self) -> tuple[AssocClause, ...]:
        return tuple(self._members.values())

    def key_set(self) -> frozenset:
        return frozenset(self._members)

    def clause_texts(self) -> list[str]:
        return [str(m.clause) for m in self]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClauseSet):
            return NotImplemented
        return self.members == other.members

    def __repr__(self) -> str:
        return "{%s}" % ", ".join(str(m.clause) for m in self)


@dataclass
class Residue:
    """Result of subsumption-minimizing a clause set."""

    kept: ClauseSet
    deleted: tuple[AssocClause, ...]


def residue(s: ClauseSet, stats=None) -> Residue:
    """Subsumption-minimal subset of `s` that still subsumes every member.

    Deletion looks only at clause content, never at associations.  When two
    members subsume each other (variants or duplicates) the earlier-inserted
    one wins, which keeps runs reproducible and favours established members
    over newcomers.  Reports which members were deleted.
    """
    members = list(s)
    n = len(members)
    cache: dict[tuple[int, int], bool] = {}

    def covers(i: int, j: int) -> bool:
        k = (i, j)
        if k not in cache:
            if stats is not None:
                stats.subsumption_checks += 1
            cache[k] = subsumes(members[i].clause, members[j].clause) is not None
        return cache[k]

    kept: list[AssocClause] = []
    deleted: list[AssocClause] = []
    for i in range(n):
        dropped = False
        for j in range(n):
            if i == j or not covers(j, i):
                continue
            if not covers(i, j) or j < i:
                dropped = True
                break
        (deleted if dropped else kept).append(members[i])
    return Residue(ClauseSet(kept), tuple(deleted))


def clause_set_equal(a: ClauseSet, b: ClauseSet) -> bool:
    """Order-insensitive equality on (clause, assoc) pairs."""
    return a.key_set() == b.key_set()
