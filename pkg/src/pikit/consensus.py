"""Pairwise consensus, the saturation step, and closure to a fixpoint.

Consensus of two clauses resolves one complementary literal pair under its
mgu, but is only defined when both parents' associations compose with the
mgu to the same substitution; otherwise the attempt is blocked.  Tautological
resolvents are discarded.  Saturation is not guaranteed to terminate on
first-order inputs, so every closure takes explicit resource limits and
fails loudly with the partial set when a cap is hit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .clauses import AssocClause, Clause, ClauseSet
from .terms import Literal, Substitution, compose, unify


@dataclass(frozen=True)
class ResourceLimits:
    max_rounds: int = 100
    max_clauses: int = 10_000


DEFAULT_LIMITS = ResourceLimits()


class ResourceLimitExceeded(Exception):
    """A round or clause cap was hit before reaching a fixpoint.

    Carries the partial clause set; saturation is never silently truncated.
    """

    def __init__(self, limit: str, value: int, partial: ClauseSet):
        self.limit = limit
        self.value = value
        self.partial = partial
        self.clause_index: int | None = None
        super().__init__("%s limit (%d) exceeded before reaching a fixpoint" % (limit, value))


class Outcome(str, Enum):
    ADDED = "added"
    BLOCKED = "blocked"
    NON_FUNDAMENTAL = "non_fundamental"
    DUPLICATE = "duplicate"


@dataclass(frozen=True)
class ConsensusResult:
    """A resolvent with its new association and derivation metadata."""

    clause: AssocClause
    parents: tuple[int, int]
    mgu: Substitution
    resolved_upon: tuple[Literal, Literal]


@dataclass(frozen=True)
class TraceEvent:
    """One record per consensus attempt, consumed by the CLI trace stream."""

    round: int
    parents: tuple[int, int]
    parent_texts: tuple[str, str]
    mgu: Substitution
    outcome: str
    result_text: str | None = None

    def format(self) -> str:
        return "ROUND %d: (%d, %d) mgu=%s -> %s" % (
            self.round,
            self.parents[0],
            self.parents[1],
            self.mgu,
            self.outcome,
        )


class TraceLog:
    """Callable trace sink that records events in order."""

    def __init__(self) -> None:
        self.events: list[TraceEvent] = []

    def __call__(self, event: TraceEvent) -> None:
        self.events.append(event)


Trace = Callable[[TraceEvent], None]


def complementary_pairs(
    c1: AssocClause, c2: AssocClause
) -> list[tuple[Literal, Literal, Substitution]]:
    """All opposite-sign literal pairs (r in c1, s in c2) whose atoms unify.

    Pairs come out in the canonical literal order of c1 then c2, each with
    its mgu, so enumeration is deterministic.
    """
    pairs = []
    for r in c1.clause.literals:
        for s in c2.clause.literals:
            if r.positive == s.positive or r.atom.predicate != s.atom.predicate:
                continue
            mgu = unify(r.atom, s.atom)
            if mgu is not None:
                pairs.append((r, s, mgu))
    return pairs


def consensus(
    c1: AssocClause,
    c2: AssocClause,
    pair: tuple[Literal, Literal, Substitution],
    parents: tuple[int, int] = (0, 0),
) -> ConsensusResult | Outcome:
    """Consensus of c1 and c2 on one complementary pair.

    Returns Outcome.BLOCKED when the parents' associations do not compose
    consistently with the mgu, Outcome.NON_FUNDAMENTAL when the resolvent is
    tautological, and otherwise the resolvent associated with the composed
    substitution.
    """
    r, s, mgu = pair
    a1 = compose(c1.assoc, mgu)
    a2 = compose(c2.assoc, mgu)
    if a1 != a2:
        return Outcome.BLOCKED
    rest = [l for l in c1.clause.literals if l != r]
    rest += [l for l in c2.clause.literals if l != s]
    resolvent = Clause(tuple(rest)).apply_substitution(mgu)
    if not resolvent.is_fundamental():
        return Outcome.NON_FUNDAMENTAL
    return ConsensusResult(AssocClause(resolvent, a1, parents=parents), parents, mgu, (r, s))


def _attempt_pairs(
    base: ClauseSet,
    new_side: ClauseSet,
    admit: Callable[[ConsensusResult], Outcome],
    *,
    round_no: int = 1,
    trace: Trace | None = None,
    stats=None,
    fresh: set | None = None,
) -> list[AssocClause]:
    """Attempt consensus over ordered pairs (D1 in base, D2 in new_side).

    Distinct members only; `admit` decides whether a resolvent is new.
    Returns the admitted clauses in derivation order.  Parent ids are the
    1-based positions of the parents in `base`.  When `fresh` is given,
    pairs of two non-fresh members are skipped: their consensuses were all
    attempted in an earlier round, so they can only repeat old outcomes.
    """
    index = {m.key: i + 1 for i, m in enumerate(base)}
    admitted: list[AssocClause] = []
    for d1 in base:
        for d2 in new_side:
            if d1.key == d2.key:
                continue
            if fresh is not None and d1.key not in fresh and d2.key not in fresh:
                continue
            ids = (index.get(d1.key, 0), index.get(d2.key, 0))
            for pair in complementary_pairs(d1, d2):
                if stats is not None:
                    stats.consensus_attempts += 1
                res = consensus(d1, d2, pair, parents=ids)
                if isinstance(res, ConsensusResult):
                    outcome = admit(res)
                    if outcome is Outcome.ADDED:
                        admitted.append(res.clause)
                    result_text: str | None = str(res.clause.clause)
                else:
                    outcome, result_text = res, None
                if trace is not None:
                    trace(
                        TraceEvent(
                            round_no,
                            ids,
                            (str(d1.clause), str(d2.clause)),
                            pair[2],
                            outcome.value,
                            result_text,
                        )
                    )
    return admitted


def consensus_step(
    base: ClauseSet,
    new_side: ClauseSet,
    *,
    limits: ResourceLimits = DEFAULT_LIMITS,
    trace: Trace | None = None,
    stats=None,
    round_no: int = 1,
) -> ClauseSet:
    """base plus all consensuses over pairs (D1 in base, D2 in new_side).

    Blocked and non-fundamental outcomes are skipped and resolvents whose
    (clause, assoc) pair is already present are not re-added.  The full
    saturation operator is the special case new_side == base.
    """
    acc = base.copy()

    def admit(res: ConsensusResult) -> Outcome:
        if not acc.add(res.clause):
            return Outcome.DUPLICATE
        if len(acc) > limits.max_clauses:
            raise ResourceLimitExceeded("max-clauses", limits.max_clauses, acc)
        return Outcome.ADDED

    _attempt_pairs(base, new_side, admit, round_no=round_no, trace=trace, stats=stats)
    return acc


@dataclass
class ClosureResult:
    """A consensus closure with its per-round iterates.

    `iterates[i]` is the i-th saturation iterate (index 0 is the input);
    `rounds` is the fixpoint index: the first i with iterate i+1 == iterate i.
    """

    clauses: ClauseSet
    iterates: list[ClauseSet] = field(default_factory=list)
    rounds: int = 0


def consensus_closure(
    x: ClauseSet,
    limits: ResourceLimits = DEFAULT_LIMITS,
    trace: Trace | None = None,
    stats=None,
) -> ClosureResult:
    """Least fixpoint of the saturation step, detected by set equality of
    consecutive iterates.  Raises ResourceLimitExceeded when a cap is hit."""
    current = x.copy()
    iterates = [current.copy()]
    fresh = {m.key for m in current}
    for i in range(1, limits.max_rounds + 1):
        nxt = current.copy()

        def admit(res: ConsensusResult) -> Outcome:
            if not nxt.add(res.clause):
                return Outcome.DUPLICATE
            if len(nxt) > limits.max_clauses:
                raise ResourceLimitExceeded("max-clauses", limits.max_clauses, nxt)
            return Outcome.ADDED

        new = _attempt_pairs(
            current, current, admit, round_no=i, trace=trace, stats=stats, fresh=fresh
        )
        if not new:
            return ClosureResult(current, iterates, rounds=i - 1)
        fresh = {m.key for m in new}
        current = nxt
        iterates.append(current.copy())
    raise ResourceLimitExceeded("max-rounds", limits.max_rounds, current)
