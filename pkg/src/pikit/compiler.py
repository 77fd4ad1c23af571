"""Prime-implicate compilation, incremental updates, and entailment queries.

Batch compilation saturates the input under consensus and keeps the
subsumption residue.  The incremental path folds one new clause into an
already compiled set: it never attempts consensus between two established
prime implicates, only between the current set and the support set of
newcomers (the added clause plus everything derived from it).
"""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .clauses import AssocClause, Clause, ClauseSet, clause_set_equal, residue, subsumes
from .consensus import (
    DEFAULT_LIMITS,
    ConsensusResult,
    Outcome,
    ResourceLimitExceeded,
    ResourceLimits,
    Trace,
    _attempt_pairs,
    consensus_closure,
)
from .terms import Substitution


@dataclass
class CompileStats:
    rounds: int = 0
    consensus_attempts: int = 0
    subsumption_checks: int = 0


@dataclass
class CompiledKB:
    """A compiled set of prime implicates with run statistics and provenance.

    The member set is subsumption-minimal and every member is fundamental;
    a KB whose only member is the empty clause is inconsistent.
    """

    pi: ClauseSet
    stats: CompileStats = field(default_factory=CompileStats)
    source_digest: str = ""

    @property
    def inconsistent(self) -> bool:
        return len(self.pi) == 1 and next(iter(self.pi)).clause.is_empty


def _digest_texts(texts: Iterable[str]) -> str:
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode("utf-8"))
        h.update(b"\n")
    return "sha256:" + h.hexdigest()


def clause_set_digest(clauses: Iterable[AssocClause]) -> str:
    return _digest_texts(str(m.clause) for m in clauses)


def chain_digest(previous: str, clause: Clause) -> str:
    return _digest_texts([previous, str(clause)])


def input_clauses(clauses: Iterable[Clause | AssocClause]) -> ClauseSet:
    """Wrap plain clauses as inputs carrying the empty association."""
    out = ClauseSet()
    for c in clauses:
        out.add(c if isinstance(c, AssocClause) else AssocClause(c))
    return out


def compile(
    x: Iterable[Clause | AssocClause] | ClauseSet,
    limits: ResourceLimits = DEFAULT_LIMITS,
    trace: Trace | None = None,
    source_digest: str | None = None,
) -> CompiledKB:
    """Compile a clause set into its prime implicates.

    Non-fundamental inputs are dropped with a warning.  The result is the
    subsumption residue of the consensus closure of the input; a resource
    error from the closure propagates.
    """
    members = x if isinstance(x, ClauseSet) else input_clauses(x)
    stats = CompileStats()
    keep = ClauseSet()
    for m in members:
        if m.clause.is_fundamental():
            keep.add(m)
        else:
            warnings.warn("dropping non-fundamental clause %s" % m.clause, stacklevel=2)
    closure = consensus_closure(keep, limits, trace, stats)
    minimal = residue(closure.clauses, stats)
    stats.rounds = closure.rounds
    digest = source_digest if source_digest is not None else clause_set_digest(members)
    return CompiledKB(minimal.kept, stats, digest)


@dataclass
class IncrementalReport:
    """Outcome of folding one clause into a compiled KB.

    `support_history` holds the support-set snapshot after each residue;
    `snapshot_history` the corresponding working-set snapshots (the first
    entry is the initial residue of pi plus the new clause).
    """

    result: CompiledKB
    outcome: str  # "absorbed" | "unchanged" | "recompiled"
    support_history: list[tuple[AssocClause, ...]] = field(default_factory=list)
    snapshot_history: list[ClauseSet] = field(default_factory=list)


def add_clause(
    kb: CompiledKB,
    clause: Clause | AssocClause,
    limits: ResourceLimits = DEFAULT_LIMITS,
    trace: Trace | None = None,
) -> IncrementalReport:
    """Compute the prime implicates of the KB extended by one clause.

    Tautologies leave the KB unchanged.  Otherwise the clause joins the
    residue of the compiled set; if it is deleted there the KB absorbs it.
    Each following round takes all consensuses with one parent in the
    working set and one in the support set, re-minimizes, and prunes the
    support set, until two consecutive working sets are equal.  Clauses the
    residue deleted from the support set are tombstoned and never re-enter.
    """
    c = clause if isinstance(clause, AssocClause) else AssocClause(clause)
    if not c.assoc.is_empty():
        raise ValueError("added clauses must carry the empty association")
    if not c.clause.is_fundamental():
        return IncrementalReport(kb, "unchanged")

    stats = CompileStats()
    merged = kb.pi.copy()
    freshly_added = merged.add(c)
    first = residue(merged, stats)
    eta = first.kept
    snapshots = [eta]
    if not freshly_added or not eta.contains_key(c.key):
        return IncrementalReport(kb, "absorbed", [()], snapshots)

    support = ClauseSet([c])
    support_history = [support.members]
    tombstones: set[tuple] = set()
    previous = ClauseSet()
    rounds = 0
    while not clause_set_equal(eta, previous):
        rounds += 1
        if rounds > limits.max_rounds:
            raise ResourceLimitExceeded("max-rounds", limits.max_rounds, eta)

        round_new: set[tuple] = set()

        def admit(res: ConsensusResult) -> Outcome:
            k = res.clause.key
            if support.contains_key(k) or k in tombstones or k in round_new:
                return Outcome.DUPLICATE
            round_new.add(k)
            return Outcome.ADDED

        derived = _attempt_pairs(
            eta, support, admit, round_no=rounds, trace=trace, stats=stats
        )
        for m in derived:
            support.add(m)
        working = eta.copy()
        for m in support:
            working.add(m)
        if len(working) > limits.max_clauses:
            raise ResourceLimitExceeded("max-clauses", limits.max_clauses, working)
        step = residue(working, stats)
        previous, eta = eta, step.kept
        deleted_keys = {m.key for m in step.deleted}
        tombstones |= {k for k in deleted_keys if support.contains_key(k)}
        support = ClauseSet(m for m in support if m.key not in deleted_keys)
        support_history.append(support.members)
        snapshots.append(eta)

    stats.rounds = rounds
    result = CompiledKB(eta, stats, chain_digest(kb.source_digest, c.clause))
    return IncrementalReport(result, "recompiled", support_history, snapshots)


@dataclass
class BatchReport:
    """Result of folding a sequence of clauses into a compiled KB."""

    result: CompiledKB
    outcomes: list[str] = field(default_factory=list)
    reports: list[IncrementalReport] = field(default_factory=list)


def add_clauses(
    kb: CompiledKB,
    clauses: Sequence[Clause | AssocClause],
    limits: ResourceLimits = DEFAULT_LIMITS,
    trace: Trace | None = None,
) -> BatchReport:
    """Fold clauses into the KB one at a time, in order.

    Resource errors propagate annotated with the index of the offending
    clause (`clause_index` on the exception).
    """
    current = kb
    reports: list[IncrementalReport] = []
    for i, c in enumerate(clauses):
        try:
            report = add_clause(current, c, limits, trace)
        except ResourceLimitExceeded as err:
            err.clause_index = i
            raise
        reports.append(report)
        current = report.result
    return BatchReport(current, [r.outcome for r in reports], reports)


@dataclass(frozen=True)
class Entailment:
    """Answer to a clausal entailment query, with its witness if positive."""

    entailed: bool
    witness: AssocClause | None = None
    substitution: Substitution | None = None
    tautology: bool = False

    def __bool__(self) -> bool:
        return self.entailed


def entails(kb: CompiledKB, query: Clause) -> Entailment:
    """Yes iff some compiled prime implicate subsumes the query clause.

    Non-fundamental queries are valid and answered yes with a tautology
    marker.  The witness implicate and substitution are returned.
    """
    if not query.is_fundamental():
        return Entailment(True, tautology=True)
    for member in kb.pi:
        witness = subsumes(member.clause, query)
        if witness is not None:
            return Entailment(True, member, witness)
    return Entailment(False)
