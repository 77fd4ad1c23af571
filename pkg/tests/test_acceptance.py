"""Acceptance suite: one test per criterion, printing one PASS/FAIL line each.

Run `pytest tests/test_acceptance.py -v -s` to see the per-criterion lines
and the (non-gated) efficiency report.  Criterion 4 is a known red: the
incremental route can diverge from batch compilation on first-order inputs
whose compilation subsumed away a clause that was the only unblocked route
to a later consensus.  See the class docstring on the criterion and
tests/test_compiler.py::TestKnownIncrementalDivergence for the pinned
minimal instance.
"""

import functools
import itertools
import random
import time


from pikit import (
    Atom,
    Clause,
    Compound,
    GenConfig,
    Literal,
    ResourceLimitExceeded,
    ResourceLimits,
    Substitution,
    TraceLog,
    Variable,
    add_clause,
    apply,
    clause_set_equal,
    compile,
    compose,
    consensus_closure,
    dumps_kb,
    entails,
    gen_clause,
    gen_kb,
    input_clauses,
    loads_kb,
    models_of,
    parse_clause,
    parse_clause_file,
    print_clause_file,
    propositional_prime_implicates,
    residue,
    same_models,
    subsumes,
    unify,
    vary_seed,
)

EX1 = "p(X,a)|~q(a,f(X)). ~p(b,a)|r(b,Z). ~r(X,f(a))|q(Z,f(a))."
EX2 = "q(Y). ~r(f(X),b). p(X)|r(Y,b)|~q(Z)."
EX2_ADD = "~p(a)|~q(Z)."

FO_CFG = dict(
    num_predicates=3,
    max_arity=2,
    num_variables=3,
    num_constants=2,
    num_functions=1,
    max_term_depth=1,
    clause_len_range=(1, 3),
    kb_size_range=(2, 6),
)

GROUND8_CFG = dict(
    num_predicates=4,
    max_arity=1,
    num_variables=0,
    num_constants=2,
    clause_len_range=(1, 3),
    kb_size_range=(2, 6),
)

GROUND10_CFG = dict(
    num_predicates=5,
    max_arity=1,
    num_variables=0,
    num_constants=2,
    clause_len_range=(1, 3),
    kb_size_range=(2, 6),
)


def criterion(label):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print("\nACCEPTANCE %s: FAIL" % label)
                raise
            print("\nACCEPTANCE %s: PASS" % label)

        return wrapper

    return decorate


@criterion("1 worked-chain closure")
def test_criterion_1_closure_of_worked_chain():
    started = time.perf_counter()
    base = input_clauses(parse_clause_file(EX1).clauses)
    closure = consensus_closure(base)

    first_iterate = [m.entry_text for m in closure.iterates[1]]
    assert first_iterate == [
        "p(X,a)|~q(a,f(X)) ; assoc ; origin input",
        "~p(b,a)|r(b,Z) ; assoc ; origin input",
        "q(Z,f(a))|~r(X,f(a)) ; assoc ; origin input",
        "~q(a,f(b))|r(b,Z) ; assoc X->b ; origin consensus(1,2)",
        "p(a,a)|~r(a,f(a)) ; assoc X->a,Z->a ; origin consensus(1,3)",
        "~p(b,a)|q(f(a),f(a)) ; assoc X->b,Z->f(a) ; origin consensus(2,3)",
    ]
    second_additions = [
        m.entry_text for m in closure.iterates[2] if m not in closure.iterates[1]
    ]
    assert second_additions == [
        "q(f(a),f(a))|~q(a,f(b)) ; assoc X->b,Z->f(a) ; origin consensus(3,4)"
    ]
    assert closure.rounds == 2
    assert len(closure.clauses) == 7
    assert compile(parse_clause_file(EX1).clauses).stats.rounds == 2
    assert time.perf_counter() - started < 1.0


@criterion("2 worked-example batch compile")
def test_criterion_2_batch_compile_of_worked_example():
    started = time.perf_counter()
    kb = compile(parse_clause_file(EX2).clauses)
    assert [m.entry_text for m in kb.pi] == [
        "q(Y) ; assoc ; origin input",
        "~r(f(X),b) ; assoc ; origin input",
        "p(X)|r(Z,b) ; assoc Y->Z ; origin consensus(1,3)",
        "p(X)|~q(Z) ; assoc Y->f(X) ; origin consensus(2,3)",
    ]
    assert time.perf_counter() - started < 1.0


@criterion("3 worked-example incremental update")
def test_criterion_3_incremental_update_of_worked_example():
    started = time.perf_counter()
    kb = compile(parse_clause_file(EX2).clauses)
    log = TraceLog()
    report = add_clause(kb, parse_clause(EX2_ADD), trace=log)
    assert report.outcome == "recompiled"

    snapshots = [snap.clause_texts() for snap in report.snapshot_history]
    assert snapshots[0] == [
        "q(Y)", "~r(f(X),b)", "p(X)|r(Z,b)", "p(X)|~q(Z)", "~p(a)|~q(Z)",
    ]
    # First consensus, then the residue deletes the subsumed newcomer.
    assert snapshots[1] == ["q(Y)", "~r(f(X),b)", "p(X)|r(Z,b)", "p(X)|~q(Z)", "~p(a)"]
    assert "~p(a)|~q(Z)" not in snapshots[1]
    # Second consensus, then the residue deletes the subsumed old member.
    assert snapshots[2] == ["q(Y)", "~r(f(X),b)", "p(X)|~q(Z)", "~p(a)", "r(Z,b)"]
    assert "p(X)|r(Z,b)" not in snapshots[2]
    # Fixpoint: the last two snapshots are equal.
    assert len(snapshots) == 4 and snapshots[3] == snapshots[2]

    rows = [
        (e.round, e.parent_texts, str(e.mgu), e.outcome, e.result_text)
        for e in log.events
    ]
    assert rows == [
        (1, ("q(Y)", "~p(a)|~q(Z)"), "{Y->Z}", "added", "~p(a)"),
        (1, ("p(X)|r(Z,b)", "~p(a)|~q(Z)"), "{X->a}", "blocked", None),
        (1, ("p(X)|~q(Z)", "~p(a)|~q(Z)"), "{X->a}", "blocked", None),
        (2, ("p(X)|r(Z,b)", "~p(a)"), "{X->a}", "added", "r(Z,b)"),
        (2, ("p(X)|~q(Z)", "~p(a)"), "{X->a}", "blocked", None),
        (3, ("~r(f(X),b)", "r(Z,b)"), "{Z->f(X)}", "blocked", None),
        (3, ("p(X)|~q(Z)", "~p(a)"), "{X->a}", "blocked", None),
    ]

    assert [m.entry_text for m in report.result.pi] == [
        "q(Y) ; assoc ; origin input",
        "~r(f(X),b) ; assoc ; origin input",
        "p(X)|~q(Z) ; assoc Y->f(X) ; origin consensus(2,3)",
        "~p(a) ; assoc Y->Z ; origin consensus(1,5)",
        "r(Z,b) ; assoc X->a,Y->Z ; origin consensus(3,5)",
    ]
    assert time.perf_counter() - started < 1.0


def _agreement_run(count):
    agree, disagreements, skipped = 0, [], 0
    attempt_pairs = []
    for seed in range(count):
        cfg = GenConfig(seed=seed, **FO_CFG)
        clauses = [m.clause for m in gen_kb(cfg)]
        extra = gen_clause(vary_seed(cfg, 1_000_003))
        try:
            batch = compile(clauses + [extra])
            incremental = add_clause(compile(clauses), extra)
        except ResourceLimitExceeded:
            skipped += 1
            continue
        if incremental.outcome == "recompiled":
            attempt_pairs.append(
                (
                    incremental.result.stats.consensus_attempts,
                    batch.stats.consensus_attempts,
                )
            )
        if frozenset(batch.pi.clause_texts()) == frozenset(
            incremental.result.pi.clause_texts()
        ):
            agree += 1
        else:
            disagreements.append(seed)
    return agree, disagreements, skipped, attempt_pairs


@criterion("4 batch/incremental equivalence")
def test_criterion_4_batch_incremental_equivalence():
    """Known red: association gating makes the incremental route lose
    derivations whose only parents were subsumed away during the original
    compilation.  The run below reports the observed agreement rate; the
    decisions ledger carries the minimal counterexample and analysis."""
    count = 500
    agree, disagreements, skipped, _ = _agreement_run(count)
    finished = count - skipped
    print(
        "\ncriterion 4: %d/%d terminating instances agree (%.1f%%), %d skipped; "
        "first disagreeing seeds: %s"
        % (
            agree,
            finished,
            100.0 * agree / max(finished, 1),
            skipped,
            disagreements[:8],
        )
    )
    assert agree == finished, (
        "batch and incremental prime implicates diverge on %d/%d terminating "
        "instances (first seeds: %s); inherent to association gating, see ledger"
        % (len(disagreements), finished, disagreements[:8])
    )


def test_efficiency_report_incremental_vs_batch():
    """Reported, not gated: consensus attempts of incremental vs batch."""
    _, _, _, attempt_pairs = _agreement_run(120)
    fewer = sum(1 for inc, full in attempt_pairs if inc < full)
    ratios = [inc / full for inc, full in attempt_pairs if full]
    print(
        "\nefficiency report: incremental performed fewer consensus attempts on "
        "%d/%d recompiled instances (mean attempt ratio %.2f)"
        % (fewer, len(attempt_pairs), sum(ratios) / max(len(ratios), 1))
    )


@criterion("5 ground oracle equivalence")
def test_criterion_5_ground_oracle_equivalence():
    started = time.perf_counter()
    for seed in range(500):
        clauses = [m.clause for m in gen_kb(GenConfig(seed=seed, **GROUND8_CFG))]
        kb = compile(clauses)
        oracle = propositional_prime_implicates(clauses)
        assert sorted(kb.pi.clause_texts()) == sorted(str(c) for c in oracle), (
            "seed %d: engine %s vs oracle %s"
            % (seed, sorted(kb.pi.clause_texts()), sorted(str(c) for c in oracle))
        )
    assert time.perf_counter() - started < 60.0


@criterion("6 ground semantic equivalence")
def test_criterion_6_models_preserved():
    for seed in range(200):
        clauses = [m.clause for m in gen_kb(GenConfig(seed=seed, **GROUND10_CFG))]
        kb = compile(clauses)
        assert same_models(clauses, [m.clause for m in kb.pi]), "seed %d" % seed


@criterion("7 ground entailment completeness")
def test_criterion_7_entailment_matches_truth_table():
    for seed in range(100):
        clauses = [m.clause for m in gen_kb(GenConfig(seed=seed, **GROUND8_CFG))]
        kb = compile(clauses)
        atoms = sorted({l.atom for c in clauses for l in c.literals}, key=str)
        index = {a: i for i, a in enumerate(atoms)}
        models = models_of(clauses, index)
        all_models = (1 << len(models)) - 1
        literals = [Literal(a, s) for a in atoms for s in (True, False)]
        sat = []
        for lit in literals:
            bit = 1 << index[lit.atom]
            sat.append(
                sum(
                    1 << k
                    for k, m in enumerate(models)
                    if bool(m & bit) == lit.positive
                )
            )
        for size in (1, 2, 3):
            for combo in itertools.combinations(range(len(literals)), size):
                chosen = [literals[i] for i in combo]
                cover = 0
                for i in combo:
                    cover |= sat[i]
                expected = cover == all_models  # tautologies cover everything
                got = entails(kb, Clause(tuple(chosen))).entailed
                assert got == expected, "seed %d clause %s" % (seed, Clause(tuple(chosen)))


def _random_term(rng, depth=0):
    roll = rng.random()
    if depth < 2 and roll < 0.25:
        return Compound(rng.choice("fg"), (_random_term(rng, depth + 1),))
    if roll < 0.6:
        return Variable(rng.choice("XYZ"))
    return Compound(rng.choice("ab"))


def _random_atom_pair(rng):
    predicate, arity = rng.choice([("p", 1), ("q", 2)])
    return (
        Atom(predicate, tuple(_random_term(rng) for _ in range(arity))),
        Atom(predicate, tuple(_random_term(rng) for _ in range(arity))),
    )


def _random_substitution(rng):
    names = rng.sample("XYZ", rng.randint(0, 3))
    return Substitution({n: _random_term(rng) for n in names})


@criterion("8 property suites")
def test_criterion_8_property_suites():
    # Residue minimality, covering, idempotence: 200 seeded clause sets.
    for seed in range(200):
        s = gen_kb(GenConfig(seed=seed, **FO_CFG))
        got = residue(s)
        kept = got.kept.members
        for d, e in itertools.permutations(kept, 2):
            assert subsumes(d.clause, e.clause) is None
        for m in s:
            assert any(subsumes(d.clause, m.clause) is not None for d in kept)
        assert residue(got.kept).kept == got.kept

    # Unification: idempotence and correctness on 400 seeded pairs (the
    # non-unifiable ones exercise the failure path).
    unified = 0
    for seed in range(400):
        rng = random.Random(seed)
        a1, a2 = _random_atom_pair(rng)
        mgu = unify(a1, a2)
        if mgu is None:
            continue
        unified += 1
        assert compose(mgu, mgu) == mgu
        assert apply(mgu, a1) == apply(mgu, a2)
    assert unified >= 200

    # Composition coherence on 200 seeded triples.
    for seed in range(200):
        rng = random.Random(seed)
        s1, s2 = _random_substitution(rng), _random_substitution(rng)
        t = _random_term(rng)
        assert apply(compose(s1, s2), t) == apply(s2, apply(s1, t))

    # Closure monotonicity and fixpoint stability on 200 seeded KBs.
    checked, seed = 0, 0
    limits = ResourceLimits(max_rounds=40, max_clauses=2000)
    while checked < 200:
        cfg_kind = GROUND8_CFG if seed % 2 else FO_CFG
        base = gen_kb(GenConfig(seed=seed, **cfg_kind))
        seed += 1
        try:
            closure = consensus_closure(base, limits)
        except ResourceLimitExceeded:
            continue
        for earlier, later in zip(closure.iterates, closure.iterates[1:]):
            assert all(m in later for m in earlier)
        again = consensus_closure(closure.clauses, limits)
        assert clause_set_equal(again.clauses, closure.clauses)
        assert again.rounds == 0
        checked += 1

    # Parser round-trip on 200 seeded clause files.
    for seed in range(200):
        cfg = GenConfig(
            num_predicates=4,
            max_arity=2,
            num_variables=3,
            num_constants=2,
            num_functions=2,
            max_term_depth=2,
            clause_len_range=(1, 4),
            kb_size_range=(1, 6),
            seed=seed,
        )
        clauses = [m.clause for m in gen_kb(cfg)]
        assert parse_clause_file(print_clause_file(clauses)).clauses == clauses

    # KB-store round-trip on 200 seeded compiled KBs.
    checked, seed = 0, 0
    while checked < 200:
        base = gen_kb(GenConfig(seed=seed, **FO_CFG))
        seed += 1
        try:
            kb = compile(base, limits)
        except ResourceLimitExceeded:
            continue
        assert loads_kb(dumps_kb(kb)) == kb
        checked += 1
