#!/usr/bin/env python3
"""Fuzz the incremental route against batch compilation on random KBs.

For each seed, compile a random KB plus one extra clause from scratch, and
separately fold the extra clause into the compiled KB.  Reports the
agreement rate on prime-implicate sets, the divergence seeds, and how many
consensus attempts each route needed.

The two routes can genuinely diverge: compilation may subsume away an input
clause whose association-free form was the only unblocked path to a later
consensus, and the surviving variant then blocks the step.  This script
measures how often that happens for a given instance shape.

    python scripts/fuzz_agreement.py --count 500
    python scripts/fuzz_agreement.py --count 200 --start-seed 1000 --show-diffs 3
"""

import argparse

from pikit import (
    GenConfig,
    ResourceLimitExceeded,
    add_clause,
    compile,
    gen_clause,
    gen_kb,
    vary_seed,
)


def instance_config(seed: int) -> GenConfig:
    return GenConfig(
        num_predicates=3,
        max_arity=2,
        num_variables=3,
        num_constants=2,
        num_functions=1,
        max_term_depth=1,
        clause_len_range=(1, 3),
        kb_size_range=(2, 6),
        seed=seed,
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=500, help="number of seeds")
    parser.add_argument("--start-seed", type=int, default=0)
    parser.add_argument(
        "--show-diffs", type=int, default=2, help="print this many diverging instances"
    )
    args = parser.parse_args()

    agree, skipped = 0, 0
    divergences = []
    attempt_pairs = []
    for seed in range(args.start_seed, args.start_seed + args.count):
        cfg = instance_config(seed)
        clauses = [m.clause for m in gen_kb(cfg)]
        extra = gen_clause(vary_seed(cfg, 1_000_003))
        try:
            batch = compile(clauses + [extra])
            incremental = add_clause(compile(clauses), extra)
        except ResourceLimitExceeded as err:
            skipped += 1
            print("seed %d skipped: %s" % (seed, err))
            continue
        if incremental.outcome == "recompiled":
            attempt_pairs.append(
                (incremental.result.stats.consensus_attempts, batch.stats.consensus_attempts)
            )
        if frozenset(batch.pi.clause_texts()) == frozenset(
            incremental.result.pi.clause_texts()
        ):
            agree += 1
        else:
            divergences.append((seed, clauses, extra, batch, incremental))

    finished = args.count - skipped
    print(
        "\nagreement: %d/%d terminating instances (%.1f%%), %d skipped"
        % (agree, finished, 100.0 * agree / max(finished, 1), skipped)
    )
    if attempt_pairs:
        fewer = sum(1 for inc, full in attempt_pairs if inc < full)
        ratios = [inc / full for inc, full in attempt_pairs if full]
        print(
            "efficiency: incremental made fewer consensus attempts on %d/%d "
            "recompiled instances (mean ratio %.2f)"
            % (fewer, len(attempt_pairs), sum(ratios) / len(ratios))
        )
    for seed, clauses, extra, batch, incremental in divergences[: args.show_diffs]:
        print("\ndiverging seed %d" % seed)
        print("  KB:    %s" % "  ".join("%s." % c for c in clauses))
        print("  added: %s." % extra)
        print("  batch:       %s" % sorted(batch.pi.clause_texts()))
        print("  incremental: %s" % sorted(incremental.result.pi.clause_texts()))
    if divergences:
        print("\ndiverging seeds: %s" % [d[0] for d in divergences])


if __name__ == "__main__":
    main()
