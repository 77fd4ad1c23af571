"""pikit: prime-implicate compilation for first-order clause sets.

Compiles quantifier-free clausal knowledge bases into their prime
implicates by consensus/subsumption saturation, folds new clauses in
incrementally without recompiling from scratch, and answers clausal
entailment queries from the compiled set.
"""

__version__ = "0.1.0"

from .clauses import (
    AssocClause,
    Clause,
    ClauseSet,
    Residue,
    clause_set_equal,
    residue,
    subsumes,
)
from .compiler import (
    BatchReport,
    CompiledKB,
    CompileStats,
    Entailment,
    IncrementalReport,
    add_clause,
    add_clauses,
    chain_digest,
    clause_set_digest,
    compile,
    entails,
    input_clauses,
)
from .consensus import (
    DEFAULT_LIMITS,
    ClosureResult,
    ConsensusResult,
    Outcome,
    ResourceLimitExceeded,
    ResourceLimits,
    TraceEvent,
    TraceLog,
    complementary_pairs,
    consensus,
    consensus_closure,
    consensus_step,
)
from .oracle import (
    CapacityError,
    GenConfig,
    GroundUniverse,
    check_implicate_semantically,
    gen_clause,
    gen_kb,
    ground_instances,
    models_of,
    propositional_prime_implicates,
    same_models,
    truth_table_entails,
    vary_seed,
)
from .store import (
    MalformedStoreError,
    SignatureConflictError,
    StoreError,
    StoreVersionError,
    dumps_kb,
    load_kb,
    loads_kb,
    save_kb,
    signature_of,
)
from .syntax import (
    ClauseFile,
    ParseError,
    Signature,
    parse_clause,
    parse_clause_file,
    parse_term,
    print_clause,
    print_clause_file,
)
from .terms import (
    EMPTY,
    Atom,
    Compound,
    Literal,
    Substitution,
    Term,
    Variable,
    apply,
    compose,
    match,
    unify,
    variables_of,
)

__all__ = [
    "__version__",
    # terms
    "Variable", "Compound", "Term", "Atom", "Literal", "Substitution", "EMPTY",
    "apply", "compose", "unify", "match", "variables_of",
    # clauses
    "Clause", "AssocClause", "ClauseSet", "Residue",
    "subsumes", "residue", "clause_set_equal",
    # consensus
    "ResourceLimits", "DEFAULT_LIMITS", "ResourceLimitExceeded",
    "Outcome", "ConsensusResult", "TraceEvent", "TraceLog", "ClosureResult",
    "complementary_pairs", "consensus", "consensus_step", "consensus_closure",
    # compiler
    "CompileStats", "CompiledKB", "IncrementalReport", "BatchReport", "Entailment",
    "compile", "add_clause", "add_clauses", "entails", "input_clauses",
    "clause_set_digest", "chain_digest",
    # oracle
    "GroundUniverse", "GenConfig", "CapacityError",
    "propositional_prime_implicates", "ground_instances",
    "check_implicate_semantically", "truth_table_entails", "same_models",
    "models_of", "gen_kb", "gen_clause", "vary_seed",
    # syntax
    "ParseError", "Signature", "ClauseFile",
    "parse_clause_file", "parse_clause", "parse_term",
    "print_clause", "print_clause_file",
    # store
    "StoreError", "StoreVersionError", "MalformedStoreError", "SignatureConflictError",
    "save_kb", "load_kb", "dumps_kb", "loads_kb", "signature_of",
]
