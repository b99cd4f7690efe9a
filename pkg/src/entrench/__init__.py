"""Belief revision and theory extraction on partial entrenchment rankings."""

from .errors import (
    BudgetExceeded,
    CaseError,
    ConfigError,
    ContradictoryInput,
    DomainError,
    DuplicateBelief,
    EngineError,
    FormulaError,
    FormulaSyntaxError,
    FreeVariableError,
    InconsistentInput,
    NotHorn,
    ProtectedInconsistent,
    ProverUnknown,
    RankingParseError,
    ReservedNameError,
    StaleOutcome,
    WhitespaceError,
)
from .formula import (
    Conjunction,
    Constant,
    Disjunction,
    Existential,
    Formula,
    FunctionTerm,
    Implication,
    Negation,
    Predicate,
    Proposition,
    Term,
    Universal,
    Variable,
    ensure_closed,
    free_variables,
    parse,
    print_formula,
)
from .prover import (
    DEFAULT_BUDGET,
    Consistency,
    ConsistencyOracle,
    ProofBudget,
    Verdict,
    clausify,
    entails,
    entails_horn,
    is_consistent,
    is_tautology,
    minimal_inconsistent_subsets,
    refutation_steps,
    subsumed_by,
)
from .ranking import (
    EVAPORATION_FLOOR,
    Cut,
    OrdinalRanking,
    Ranking,
    cut,
    decay,
    degree,
    from_ordinal,
    normalize,
    to_ordinal,
)
from .strategies import (
    ExtractionTrace,
    RankRecord,
    Strategy,
    StrategyConfig,
    apply_recovery,
    apply_subsumption_removal,
    extract,
    extract_global,
    extract_hybrid,
    extract_linear,
    extract_maxi,
    extract_quick,
    extract_standard,
)
from .engine import (
    Placement,
    RevisionOutcome,
    Session,
    commit,
    contract_extract,
    integrate,
    is_reason_for,
    revise,
    undo,
    what_if,
)
from .storage import (
    dumps_ordinal,
    dumps_ranking,
    load_ordinal,
    load_ranking,
    loads_ranking,
    save_ordinal,
    save_ranking,
)

__version__ = "0.1.0"
