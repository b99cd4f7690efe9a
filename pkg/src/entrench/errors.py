"""Exception hierarchy shared by every layer of the engine.

Each error carries a stable ``category`` string so the CLI and the HTTP
service can report machine-readable error kinds without pattern-matching
on messages.
"""


class EngineError(Exception):
    """Base class for all errors raised by this package."""

    category = "EngineError"
    exit_code = 3  # logic/engine errors by default

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


# --- formula / parsing -----------------------------------------------------

class FormulaError(EngineError):
    category = "FormulaError"
    exit_code = 2


class FormulaSyntaxError(FormulaError):
    category = "SyntaxError"


class WhitespaceError(FormulaError):
    category = "WhitespaceError"


class ReservedNameError(FormulaError):
    category = "ReservedNameError"


class CaseError(FormulaError):
    category = "CaseError"


class FreeVariableError(FormulaError):
    category = "FreeVariableError"


# --- prover ----------------------------------------------------------------

class BudgetExceeded(EngineError):
    category = "BudgetExceeded"
    exit_code = 4


class NotHorn(EngineError):
    category = "NotHorn"


class ProverUnknown(EngineError):
    """A query could not be decided within the proof budget."""

    category = "ProverUnknown"
    exit_code = 4


# --- rankings --------------------------------------------------------------

class DomainError(EngineError):
    category = "DomainError"


class DuplicateBelief(EngineError):
    category = "DuplicateBelief"


class InconsistentInput(EngineError):
    category = "InconsistentInput"


class RankingParseError(EngineError):
    """Bad line in a ranking file; carries the 1-based line number."""

    category = "ParseError"
    exit_code = 2

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# --- strategies / engine ---------------------------------------------------

class ConfigError(EngineError):
    category = "ConfigError"
    exit_code = 1


class ProtectedInconsistent(EngineError):
    category = "ProtectedInconsistent"


class ContradictoryInput(EngineError):
    category = "ContradictoryInput"


class StaleOutcome(EngineError):
    category = "StaleOutcome"
