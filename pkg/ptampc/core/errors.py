"""
Error hierarchy for the risk-averse PTA-MPC toolkit

Every fault raised by the library derives from PtaMpcError and carries the
process exit code the CLI reports for it. Outcomes such as UNSAT or layout
violations are returned as data and never raised.
"""

from typing import Any, List, Optional


class PtaMpcError(Exception):
    """Base exception for toolkit faults."""

    exit_code = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return f"{self.__class__.__name__}: {self.message}"


# =============================================================================
# Model and analysis errors
# =============================================================================


class UnknownStateError(PtaMpcError):
    """Raised when a state id is not part of the automaton."""

    def __init__(self, state_id: str):
        super().__init__(f"Unknown state '{state_id}'")
        self.state_id = state_id


class UnknownRedundantPathError(PtaMpcError):
    """Raised when a redundant path does not belong to the layout partition."""


class IllegalPathError(PtaMpcError):
    """Raised when consecutive path states are not connected by an edge."""

    def __init__(self, message: str, path: Optional[List[str]] = None):
        super().__init__(message)
        self.path = list(path or [])


class ZeroLengthPathError(PtaMpcError):
    """Raised when the PCM quotient would divide by a zero path length."""


class MalformedRedundantChainError(PtaMpcError):
    """Raised when a redundant chain does not start and end in the original layout."""


class InvalidObjectiveError(PtaMpcError):
    """Raised for an unknown controller kind or a negative / non-finite beta."""


class NonTerminationError(PtaMpcError):
    """Raised when a run exceeds its tick bound."""


class ScenarioValidationError(PtaMpcError):
    """Raised when a scenario references unknown states or fails the occupied state."""

    exit_code = 5


# =============================================================================
# File loading errors
# =============================================================================


class FixtureNotFoundError(PtaMpcError):
    """Raised when a fixture name cannot be resolved on the search path."""

    exit_code = 3


class ParseError(PtaMpcError):
    """Raised when a document is not well-formed JSON."""

    exit_code = 3

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self) -> str:
        if self.line is not None:
            return f"ParseError (line {self.line}, column {self.column}): {self.message}"
        return f"ParseError: {self.message}"


class SchemaError(PtaMpcError):
    """Raised when a document does not match the expected schema."""

    exit_code = 4

    def __init__(self, message: str, fields: Optional[List[str]] = None):
        super().__init__(message)
        self.fields = list(fields or [])

    def __str__(self) -> str:
        if self.fields:
            return f"SchemaError: {self.message} (fields: {', '.join(self.fields)})"
        return f"SchemaError: {self.message}"


class LayoutValidationError(PtaMpcError):
    """Raised when a loaded automaton violates its structural invariants."""

    exit_code = 5

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report
