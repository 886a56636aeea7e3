from __future__ import annotations


class GraphFormatError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapacityError(GraphFormatError):
    """Input exceeds what the engine is built to handle (n > 32)."""


class BudgetExceeded(RuntimeError):
    """An exponential oracle or mode would exceed its configured budget."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; the computed result must not be trusted."""
