"""Exception hierarchy."""


class TDGraphError(Exception):
    """Base class for all package errors."""


class RepresentationError(TDGraphError, ValueError):
    """Malformed or invalid box representation; ``line`` is set for parse errors."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedConfigurationError(TDGraphError):
    """Operation not available for this graph's parameters."""


class ArtifactError(TDGraphError, ValueError):
    """Serialized artifact is corrupt, truncated or of an unknown version."""


class BudgetExceededError(TDGraphError):
    """Enumeration would exceed the configured budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"enumeration needs {required} specs, budget is {budget}")
