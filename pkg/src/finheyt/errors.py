"""Exception types shared across the package."""


class FinheytError(Exception):
    pass


class MalformedAlgebraError(FinheytError):
    """Structural defect in operation tables (shape or out-of-range entry)."""


class InvalidAlgebraError(FinheytError):
    """Axiom violations found while validating an algebra."""

    def __init__(self, report):
        self.report = report
        lines = ", ".join(f"{name} at {witness}" for name, witness in report.violations[:5])
        more = "" if len(report.violations) <= 5 else f" (+{len(report.violations) - 5} more)"
        super().__init__(f"algebra violates axioms: {lines}{more}")


class TermParseError(FinheytError):
    """Syntax error while parsing a term string."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class TermEvalError(FinheytError):
    """Unbound variable or operation unavailable in the target class."""


class TheoremViolation(FinheytError):
    """A property the underlying theory guarantees failed to hold.

    This always indicates an implementation bug (or inconsistent input that
    slipped past validation); callers must not swallow it.
    """
