"""Exception types raised across the package."""


class SemiAdvError(ValueError):
    """Base class for all library errors."""


class NotPrime(SemiAdvError):
    pass


class NoIrreducibleFound(SemiAdvError):
    pass


class OrderOverflow(SemiAdvError):
    pass


class DivideByZero(SemiAdvError, ZeroDivisionError):
    pass


class FactorizationBudgetExceeded(SemiAdvError):
    pass


class DimensionMismatch(SemiAdvError):
    pass


class FieldMismatch(SemiAdvError):
    pass


class DuplicatePoint(SemiAdvError):
    pass


class DegenerateProblem(SemiAdvError):
    pass


class BudgetExceeded(SemiAdvError):
    pass


class InvalidParameters(SemiAdvError):
    pass


class ShapeMismatch(SemiAdvError):
    pass


class BudgetExceedsLength(SemiAdvError):
    pass


class PreconditionViolated(SemiAdvError):
    pass


class ParseError(SemiAdvError):
    """Malformed input file. Carries the 1-based line and column."""

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = ""
        if path is not None:
            where += str(path)
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}" if where else message)
