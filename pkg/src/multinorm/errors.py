"""Exception types shared across the package."""


class MultinormError(Exception):
    """Base class for all errors raised by this package."""


class OrderCapExceeded(MultinormError):
    """A group or linear system grew past its configured size bound."""


class CarrierMismatch(MultinormError):
    """Arguments live in different ambient groups."""


class NotContained(MultinormError):
    """A subgroup that should be contained in another is not."""


class CoverSearchExhausted(MultinormError):
    """No candidate cocycle tuple produced a verified covering group."""


class PartitionSearchCapExceeded(MultinormError):
    pass


class InvalidConfiguration(MultinormError):
    pass


class ParseError(MultinormError):
    """Scenario text could not be parsed.

    ``line`` and ``column`` are 1-based when known.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class ValidationError(MultinormError):
    """Scenario parsed but violates an invariant (unknown name, bad permutation, ...)."""
