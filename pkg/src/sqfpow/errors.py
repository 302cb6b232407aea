"""Exception hierarchy for sqfpow."""


class SqfpowError(Exception):
    """Base class for all errors raised by this package."""


class UniverseMismatch(SqfpowError, ValueError):
    """Two ideals or filtrations live over different variable sets."""


class InputClassError(SqfpowError, ValueError):
    """An operation was called on an input outside its domain (e.g. not a block graph)."""


class BudgetExceeded(SqfpowError):
    """A configured cost guard tripped (time, generator count, permutation count)."""


class ParseError(SqfpowError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
