"""Exception hierarchy shared by all modules."""


class SubatomicaError(Exception):
    """Base class for all library errors."""


class InvalidPrime(SubatomicaError):
    pass


class ZeroInput(SubatomicaError):
    pass


class NotAnElement(SubatomicaError):
    pass


class EmptyInput(SubatomicaError):
    pass


class BaseMismatch(SubatomicaError):
    pass


class ZeroDivisor(SubatomicaError):
    pass


class ConstantInput(SubatomicaError):
    pass


class UnitInput(SubatomicaError):
    pass


class InvalidInput(SubatomicaError):
    pass


class IndeterminateAtPrecision(SubatomicaError):
    """A numeric comparison could not be decided below the precision cap."""

    def __init__(self, message, precision_cap=None):
        super().__init__(message)
        self.precision_cap = precision_cap


class ParseError(SubatomicaError):
    """Syntax error in the CLI expression language."""

    def __init__(self, message, line=1, column=0, expected=()):
        super().__init__(message)
        self.line = line
        self.column = column
        self.expected = tuple(expected)
