class ConfigurationError(ValueError):
    """Invalid sizes or tolerances."""


class RangeError(ValueError):
    """A request falls outside the sieve or numeric range."""


class DomainError(ValueError):
    """Arguments outside the mathematical domain of an operation."""


class NumericError(ArithmeticError):
    """Root bracketing or iteration failures. These indicate a bug, not bad input."""


class ParseError(ValueError):
    pass
