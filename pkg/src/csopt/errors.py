"""Shared exception types."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class EvaluationError(ArithmeticError):
    """A forward/backward pass produced non-finite values."""


class NumericError(ArithmeticError):
    """A derivative or optimizer quantity came out non-finite."""


class DataFormatError(ValueError):
    """A dataset file failed to parse."""
