"""Exception types shared by every module."""


class InvalidInput(ValueError):
    """Argument violates a documented precondition (shape, symmetry, range)."""


class NotPositiveDefinite(ValueError):
    """A matrix expected to be Hermitian positive definite has an eigenvalue <= 0."""


class NumericalFailure(ArithmeticError):
    """A numerical kernel could not produce a result within its budget."""


class MalformedInput(InvalidInput):
    """A serialized input could not be parsed into a valid object."""
