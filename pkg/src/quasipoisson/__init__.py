"""Mono-alternative Lie loops, quasi-double Lie groups and algebras, quasi-Lie
bialgebras and the quasi-Poisson structure on SH(2), with numerical verifiers."""

__version__ = "0.1.0"

from .errors import InvalidInput, MalformedInput, NotPositiveDefinite, NumericalFailure
from .report import CheckRecord, VerificationReport

__all__ = [
    "__version__",
    "InvalidInput",
    "MalformedInput",
    "NotPositiveDefinite",
    "NumericalFailure",
    "CheckRecord",
    "VerificationReport",
]
