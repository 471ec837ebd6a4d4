"""Shared exception types.

Validation problems raise ValueError subclasses; failures discovered during
computation (singular Gram matrices, precision ceilings, degenerate linear
systems) raise ArithmeticError subclasses so callers can map them to distinct
process exit codes.
"""


class ParameterError(ValueError):
    """A family or operation parameter is outside its admissible range."""


class LengthError(ValueError):
    """A moment sequence is too short for the requested order."""


class DomainError(ValueError):
    """A numeric input violates a domain precondition (e.g. nonpositive moment)."""


class UnsupportedFamilyError(ValueError):
    """The requested family has no implementation for this operation."""


class ConfigError(ValueError):
    """An experiment configuration failed schema validation."""


class DegenerateError(ArithmeticError):
    """A linear system is exactly singular (expected for finite-support input)."""


class SingularKernelError(ArithmeticError):
    """The kernel Gram matrix is singular or indefinite on the given design."""

    def __init__(self, family: str, size: int):
        self.family = family
        self.size = size
        super().__init__(
            f"Gram matrix of the {family} kernel is singular/indefinite "
            f"for N={size} (factorization failed at maximum precision)"
        )


class PrecisionError(ArithmeticError):
    """Precision escalation hit its ceiling without meeting the target."""

    def __init__(self, message, candidates=None):
        self.candidates = candidates
        super().__init__(message)
