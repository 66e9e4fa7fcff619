"""Exception hierarchy shared by every module.

The CLI maps :class:`DomainError` (and subclasses) to exit code 1 and treats
argument problems as usage errors (exit code 2).
"""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class SingularCurveError(DomainError):
    """The requested Weierstrass model has vanishing discriminant."""


class NotOnCurveError(DomainError):
    """A point does not satisfy the curve equation."""


class BadReductionError(DomainError):
    """Reduction at the requested prime is not usable (skip this prime)."""


class UnsupportedError(DomainError):
    """The operation is well defined but not supported for this input."""


class ResourceError(RuntimeError):
    """A configured search bound, precision cap or runtime budget was exhausted."""
