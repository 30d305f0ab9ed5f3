"""Exception hierarchy shared by all modules."""


class HopfTwistError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(HopfTwistError):
    """Elements from incompatible contexts were combined (e.g. different h-orders)."""


class DomainError(HopfTwistError, ValueError):
    """An operation was called outside its domain of definition."""


class NotInvertible(DomainError):
    pass


class NotACocycle(DomainError):
    pass


class NoSolution(HopfTwistError):
    """A linear system that should be solvable was not; signals a bug upstream."""


class InternalNoSolution(NoSolution):
    pass


class NotInvariant(DomainError):
    pass


class NotAnAutomorphism(DomainError):
    pass


class NotAbelianIdeal(DomainError):
    pass


class FormNotInvariant(DomainError):
    pass


class CYBEViolation(HopfTwistError):
    pass


class LagrangianNotFound(HopfTwistError):
    pass


class VerificationError(HopfTwistError):
    """An identity that the construction guarantees failed to hold exactly."""
