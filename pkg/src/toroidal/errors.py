"""Exception types shared across the package."""


class ToroidalError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedDegree(ToroidalError):
    """Raised when an algorithm is only available for quadratic fields."""


class BoundExceeded(ToroidalError):
    """An enumeration hit its configured limit before it could be certified."""


class NotCovered(ToroidalError):
    """A point was not located in any cone of a fan."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MembershipError(ToroidalError):
    """An element was expected to lie in an ideal and does not."""


class SchemaMismatch(ToroidalError):
    """A serialized object has the wrong shape or an unknown version tag."""
