class SupercharError(Exception):
    """Base class for errors raised by this package."""


class BoundExceeded(SupercharError):
    """An enumeration would exceed the configured size bound."""


class MembershipError(SupercharError, ValueError):
    """A matrix violates the defining conditions of U or of its Lie algebra."""


class IdentityViolation(SupercharError):
    """A computed identity failed; always signals a bug, never bad input."""
