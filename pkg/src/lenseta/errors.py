"""Exception hierarchy.

Every precondition failure raised by the library derives from
:class:`PreconditionError`; the CLI maps it to exit code 3.  Resource guards
raise :class:`ResourceLimit` (exit code 4).
"""


class LensetaError(Exception):
    """Base class for all library errors."""


class PreconditionError(LensetaError, ValueError):
    """An operation was called with arguments outside its domain."""


class NotCoprime(PreconditionError):
    pass


class NotPairwiseCoprime(PreconditionError):
    pass


class FixedPoint(PreconditionError):
    """The group element acts with a fixed point (k = 0 mod p)."""


class NoNearbyRational(PreconditionError):
    pass


class ShapeMismatch(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError, IndexError):
    pass


class InvalidType(PreconditionError):
    """Representation type data fails the eigenvalue constraints."""


class InvalidSeifertData(PreconditionError):
    pass


class SameComponent(PreconditionError):
    pass


class NotCharacteristic(PreconditionError):
    pass


class ResourceLimit(LensetaError):
    """A computation would exceed a hard size guard."""
