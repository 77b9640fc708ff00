"""Exceptions shared across the package."""


class ToricFaceError(Exception):
    """Base class for all errors raised by toricface."""


class DimensionMismatch(ToricFaceError):
    pass


class CapExceeded(ToricFaceError):
    """A bounded enumeration was cut while solutions beyond the cap may exist.

    Carries the solutions found so far in ``found``.
    """

    def __init__(self, message, found=()):
        super().__init__(message)
        self.found = frozenset(found)


class NotPointed(ToricFaceError):
    pass


class NotSimplicial(ToricFaceError):
    pass


class UnknownFace(ToricFaceError):
    pass


class NotMonomialBinomialInput(ToricFaceError):
    pass


class DegreeBoundExceeded(ToricFaceError):
    """Buchberger hit the configured total-degree cap; the basis is uncertified."""

    def __init__(self, message, bound):
        super().__init__(message)
        self.bound = bound


class ClassOverflow(ToricFaceError):
    pass


class NotSubcomplex(ToricFaceError):
    pass


class RadicalCapExceeded(ToricFaceError):
    def __init__(self, message, generator=None, cap=None):
        super().__init__(message)
        self.generator = generator
        self.cap = cap


class PointOutsideSupport(ToricFaceError):
    pass


class InvalidComplex(ToricFaceError):
    """An operation requiring a validated complex received an invalid one."""


class DocumentError(ToricFaceError):
    """A complex document does not conform to the input schema."""
