"""Exception types raised across the package."""


class RmacError(ValueError):
    """Base class for all contract violations raised by :mod:`rmac`."""


class InvalidVertex(RmacError):
    pass


class TooLarge(RmacError):
    pass


class InvalidPolygon(RmacError):
    pass


class InvalidDimension(RmacError):
    pass


class InvalidInsertion(RmacError):
    pass


class NotACocycle(RmacError):
    pass


class Mismatch(RmacError):
    pass


class OutOfRange(RmacError):
    pass


class InvariantBreach(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class InvalidComplex(RmacError):
    """Input does not follow the ``{"m": int, "facets": [[...], ...]}`` schema."""
