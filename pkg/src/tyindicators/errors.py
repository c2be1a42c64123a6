"""Exception types shared across the package."""


class TYError(Exception):
    """Base class for errors raised by this package."""


class SpecError(TYError, ValueError):
    """Malformed group, bicharacter or job specification."""


class BoundExceeded(TYError):
    """A brute-force or work bound would be exceeded."""


class TheoremViolation(TYError, AssertionError):
    """A computed value contradicts an identity that must hold; indicates a bug."""


class NotSquare(TYError, ValueError):
    """Fiber functors need |A| to be a perfect square."""
