"""Exception hierarchy shared by the package."""


class PantsCurvesError(Exception):
    """Base class for every error raised by pantscurves."""


class WordSyntaxError(PantsCurvesError, ValueError):
    """Raised when a word does not conform to the input grammar."""

    def __init__(self, message, text=None, position=None):
        if text is not None and position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position


class TrivialClassError(PantsCurvesError, ValueError):
    """The word is trivial after cyclic reduction, so it names no curve."""


class ResourceLimitError(PantsCurvesError):
    """An enumeration would exceed the configured size cap."""


class CapUnverifiedError(PantsCurvesError):
    """A class with small self-intersection was found beyond the length cap."""


class NotConvergedError(PantsCurvesError):
    """The oracle's double-coset count did not stabilise before maxRadius."""


class OddCountError(PantsCurvesError):
    """Ordered self-crossing count was odd; double-coset bookkeeping is broken."""


class EllipticElementError(PantsCurvesError):
    """A non-trivial word mapped to an elliptic matrix (representation bug)."""


class NotHyperbolicError(PantsCurvesError, ValueError):
    """An axis was requested for a matrix that is not hyperbolic."""


class SharedEndpointError(PantsCurvesError):
    """Two distinct geodesics share exactly one endpoint (bookkeeping bug)."""
