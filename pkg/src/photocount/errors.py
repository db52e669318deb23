"""Exception hierarchy shared by all modules."""


class PhotocountError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(PhotocountError, ValueError):
    """A parameter lies outside its allowed range."""


class DegreeLimitError(ParameterError):
    """Polynomial degree or photon-number index above the supported ceiling."""


class SingularParameterError(ParameterError):
    """The requested evaluation sits on a pole or branch point."""


class TruncationError(PhotocountError):
    """A Fock-space cutoff cannot reach the requested tail tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class CapabilityError(PhotocountError):
    """The method is not available for the requested state."""


class DivergenceError(PhotocountError):
    """An integral is evaluated outside the region where it converges."""
