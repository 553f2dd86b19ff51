"""Exception hierarchy shared by all modules."""


class GupError(Exception):
    """Base class for every error raised by entangled_gup."""


class DomainError(GupError, ValueError):
    """Input outside the domain of a deformation (e.g. past the Pedram pole)."""


class NoMinimumError(GupError, ValueError):
    """The bound curve has no positive minimum (HUP, or a zero parameter)."""


class UnsupportedAnalyticError(GupError, ValueError):
    """No closed form exists for the requested query; use the numeric path."""


class BracketError(GupError, RuntimeError):
    """The minimizer could not bracket a minimum."""


class GridError(GupError, ValueError):
    """A wavefunction does not fit its grid (boundary decay violated)."""


class RootError(GupError, ValueError):
    """The slit-case quadratic has no real roots."""


class DegenerateDataError(GupError, ValueError):
    """The experiment constraint holds everywhere or nowhere on the search range."""


class RecordParseError(GupError, ValueError):
    """Malformed experiment record."""


class StateFormatError(GupError, ValueError):
    """Malformed or unsupported pair-state fixture file."""
