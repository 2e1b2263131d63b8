"""Exception hierarchy shared by the numerical modules."""

from collections.abc import Sequence


class SptriError(Exception):
    """Base class for all errors raised by sptri."""


class DomainError(SptriError, ValueError):
    """Raised when a parameter lies outside the domain of an operation."""


class DimensionError(DomainError):
    """Raised when matrix shapes are empty or do not match."""


class AliasingError(DomainError):
    """Raised when a grid is too small to resolve a polynomial's spectrum."""


class ConfigError(SptriError, ValueError):
    """Raised when a configuration object is inconsistent."""


class DegenerateWitnessError(SptriError):
    """Raised when a multiplier witness has zero quasi-norm."""


class QuadratureError(SptriError):
    """Raised when an L^p integration fails to converge.

    Parameters
    ----------
    message : str
        Human readable description.
    iterates : Sequence[float]
        The last (at most two) values produced before giving up.
    grid : int
        The last grid size (or truncation length) that was tried.
    """

    def __init__(self, message: str, iterates: Sequence[float] = (), grid: int = 0):
        super().__init__(message)
        self.iterates = tuple(iterates)
        self.grid = grid
