"""Exception hierarchy shared by every module.

Each class carries an ``exit_code`` so the command-line front end can map a
failure to its documented process exit status without a lookup table.
"""


class InterferenceError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class DomainError(InterferenceError, ValueError):
    """Argument outside the domain of a function."""

    exit_code = 2


class PoleError(DomainError):
    """Function evaluated at a pole."""


class NoRootError(DomainError):
    """Requested value lies outside the range of the function being inverted."""


class GeometryError(DomainError):
    """Invalid or degenerate region configuration."""


class PointMassError(DomainError):
    """A density was requested for a law that is a point mass."""


class SingularityError(DomainError):
    """An interferer sits exactly on the victim receiver."""


class RankDeficiencyError(DomainError):
    """Sample covariance is numerically singular."""


class InsufficientTrialsError(DomainError):
    """Too few Monte Carlo trials for the requested quantile."""


class ConfigError(InterferenceError, ValueError):
    """Malformed or unknown configuration entry."""

    exit_code = 2


class NonConvergenceError(InterferenceError, ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""

    exit_code = 4

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index
