"""Exception taxonomy shared across the package.

Construction problems (bad coordinate data, parameters outside the
normalizable window) are distinguished from numerical failures (Newton
stall, eigensolver breakdown) so the CLI can map them to exit codes.
"""


class Solvable1dError(Exception):
    """Base class for every error raised by this package."""


class InvalidModel(Solvable1dError):
    """Model parameters violate a normalizability requirement."""


class UnviableCoordinate(Solvable1dError):
    """The quadratic z'^2 = Q(z) admits no real, physical coordinate."""


class DomainViolation(Solvable1dError):
    """A grid or evaluation point lies outside the coordinate domain."""


class IntegrationDiverged(Solvable1dError):
    """The coordinate ODE integration left the trusted region."""


class LevelOutOfRange(Solvable1dError):
    """Requested level N lies outside the model's bound-state window."""


class InvalidRoots(Solvable1dError):
    """A supplied root vector does not satisfy its root equations."""


class CoincidentRoots(Solvable1dError):
    """Two roots collide, making the root equations singular."""


class NoConvergence(Solvable1dError):
    """The damped Newton iteration exhausted its seed/iteration budget."""


class ParameterWindowExceeded(Solvable1dError):
    """A partner-parameter step left the normalizable window."""


class GridTooCoarse(Solvable1dError):
    """Too few grid points for the requested finite-difference stencil."""


class ConvergenceFailure(Solvable1dError):
    """The tridiagonal eigensolver failed to converge."""


class ConfigError(Solvable1dError):
    """Malformed CLI/config input (unknown keys, bad values)."""
