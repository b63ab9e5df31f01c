"""Exception hierarchy shared across the package.

Each class carries the process exit code the CLI maps it to.
"""


class RotorWalkError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class EstimationError(RotorWalkError):
    """An estimator could not produce a target estimate."""

    exit_code = 1


class ConfigError(RotorWalkError):
    """Invalid configuration, parameters, or incompatible inputs."""

    exit_code = 2


class TruncationError(RotorWalkError):
    """Momentum window too small: truncated tail mass exceeded tolerance."""

    exit_code = 3
