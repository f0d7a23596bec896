"""Exception types shared by the numerical modules."""


class RogueWaveError(Exception):
    """Base class for all library errors."""


class DomainError(RogueWaveError, ValueError):
    """An argument lies outside the domain of the requested function."""


class AccuracyError(RogueWaveError, ArithmeticError):
    """A quadrature or iteration failed to reach the requested accuracy."""


class ConsistencyError(RogueWaveError):
    """Two independent evaluation routes disagree beyond tolerance."""


class ConfigurationError(RogueWaveError, ValueError):
    """The spectral data are in an unexpected root configuration."""
