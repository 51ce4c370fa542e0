"""Exception types shared across the package."""


class CVQKDError(Exception):
    """Base class for all package errors."""


class NonPhysical(CVQKDError):
    """A covariance matrix or spectrum violates bona-fide state conditions."""


class DomainError(CVQKDError):
    """An argument is outside the mathematical domain of a formula."""


class SingularChannel(CVQKDError):
    """A trust scenario is undefined for a lossless (or near-lossless) link."""


class DegenerateSample(CVQKDError):
    """Estimation impossible: the disclosed sample carries no signal power."""


class BelowHorizon(CVQKDError):
    """Orbit geometry places the satellite at or below the local horizon."""


class ProfileRange(CVQKDError):
    """A transmittance table was queried outside its tabulated zenith range."""


class ConfigError(CVQKDError):
    """Invalid scenario configuration; message carries the offending field path."""
