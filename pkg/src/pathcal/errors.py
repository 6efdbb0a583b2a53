"""Exception and warning types shared across pathcal."""


class PathCalError(Exception):
    """Base class for every error raised by pathcal."""


class DomainError(PathCalError, ValueError):
    """A model or quantity received an input outside its valid domain."""

    def __init__(self, message: str, distance_m: float | None = None):
        super().__init__(message)
        self.distance_m = distance_m


class UsageError(PathCalError, ValueError):
    """Invalid call: bad arguments, unknown model ids, mismatched lengths."""


class ParseError(PathCalError, ValueError):
    """Malformed drive-test CSV, site config, or calibration file."""


class EmptyLogError(ParseError):
    """A drive-test file without any sample rows."""


class DegenerateDataError(PathCalError, ValueError):
    """Too little or collinear data for the requested fit."""


class ModelRangeWarning(UserWarning):
    """Model evaluated outside its published validity range."""


class DataQualityWarning(UserWarning):
    """Suspicious measurement data (out-of-band RSRP, dropped samples)."""
