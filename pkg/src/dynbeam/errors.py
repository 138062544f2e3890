"""Exception types raised across the package."""


class DegenerateCodebookError(RuntimeError):
    """Every candidate codeword pair at some search layer is zero."""


class ConfigError(ValueError):
    """Base class for experiment configuration problems."""


class ConfigParseError(ConfigError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ConstraintViolation(ConfigError):
    """A parsed configuration breaks one of its invariants."""
