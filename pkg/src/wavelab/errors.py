"""Exception types shared across the library."""


class WavelabError(Exception):
    """Base class for all library errors."""


class InvalidArgument(WavelabError):
    """An operation received data violating its preconditions."""


class ConfigError(WavelabError):
    """A configuration value or file is invalid.

    `line` is the 1-based line number in the config file when known.
    """

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        if line is not None and path is not None:
            message = f"{path}:{line}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateChannel(WavelabError):
    """Equalization is impossible (an all-zero channel column)."""
