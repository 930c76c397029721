from typing import Optional


class ConfigError(ValueError):
    """A run configuration (file, flags or combination) is rejected."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(message if line is None else "line {}: {}".format(line, message))


class MetricsFormatError(ValueError):
    """A metrics CSV cannot be read back; ``line`` is 1-based and counts the header."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__("line {}: {}".format(line, message))
