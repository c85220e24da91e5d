class NatOrientError(Exception):
    """Base class for input-level failures (CLI exit code 1)."""


class CorpusError(NatOrientError, ValueError):
    """Malformed or inconsistent corpus input."""

    def __init__(self, message, *, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


class UndefinedValue(NatOrientError, ValueError):
    """An indicator is undefined for the requested inputs (empty denominator etc.)."""
