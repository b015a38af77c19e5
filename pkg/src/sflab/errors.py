"""Exception types shared by every sflab module.

Each class carries the stable one-line code the CLI prints on stderr.
"""


class SflabError(Exception):
    code = "E_DOMAIN"
    exit_code = 1


class DomainError(SflabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""

    code = "E_DOMAIN"


class OutOfRangeError(SflabError, ValueError):
    """A query exceeds the range covered by a precomputed table."""

    code = "E_RANGE"


class ZeroFileError(SflabError, ValueError):
    """A zero-ordinate file is malformed."""

    code = "E_PARSE"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
