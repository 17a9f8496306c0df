"""Shared exception types.

The CLI maps these to exit codes: ParseError (and I/O problems) exit with
code 2, PreconditionError with code 3.
"""


class ParseError(ValueError):
    """Malformed textual input (graph files, Cayley tables, expressions).

    `line` is 1-based when the input is line-oriented, else None.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(ValueError):
    """A mathematical precondition of an operation does not hold."""
