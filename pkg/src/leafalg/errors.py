"""Exception types shared across the package.

Two failure families matter to callers (and to the CLI exit codes):
malformed input and mathematically out-of-domain requests.
"""


class InputError(ValueError):
    """Bad user input: unparseable text, schema violations, unknown names."""


class ParseError(InputError):
    """Syntax error in a polynomial expression; carries the offset."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DomainError(ValueError):
    """Input is well-formed but outside the mathematical domain of the
    operation (non-isolated singularity, inhomogeneous ideal, wrong
    codimension, size guard exceeded)."""
