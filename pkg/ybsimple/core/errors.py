"""Exception hierarchy for ybsimple.

Each exception class carries the process exit code the command handler
returns for it.
"""


class YBSimpleError(Exception):
    """Base class for all engine errors."""

    exit_code = 1


class DescriptorError(YBSimpleError):
    """Malformed group, matrix, family or file descriptor."""

    exit_code = 2


class CapExceededError(YBSimpleError):
    """A configured size cap was exceeded."""

    exit_code = 3

    def __init__(self, what, limit, reached=None):
        self.what = what
        self.limit = limit
        self.reached = reached
        detail = f" (reached {reached})" if reached is not None else ""
        super().__init__(f"cap exceeded: {what} limit {limit}{detail}")


class VerificationError(YBSimpleError):
    """A checked predicate failed.

    Args:
        predicate: Short name of the failing predicate, e.g. ``braid``.
        witness: Tuple of indices exhibiting the failure.
        message: Optional free text.
    """

    exit_code = 1

    def __init__(self, predicate, witness=(), message=None):
        self.predicate = predicate
        self.witness = tuple(witness)
        text = message or f"{predicate} failed"
        if self.witness:
            text = f"{text} at {self.witness}"
        super().__init__(text)


class SolutionError(VerificationError):
    """A table is not an involutive non-degenerate solution."""


class BraceError(VerificationError):
    """Tables violate a left brace axiom."""


class ConstructionError(VerificationError):
    """A construction's parameters or certificates failed."""
