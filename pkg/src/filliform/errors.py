class DomainError(ValueError):
    """A precondition of a library operation was violated.

    ``kind`` is a short machine-readable tag surfaced by the CLI.
    """

    def __init__(self, kind, detail):
        super().__init__(detail)
        self.kind = kind
        self.detail = detail


class InconsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""
