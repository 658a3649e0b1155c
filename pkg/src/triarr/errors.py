"""Exception hierarchy shared across modules."""


class TriarrError(Exception):
    """Base class for all package errors."""


class DuplicateExponent(TriarrError, ValueError):
    pass


class EmptyArrangement(TriarrError, ValueError):
    """Fewer than three lines, or all lines through one point."""


class LineNotPresent(TriarrError, KeyError):
    pass


class NotEmbeddable(TriarrError, ValueError):
    pass


class ModulusMismatch(TriarrError, ValueError):
    pass


class InvalidSignature(TriarrError, ValueError):
    pass


class SamplingExhausted(TriarrError, RuntimeError):
    pass


class ConstructionFailed(TriarrError, RuntimeError):
    pass


class InvariantViolation(TriarrError, AssertionError):
    """An internal consistency check failed; carries a dump for debugging."""

    def __init__(self, message: str, dump: dict | None = None):
        super().__init__(message)
        self.dump = dump or {}
