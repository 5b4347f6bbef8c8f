"""Exception hierarchy shared by the whole engine."""


class GradedModError(Exception):
    """Base class for all engine errors."""


class DivisionByZero(GradedModError, ZeroDivisionError):
    pass


class FieldMismatch(GradedModError):
    pass


class RingMismatch(GradedModError):
    pass


class ReducibleModulus(GradedModError):
    pass


class UnsupportedField(GradedModError):
    pass


class InhomogeneousInput(GradedModError):
    pass


class InternalInconsistency(GradedModError):
    """A certified invariant failed; always a bug, never a valid output."""


class HypothesisViolated(GradedModError):
    pass


class PreconditionUnmet(GradedModError):
    pass


class PIsShort(GradedModError):
    pass


class NotCyclic(GradedModError):
    pass


class AllNilpotent(GradedModError):
    pass


class FieldEmbeddingFailure(GradedModError):
    pass


class NotSubmodule(GradedModError):
    pass


class ParseError(GradedModError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownCommand(GradedModError):
    pass
