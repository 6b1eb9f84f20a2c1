class ConcordError(Exception):
    """Base class for domain errors raised by concordkit."""


class PresentationError(ConcordError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class MorphismError(ConcordError):
    pass


class ClassBoundError(ConcordError):
    pass


class WitnessError(ConcordError):
    pass


class NotInKernelError(ConcordError):
    """Series membership at depth >= 1 was asked for an element outside the kernel."""


class SeifertError(ConcordError):
    pass


class JumpPointError(ConcordError):
    """The requested circle point is a root of the Alexander polynomial."""


class EquationSystemError(ConcordError):
    pass


class NonStabilizationError(ConcordError):
    pass


class NoCertificate(ConcordError):
    pass


class LedgerError(ConcordError):
    pass


class UnreachableTarget(ConcordError):
    pass


class Cancelled(ConcordError):
    pass
