"""Exception hierarchy shared by every module in the package."""


class SpineCertError(Exception):
    """Base class for all errors raised by spinecert."""


class LoopArc(SpineCertError, ValueError):
    pass


class DuplicateArc(SpineCertError, ValueError):
    pass


class VertexOutOfRange(SpineCertError, ValueError):
    pass


class OverlapError(SpineCertError, ValueError):
    pass


class BudgetExceeded(SpineCertError):
    """An exhaustive search was asked to go beyond its size or state cap."""


class NotSemicomplete(SpineCertError, ValueError):
    pass


class EmptyX(SpineCertError, ValueError):
    pass


class InvalidWitness(SpineCertError, ValueError):
    pass


class InvalidViolation(SpineCertError, ValueError):
    pass


class NotZigzagFree(SpineCertError, ValueError):
    pass


class XSmallerThanK(SpineCertError, ValueError):
    pass


class InvalidParams(SpineCertError, ValueError):
    pass


class ParseError(SpineCertError, ValueError):
    """Malformed or semantically invalid graph file.

    ``line`` is the 1-based line number when the problem can be located.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
