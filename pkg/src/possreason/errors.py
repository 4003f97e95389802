"""Exception hierarchy shared by all modules."""


class ReasoningError(Exception):
    """Base class for every error raised by possreason."""


class DomainError(ReasoningError, ValueError):
    """An argument lies outside an operation's domain (universe mismatch, bad grade, ...)."""


class ResourceError(ReasoningError):
    """A configured size limit (cells, disjuncts, oracle universe size) was exceeded."""


class ParseError(ReasoningError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)


class ScheduleError(ReasoningError):
    def __init__(self, message: str, cycle: tuple[str, ...] = ()):
        self.cycle = cycle
        super().__init__(message)


class OracleMismatch(ReasoningError):
    """The power-set oracle disagrees with the first-order inference path."""
