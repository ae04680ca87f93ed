"""Exception hierarchy shared by the lmtkit modules and the command line."""


class LmtError(ValueError):
    """Base class for every error raised on purpose by lmtkit."""

    exit_code = 1


class ParseError(LmtError):
    """A fixture file or inline term could not be parsed."""

    exit_code = 2

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        location = ""
        if path is not None:
            location = f"{path}:"
        if line is not None:
            location += f"{line}:"
        super().__init__(f"{location} {message}" if location else message)


class SortError(LmtError):
    """Ill-typed composite, ill-sorted term or mismatched 2-cell boundary."""

    def __init__(self, message, node=None):
        self.node = node
        super().__init__(message if node is None else f"{message} (at {node})")


class PreconditionError(LmtError):
    """An operation was called on data outside its precondition."""


class UnknownCommand(LmtError):
    exit_code = 3


class BudgetExhausted(LmtError):
    """Raised when a definite verdict was required and the search budget ran out."""

    exit_code = 4

    def __init__(self, message, explored=0):
        self.explored = explored
        super().__init__(message)
