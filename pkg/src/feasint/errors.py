"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class WorkbenchError(Exception):
    """Base class for all errors raised by the workbench."""

    exit_code = 2


class ParseError(WorkbenchError):
    """Malformed textual input; ``pos`` is a character offset when known."""

    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at offset {pos})"
        super().__init__(message)
        self.pos = pos


class LanguageError(WorkbenchError):
    """A formula uses a connective outside the language an operation accepts."""


class PreconditionError(WorkbenchError):
    """An operation was called outside its documented domain."""


class ResourceLimitError(WorkbenchError):
    """A brute-force or search cap was exceeded; never a wrong answer."""

    exit_code = 3
