"""Exception hierarchy shared across the package."""


class IsnadError(Exception):
    """Base class for every error raised by isnad_sna."""


class DomainError(IsnadError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ParseError(IsnadError):
    """A corpus file could not be parsed."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}" if where else message)


class ValidationError(IsnadError):
    """Input is well-formed but violates a structural invariant."""


class UnknownNarratorError(IsnadError, KeyError):
    """A narrator id was looked up that the graph or table does not contain."""

    def __str__(self) -> str:
        return f"unknown narrator id: {self.args[0]!r}"
