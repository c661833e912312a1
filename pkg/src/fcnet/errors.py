"""Exception hierarchy shared by all fcnet modules."""

from __future__ import annotations


class NetError(Exception):
    """Base class for every error raised by fcnet."""


class StructuralError(NetError, KeyError):
    """A node id does not belong to the net, or a set mixes places and transitions."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class FiringError(NetError):
    """A transition was fired at a marking that does not enable it."""

    def __init__(self, transition: str, index: int | None = None):
        self.transition = transition
        self.index = index
        where = "" if index is None else f" at step {index}"
        super().__init__(f"transition {transition!r} is not enabled{where}")


class TokenOverflowError(NetError, OverflowError):
    """A token count left the representable range."""


class ContractError(NetError, ValueError):
    """A documented precondition of an operation does not hold."""


class ResourceLimitError(NetError):
    """A configured work/size limit was exceeded."""

    def __init__(self, what: str, limit: int):
        self.what = what
        self.limit = limit
        super().__init__(f"{what} exceeded the limit of {limit}")


class GraphIncompleteError(ContractError):
    """Dead/live queries are refused on a truncated reachability graph."""


class InadmissibleNetError(ContractError):
    """The net is not free-choice or has isolated places."""

    def __init__(self, report):
        self.report = report
        super().__init__(report.describe())


class ParseError(NetError, ValueError):
    """Malformed net text; carries a 1-based line and column."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}")
