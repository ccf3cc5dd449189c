"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class DagReduceError(Exception):
    """Base class for all errors raised by dagreduce."""


# -- graph construction / validation ---------------------------------------


class GraphError(DagReduceError):
    pass


class CyclicGraphError(GraphError):
    pass


class UnknownVertexError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateArcError(GraphError):
    pass


class EndpointsEqualError(GraphError):
    pass


class NotAPathError(GraphError):
    pass


class InputTooLargeError(DagReduceError):
    """Instance would overflow the signed 64-bit budget or a table limit."""


class ResourceLimitError(DagReduceError):
    """A solver exhausted its state or node budget."""


class NegativeWeightError(DagReduceError):
    pass


class OracleLimitError(DagReduceError):
    """Campaign bounds exceed what the exhaustive oracles accept."""


# -- reductions and witness maps ---------------------------------------------


class ReductionError(DagReduceError):
    pass


class EmptyFormulaError(ReductionError):
    pass


class DirectArcPathError(ReductionError):
    pass


class IndexOutOfRangeError(ReductionError):
    pass


class ContradictoryLiteralsError(ReductionError):
    pass


class WrongLengthError(ReductionError):
    pass


class UnsatisfiedError(ReductionError):
    pass


# -- text formats ------------------------------------------------------------


class ParseError(DagReduceError):
    """Malformed input text.

    Parsers always fill in 1-based ``line`` and ``column``; validation done
    outside a parser (e.g. building a formula in code) leaves them None.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class FormatSyntaxError(ParseError):
    pass


class CountMismatchError(ParseError):
    pass


class HeaderMismatchError(ParseError):
    pass


class DuplicateVariableInClauseError(ParseError):
    pass


class ParsedGraphError(ParseError):
    """A graph-level violation found while parsing; also a :class:`GraphError`."""


class ParsedCyclicGraphError(ParsedGraphError, CyclicGraphError):
    pass


class ParsedSelfLoopError(ParsedGraphError, SelfLoopError):
    pass


class ParsedDuplicateArcError(ParsedGraphError, DuplicateArcError):
    pass
