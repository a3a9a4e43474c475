class MemsMatchError(Exception):
    """Base class for every error raised by memsmatch."""


class NetlistError(MemsMatchError):
    """A netlist could not be parsed or violates an element invariant."""


class NetlistSyntaxError(NetlistError):
    """
    A netlist line does not follow the grammar.

    Attributes:
        line: 1-based line number in the source text.
        reason: Human-readable description of the problem.
    """

    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class UnknownElementKind(NetlistError):
    """The kind token of a netlist line is not a known element kind."""


class DuplicatePort(NetlistError):
    """Two port elements claim the same port number."""


class BadValue(NetlistError):
    """A parameter value is missing, malformed or outside its physical range."""


class SolverError(MemsMatchError):
    """The AC solver could not produce a result."""


class SingularMatrix(SolverError):
    """A pivot fell below the relative threshold during LU factorization."""


class SingularEmbedding(SolverError):
    """An ideal hybrid could not be embedded as a nodal admittance, even after regularization."""


class StateEvaluationError(SolverError):
    """
    Solving one configuration word failed.

    Attributes:
        word: The configuration word being evaluated.
        f: Frequency in Hz.
    """

    def __init__(self, word: int, f: float, reason: str) -> None:
        super().__init__(f"word {word} at {f:.6g} Hz: {reason}")
        self.word = word
        self.f = f


class AnalysisError(MemsMatchError):
    """An analysis received input it cannot summarize."""


class EmptyInput(AnalysisError):
    """An analysis was asked to summarize an empty set of states."""


class UsageError(MemsMatchError):
    """Command-line, configuration file or literal parsing problem."""
