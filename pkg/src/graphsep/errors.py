"""Exception hierarchy shared by every graphsep module."""


class GraphSepError(Exception):
    """Base class for all errors raised by graphsep."""


class InvalidGraph(GraphSepError, ValueError):
    """A graph violates simplicity or its layer bookkeeping."""


class EmptyGraphError(GraphSepError, ValueError):
    """The operation needs at least one edge (a zero-trace Laplacian is not a state)."""


class PreconditionViolated(GraphSepError, ValueError):
    """Inputs do not satisfy the documented precondition of an operation."""

    def __init__(self, message, failed=None):
        super().__init__(message)
        self.failed = failed


class PsdCertificateFailure(GraphSepError, ArithmeticError):
    """A factor that must be positive semidefinite failed certification."""


class NotAUnionGraph(PreconditionViolated):
    """Graph is not a disjoint union of identical per-layer copies."""


class ScaffoldNotTheoremMain(PreconditionViolated):
    """The scaffold graph of a bowtie product fails the sufficiency conditions."""


class VertexCountMismatch(PreconditionViolated):
    """The inner graph of a product does not have one vertex per layer position."""


class TooLarge(GraphSepError, ValueError):
    """An exhaustive sweep was requested beyond the configured guard."""


class ParseError(GraphSepError, ValueError):
    """A graph file could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
