"""Exception hierarchy shared by every structure in the package."""


class DecApspError(Exception):
    pass


class GraphError(DecApspError, ValueError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class EdgeAbsent(GraphError):
    pass


class ClockSkew(DecApspError):
    """A structure received a deletion out of step with the graph clock."""


class EpsilonOutOfRange(DecApspError, ValueError):
    pass


class ProbabilityOutOfRange(DecApspError, ValueError):
    pass


class OutOfRange(DecApspError, IndexError):
    pass


class WindowTooNarrow(DecApspError, ValueError):
    pass


class SearchExhausted(DecApspError):
    """The BFS ran out of vertices before reaching the end of its window."""


class OracleContractViolation(DecApspError, AssertionError):
    pass


class BadParams(DecApspError, ValueError):
    pass


class VerificationFailure(DecApspError):
    def __init__(self, clock, u, v, got, want):
        self.clock, self.u, self.v, self.got, self.want = clock, u, v, got, want
        super().__init__(
            f"clock={clock} pair=({u},{v}) got={got} want={want}"
        )


class NoEdgesLeft(DecApspError):
    pass
