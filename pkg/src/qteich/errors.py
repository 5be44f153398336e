"""Exception types shared across the package."""


class QTeichError(Exception):
    """Base class for all errors raised by qteich."""


class InvalidSurface(QTeichError, ValueError):
    """Surface signature with non-negative Euler characteristic, or bad input data."""


class NotApplicable(QTeichError, ValueError):
    """A move (or coordinate change) was requested where its precondition fails."""


class NotACycle(QTeichError, ValueError):
    """A dual-edge chain with non-zero boundary was given where a cycle is required."""


class InvalidPath(QTeichError, ValueError):
    """A move sequence that cannot be applied to the given triangulation."""


class NotFound(QTeichError, LookupError):
    """Breadth-first search exhausted its depth limit."""

    def __init__(self, depth_limit):
        super().__init__(f"no move path found within depth {depth_limit}")
        self.depth_limit = depth_limit


class AlgebraMismatch(QTeichError, ValueError):
    """Elements of two different quantum tori were combined."""


class SingularMatrix(QTeichError, ArithmeticError):
    """An inverse was requested of an expression whose matrix is singular."""

    def __init__(self, node=None):
        super().__init__("expression evaluates to a singular matrix")
        self.node = node
