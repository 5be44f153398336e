"""Decorated ideal triangulations, classical and quantum Teichmüller coordinates,
and exact checks of the identities relating them."""

from .errors import (
    AlgebraMismatch,
    InvalidPath,
    InvalidSurface,
    NotACycle,
    NotApplicable,
    NotFound,
    QTeichError,
    SingularMatrix,
)
from .triangulation import (
    DecoratedTriangulation,
    DiagonalExchange,
    MarkRotation,
    Reindex,
    SurfaceSig,
    apply_move,
    apply_moves,
    build_standard,
    classify_exchange,
    detect_pentagon,
    find_move_path,
    sigma_matrix,
)

__version__ = "0.1.0"
