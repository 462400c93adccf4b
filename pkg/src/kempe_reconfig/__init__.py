"""Kempe-change recoloring of plane graphs with polynomially bounded sequences."""

from .coloring import (
    Coloring,
    KempeMove,
    RecolorStats,
    apply_kempe,
    avoids,
    global_color_swap,
    is_proper,
    kempe_chain,
    replay,
    reverse_sequence,
    verify_sequence,
)
from .errors import (
    CapExceededError,
    InvalidColoringError,
    InvalidGraphError,
    InvalidMoveError,
    KempeError,
    PaperViolation,
    SequenceError,
    SurgeryError,
)
from .main_algo import four_coloring, theorem2, theorem_main
from .plane_graph import PlaneGraph, faces, validate

__version__ = "0.1.0"
