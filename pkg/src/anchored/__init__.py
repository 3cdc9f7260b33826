"""Symbolic calculus for anchored planar algebras."""

from .ribbon_braid import RibbonBraid, Permutation, from_word, compose_at, multiply, equals, permutation
from .tangle import (
    TangleType, TangleTypeError, Unit, Id, Cap, Cup, Pin, Gen, Comp, Act, StandardForm,
    infer_type, compose, act, normalize, combine,
)
from .moves import Move, MoveNotApplicable, apply_move, applicable_moves, equivalent
from .dsl import ParseError, parse_expr, render
from .poly import Poly

__version__ = "0.1.0"

__all__ = [
    "RibbonBraid", "Permutation", "from_word", "compose_at", "multiply", "equals", "permutation",
    "TangleType", "TangleTypeError", "Unit", "Id", "Cap", "Cup", "Pin", "Gen", "Comp", "Act",
    "StandardForm", "infer_type", "compose", "act", "normalize", "combine",
    "Move", "MoveNotApplicable", "apply_move", "applicable_moves", "equivalent",
    "ParseError", "parse_expr", "render", "Poly",
]
