"""Exact computations with SL_n webs and their quantum group ladders."""

from .scalar import Scalar, parse as parse_scalar, render as render_scalar, quantum_binomial, quantum_int
from .exterior import LinearMap, SpaceObject
from .web import Cell, WebIR, WebLinComb, parse as parse_web, render as render_web, validate
from .functor import evaluate, eval_closed, strip_trivial
from .qgroup import Ladder, UWord, parse_ladder, parse_uword, ladder_to_web, word_to_ladder
from .ladderize import ladderize, ladderize_verify
from .braiding import ColoredBraid, braid_invariant, normalized_invariant, parse_braid
from .harness import howe_rank, random_web, relcheck

__all__ = [
    "Scalar", "parse_scalar", "render_scalar", "quantum_binomial", "quantum_int",
    "LinearMap", "SpaceObject",
    "Cell", "WebIR", "WebLinComb", "parse_web", "render_web", "validate",
    "evaluate", "eval_closed", "strip_trivial",
    "Ladder", "UWord", "parse_ladder", "parse_uword", "ladder_to_web", "word_to_ladder",
    "ladderize", "ladderize_verify",
    "ColoredBraid", "braid_invariant", "normalized_invariant", "parse_braid",
    "howe_rank", "random_web", "relcheck",
]
