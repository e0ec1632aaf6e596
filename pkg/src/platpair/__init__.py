"""Exact computation of the su(N+1) quantum invariant of plat closures.

Two independent engines: an intersection-pairing engine that evaluates the
invariant homologically from exact PL geometry in the punctured disk, and a
skein-tree evaluator of the corresponding HOMFLY specialization on the plat
diagram.  Their agreement is the headline correctness check.
"""

from .laurent import LaurentPoly, NonDivisibleError, divide_exact, quantum_integer
from .braid import (
    BraidError,
    BraidWord,
    PlatBraid,
    apply_move,
    is_plat_admissible,
    parse_braid,
    random_plat_braid,
    skein_siblings,
    stabilize,
    strand_character,
)
from .pairing import (
    EngineError,
    Target,
    intersection_pairing,
    plat_invariant,
    plat_invariant_reduced,
)
from .oracle import LinkDiagram, jones_polynomial, plat_closure, skein_invariant

__version__ = "0.1.0"

__all__ = [
    "BraidError",
    "BraidWord",
    "EngineError",
    "LaurentPoly",
    "LinkDiagram",
    "NonDivisibleError",
    "PlatBraid",
    "Target",
    "apply_move",
    "divide_exact",
    "intersection_pairing",
    "is_plat_admissible",
    "jones_polynomial",
    "parse_braid",
    "plat_closure",
    "plat_invariant",
    "plat_invariant_reduced",
    "quantum_integer",
    "random_plat_braid",
    "skein_invariant",
    "skein_siblings",
    "stabilize",
    "strand_character",
]
