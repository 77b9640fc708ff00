"""toricface: exact computations with toric face rings.

Monoidal complexes and their toric face rings, presentation ideals,
weight-order initial ideals and the regular subdivisions they induce,
and graded Betti numbers via squarefree divisor complexes and Koszul
degree components.  All arithmetic is exact (integers and rationals).
"""

from . import betti, complexes, exact, geom, grobner, ring, subdiv
from .complexes import MonoidalComplex, from_simplicial_complex

__all__ = [
    "betti",
    "complexes",
    "exact",
    "geom",
    "grobner",
    "ring",
    "subdiv",
    "MonoidalComplex",
    "from_simplicial_complex",
]

__version__ = "0.1.0"
