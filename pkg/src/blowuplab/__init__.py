"""blowuplab: exact invariants of blowup algebras of zero-dimensional ideals.

Computes Ratliff-Rush closures (absolute and relative to a cyclic module),
reduction numbers, Castelnuovo-Mumford regularity of Rees/associated-graded
algebras, Hilbert-Samuel polynomials and postulation numbers, Ulrich-ideal
certificates, and Rees-algebra presentations, over three ring models:
polynomial rings, numerical-semigroup rings, and hypersurface/quotient rings.
"""

from .engines import Ideal, RingSpec, Session
from .kernel import DEGREVLEX, LEX, MonomialOrder, Polynomial, binomial_poly

__all__ = [
    "DEGREVLEX",
    "LEX",
    "Ideal",
    "MonomialOrder",
    "Polynomial",
    "RingSpec",
    "Session",
    "binomial_poly",
]

__version__ = "0.1.0"
