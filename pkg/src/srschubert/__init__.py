"""Stanley-Reisner complexes, antidiagonal Groebner degenerations and Schubert determinantal ideals.

Finite-truncation verification of Cohen-Macaulayness for direct limits of
face rings, with the even-determinant Schubert family as the worked case.
"""

__version__ = "0.1.0"

from .complex import SimplicialComplex, complex_from_ideal, ideal_from_complex
from .monomial import Monomial, MonomialIdeal
from .order import AntidiagonalOmega2, InfiniteLex
from .polynomial import Polynomial, PrimeField, RationalField

__all__ = [
    "AntidiagonalOmega2",
    "InfiniteLex",
    "Monomial",
    "MonomialIdeal",
    "Polynomial",
    "PrimeField",
    "RationalField",
    "SimplicialComplex",
    "complex_from_ideal",
    "ideal_from_complex",
]
