"""Exact computational algebra workbench over F_p and Q."""

from .fields import GF, QQ, FieldError, PrimeField, RationalField, field_from_name
from .mpoly import MPoly, PolynomialRing, RingMismatch
from .orders import TermOrder
from .rng import Rng
from .unipoly import UniPoly

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "FieldError",
    "PrimeField",
    "RationalField",
    "field_from_name",
    "MPoly",
    "PolynomialRing",
    "RingMismatch",
    "TermOrder",
    "Rng",
    "UniPoly",
    "__version__",
]
