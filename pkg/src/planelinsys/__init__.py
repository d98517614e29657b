"""Exact plane-curve toolkit: Carnot-type criteria, intersection divisors and
linear systems on smooth plane curves over Q and finite fields."""

from .errors import DomainError
from .fields import QQ, ExtensionField, FieldElement, PrimeField, make_extension
from .forms import BinaryForm, TernaryForm, TruncatedSeries
from .geometry import DivisorOnCurve, DivisorOnLine, Line, ProjPoint

__version__ = "0.1.0"

__all__ = [
    "DomainError", "QQ", "PrimeField", "ExtensionField", "FieldElement", "make_extension",
    "TernaryForm", "BinaryForm", "TruncatedSeries", "ProjPoint", "Line", "DivisorOnLine",
    "DivisorOnCurve",
]
