"""Szego quadrature on the unit circle via orthogonal Laurent polynomials.

Main entry points:

* :mod:`szegoq.schur` and :mod:`szegoq.ordering` for the inputs,
* :mod:`szegoq.recurrences` for the polynomial families,
* :mod:`szegoq.opmatrix` and :mod:`szegoq.eigen` for the matrix routes,
* :mod:`szegoq.quadrature` for the rules themselves,
* :mod:`szegoq.measures` for moments and inner products.
"""

from .errors import NumericalError, SzegoqError, ValidationError
from .laurent import LaurentPoly
from .ordering import GeneratingSequence, balanced
from .quadrature import QuadratureRule, compute_rule, rule_via_cmv, rule_via_hessenberg, rule_via_roots
from .schur import SchurSequence, explicit, lebesgue, rogers_szego

__all__ = [
    "GeneratingSequence",
    "LaurentPoly",
    "NumericalError",
    "QuadratureRule",
    "SchurSequence",
    "SzegoqError",
    "ValidationError",
    "balanced",
    "compute_rule",
    "explicit",
    "lebesgue",
    "rogers_szego",
    "rule_via_cmv",
    "rule_via_hessenberg",
    "rule_via_roots",
]
