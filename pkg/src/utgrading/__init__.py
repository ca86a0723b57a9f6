"""Exact computation with group gradings on upper triangular matrices.

The package enumerates, over small finite fields, the graded automorphism
groups of UT_n under the associative, Lie and Jordan products, together
with Weyl groups, diagonal subgroups, graded involutions and the universal
(abelian) grading group, and checks the expected structural facts as
executable assertions.
"""

__version__ = "1.0.0"

from .fields import GF, QQ, field_from_descriptor
from .gradings import (
    Grading,
    GradingError,
    elementary_from_eta,
    elementary_from_sequence,
    mt_from_symmetric,
)
from .groups import AbelianGroup, CayleyGroup, GroupElement, GroupError
from .triangular import TriMatrix, multiply

__all__ = [
    "GF",
    "QQ",
    "field_from_descriptor",
    "Grading",
    "GradingError",
    "elementary_from_eta",
    "elementary_from_sequence",
    "mt_from_symmetric",
    "AbelianGroup",
    "CayleyGroup",
    "GroupElement",
    "GroupError",
    "TriMatrix",
    "multiply",
    "__version__",
]
