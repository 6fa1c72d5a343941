"""Lattice Core - exact linear algebra, lattice order and matrix algebras on R^n."""

from .algebra import (
    MatrixAlgebra,
    RadicalCertificate,
    generate_algebra,
    is_simultaneously_triangularizable,
    radical_basis,
    radical_membership,
    radical_membership_oracle,
)
from .exceptions import (
    DimensionMismatchError,
    LatticeToolkitError,
    NotDisjointError,
    NotInAlgebraError,
    NotPositiveError,
    NotSquareError,
    NotUnitizedError,
    ZeroVectorError,
)
from .order import LatticeVector, PositiveFunctional
from .polynomial import Polynomial
from .ratmat import RationalMatrix
from .reducibility import IdealChain, SupportDigraph

__version__ = "0.1.0"

__all__ = [
    "RationalMatrix",
    "Polynomial",
    "LatticeVector",
    "PositiveFunctional",
    "MatrixAlgebra",
    "RadicalCertificate",
    "SupportDigraph",
    "IdealChain",
    "generate_algebra",
    "radical_membership",
    "radical_membership_oracle",
    "radical_basis",
    "is_simultaneously_triangularizable",
    "LatticeToolkitError",
    "DimensionMismatchError",
    "NotSquareError",
    "NotDisjointError",
    "NotPositiveError",
    "ZeroVectorError",
    "NotInAlgebraError",
    "NotUnitizedError",
]
