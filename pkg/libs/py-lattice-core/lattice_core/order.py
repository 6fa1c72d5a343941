"""
Componentwise lattice structure on R^n.

Positivity, disjointness, atoms, biorthogonal positive functionals and the
positive interpolation operators built from them.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import (
    DimensionMismatchError,
    NotDisjointError,
    NotPositiveError,
    ZeroVectorError,
)
from .ratmat import RationalMatrix, Scalar, Vector, inverse, vector

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LatticeVector:
    """Vector in R^n under the componentwise order."""

    entries: Vector

    def __post_init__(self) -> None:
        if not self.entries:
            raise DimensionMismatchError("LatticeVector must have dimension at least 1")

    @classmethod
    def of(cls, values: Iterable[Scalar | str]) -> "LatticeVector":
        return cls(vector(values))

    @classmethod
    def atom(cls, dim: int, index: int, scale: Scalar = 1) -> "LatticeVector":
        """Positive multiple of the standard basis vector e_index."""
        entries = [_ZERO] * dim
        entries[index] = Fraction(scale)
        return cls(tuple(entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.entries) if x != 0)

    def is_zero(self) -> bool:
        return not self.support

    def _check(self, other: "LatticeVector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"Dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.entries))

    def scale(self, scalar: Scalar) -> "LatticeVector":
        s = Fraction(scalar)
        return LatticeVector(tuple(s * a for a in self.entries))


@dataclass(frozen=True)
class PositiveFunctional:
    """Positive linear functional on R^n, stored by its coefficients."""

    coefficients: Vector

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise DimensionMismatchError("PositiveFunctional must have dimension at least 1")
        if any(c < 0 for c in self.coefficients):
            raise NotPositiveError(
                "Functional coefficients must be nonnegative",
                {"coefficients": [str(c) for c in self.coefficients]},
            )

    @classmethod
    def of(cls, values: Iterable[Scalar | str]) -> "PositiveFunctional":
        return cls(vector(values))

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def __call__(self, x: LatticeVector) -> Fraction:
        if x.dim != self.dim:
            raise DimensionMismatchError(f"Dimensions {self.dim} and {x.dim} differ")
        return sum((c * v for c, v in zip(self.coefficients, x.entries) if c), _ZERO)

    def __add__(self, other: "PositiveFunctional") -> "PositiveFunctional":
        if self.dim != other.dim:
            raise DimensionMismatchError(f"Dimensions {self.dim} and {other.dim} differ")
        return PositiveFunctional(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))


def standard_atoms(n: int) -> list[LatticeVector]:
    """The atoms e_0, ..., e_{n-1} of R^n: the canonical pairwise disjoint family."""
    return [LatticeVector.atom(n, i) for i in range(n)]


def is_positive_vector(x: LatticeVector) -> bool:
    return all(v >= 0 for v in x.entries)


def is_positive_operator(m: RationalMatrix) -> bool:
    """A matrix maps the standard cone into itself iff it is entrywise nonnegative."""
    return all(v >= 0 for v in m.entries)


def leq_entrywise(a: RationalMatrix, b: RationalMatrix) -> bool:
    """True iff a <= b in the operator order, i.e. b - a is entrywise nonnegative."""
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"Shapes {a.shape} and {b.shape} differ", {"left": a.shape, "right": b.shape}
        )
    return all(x <= y for x, y in zip(a.entries, b.entries))


def are_disjoint(x: LatticeVector, y: LatticeVector) -> bool:
    """|x| ∧ |y| = 0, i.e. the supports do not meet."""
    if x.dim != y.dim:
        raise DimensionMismatchError(f"Dimensions {x.dim} and {y.dim} differ")
    return not (x.support & y.support)


def _check_disjoint_family(xs: Sequence[LatticeVector]) -> None:
    if not xs:
        return
    dim = xs[0].dim
    for i, x in enumerate(xs):
        if x.dim != dim:
            raise DimensionMismatchError(f"Vector {i} has dimension {x.dim}, expected {dim}")
        if x.is_zero():
            raise ZeroVectorError(f"Vector {i} is zero", {"index": i})
        if not is_positive_vector(x):
            raise NotPositiveError(f"Vector {i} is not positive", {"index": i})
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if not are_disjoint(xs[i], xs[j]):
                raise NotDisjointError(
                    f"Vectors {i} and {j} have overlapping supports", {"pair": [i, j]}
                )


def dual_functionals(xs: Sequence[LatticeVector]) -> list[PositiveFunctional]:
    """
    Positive functionals φ_i with φ_i(x_j) = δ_ij for disjoint positive x_j.

    φ_i = e_k* / x_i[k] where k is the smallest index attaining the maximum
    entry of x_i, so each φ_i is supported inside support(x_i).
    """
    _check_disjoint_family(xs)
    functionals: list[PositiveFunctional] = []
    for x in xs:
        top = max(x.entries)
        k = x.entries.index(top)
        coeffs = [_ZERO] * x.dim
        coeffs[k] = 1 / top
        functionals.append(PositiveFunctional(tuple(coeffs)))
    return functionals


def rank_one(y: LatticeVector, phi: PositiveFunctional) -> RationalMatrix:
    """The operator y ⊗ φ : v ↦ φ(v) y, as the outer product y φᵀ."""
    if y.dim != phi.dim:
        raise DimensionMismatchError(f"Dimensions {y.dim} and {phi.dim} differ")
    n = y.dim
    return RationalMatrix(
        n, n, tuple(a * b for a in y.entries for b in phi.coefficients)
    )


def interpolate_positive(
    xs: Sequence[LatticeVector], ys: Sequence[LatticeVector]
) -> RationalMatrix:
    """Positive T with T x_j = y_j, built as T = Σ y_i ⊗ φ_i."""
    if not xs or len(xs) != len(ys):
        raise DimensionMismatchError(
            f"Need equally many nonempty source and target vectors, got {len(xs)} and {len(ys)}"
        )
    for i, y in enumerate(ys):
        if not is_positive_vector(y):
            raise NotPositiveError(f"Target vector {i} is not positive", {"index": i})
    phis = dual_functionals(xs)
    total = RationalMatrix.zero(xs[0].dim)
    for y, phi in zip(ys, phis):
        total = total + rank_one(y, phi)
    return total


@dataclass(frozen=True)
class InterpolationCheck:
    """Outcome of the square interpolation problem T x_j = y_j."""

    interpolant: RationalMatrix | None
    positive: bool


def unique_interpolant(
    xs: Sequence[LatticeVector], ys: Sequence[LatticeVector]
) -> InterpolationCheck:
    """
    Solve T X = Y for n linearly independent x_j in R^n.

    The solution is unique, so a positive interpolant exists iff this one is
    entrywise nonnegative.
    """
    n = xs[0].dim if xs else 0
    if len(xs) != n or len(ys) != n:
        raise DimensionMismatchError(f"Need exactly {n} source and target vectors in R^{n}")
    x_mat = RationalMatrix(n, n, tuple(xs[j].entries[i] for i in range(n) for j in range(n)))
    y_mat = RationalMatrix(n, n, tuple(ys[j].entries[i] for i in range(n) for j in range(n)))
    x_inv = inverse(x_mat)
    if x_inv is None:
        return InterpolationCheck(interpolant=None, positive=False)
    t = y_mat @ x_inv
    return InterpolationCheck(interpolant=t, positive=is_positive_operator(t))
