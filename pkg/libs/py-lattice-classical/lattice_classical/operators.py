"""Discretized Volterra, multiplication and Donoghue operators."""

from fractions import Fraction

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, Field, field_validator

from lattice_core.exceptions import InsufficientWeightsError
from lattice_core.ratmat import RationalMatrix

FloatMatrix = npt.NDArray[np.float64]


class WeightSequence(BaseModel):
    """
    Donoghue weights w_1 >= w_2 >= ... > 0.

    Only a finite prefix is stored; the default dyadic weights 2^-m are
    square-summable and exact in binary64.
    """

    weights: list[float] = Field(..., min_length=1)

    @field_validator("weights")
    @classmethod
    def validate_weights(cls, v: list[float]) -> list[float]:
        for i, w in enumerate(v):
            if not np.isfinite(w) or w <= 0:
                raise ValueError(f"Weight w_{i + 1} = {w} must be finite and strictly positive")
        for i in range(1, len(v)):
            if v[i] > v[i - 1]:
                raise ValueError(f"Weights must be non-increasing: w_{i + 1} > w_{i}")
        return v

    @classmethod
    def dyadic(cls, k: int) -> "WeightSequence":
        return cls(weights=[2.0**-m for m in range(1, k + 1)])


def volterra_matrix(n: int) -> FloatMatrix:
    """
    Left-endpoint rectangle rule for (Vf)(x) = ∫_0^x f(t) dt on n cells.

    V[i][j] = 1/n for j < i: strictly lower triangular, hence nilpotent.
    """
    if n < 1:
        raise ValueError("Grid size must be at least 1")
    return np.tril(np.full((n, n), 1.0 / n), k=-1)


def multiplication_matrix(n: int) -> FloatMatrix:
    """(Mf)(x) = x f(x) sampled at cell midpoints (i + 1/2)/n."""
    if n < 1:
        raise ValueError("Grid size must be at least 1")
    return np.diag((np.arange(n) + 0.5) / n)


def donoghue_matrix(k: int, w: WeightSequence) -> FloatMatrix:
    """
    (k+1)×(k+1) truncation of the weighted backward shift.

    S e_0 = 0 and S e_m = w_m e_{m-1} for 1 <= m <= k.
    """
    if k < 1:
        raise ValueError("Truncation order must be at least 1")
    if len(w.weights) < k:
        raise InsufficientWeightsError(
            f"Need {k} weights, got {len(w.weights)}", {"k": k, "available": len(w.weights)}
        )
    s = np.zeros((k + 1, k + 1))
    for m in range(1, k + 1):
        s[m - 1, m] = w.weights[m - 1]
    return s


def to_rational(m: FloatMatrix) -> RationalMatrix:
    """Exact rational copy of a binary64 matrix (each float converted exactly)."""
    if not np.all(np.isfinite(m)):
        raise ValueError("Matrix has non-finite entries")
    rows, cols = m.shape
    return RationalMatrix(rows, cols, tuple(Fraction(float(x)) for x in m.ravel()))


def donoghue_rational(k: int, w: WeightSequence) -> RationalMatrix:
    return to_rational(donoghue_matrix(k, w))
