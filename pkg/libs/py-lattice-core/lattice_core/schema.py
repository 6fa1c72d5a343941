"""JSON models for matrices, vectors, pairs and algebra dumps."""

from fractions import Fraction
from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator

from .algebra import MatrixAlgebra, generate_algebra
from .exceptions import InvalidConfigError
from .order import LatticeVector
from .ratmat import RationalMatrix, VectorSpan


def _parse_rational(value: Any) -> str:
    """Accept "p/q" strings or integers; return the canonical lowest-terms string."""
    if isinstance(value, bool):
        raise ValueError(f"Invalid rational entry: {value!r}")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        try:
            return str(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Invalid rational entry: {value!r}") from e
    raise ValueError(f"Invalid rational entry: {value!r} (use integers or 'p/q' strings)")


class MatrixModel(BaseModel):
    """
    Matrix JSON format used repo-wide.

    {"rows": n, "cols": n, "entries": [["p/q", ...], ...]}
    """

    rows: int = Field(..., ge=1)
    cols: int = Field(..., ge=1)
    entries: list[list[str]]

    @field_validator("entries", mode="before")
    @classmethod
    def parse_entries(cls, v: Any) -> list[list[str]]:
        if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
            raise ValueError("entries must be a list of rows")
        return [[_parse_rational(x) for x in row] for row in v]

    @model_validator(mode="after")
    def check_shape(self) -> "MatrixModel":
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} matrix")
        return self

    @classmethod
    def from_matrix(cls, m: RationalMatrix) -> "MatrixModel":
        return cls(rows=m.rows, cols=m.cols, entries=[[str(x) for x in r] for r in m.to_rows()])

    def to_matrix(self) -> RationalMatrix:
        return RationalMatrix.from_rows(self.entries)


class VectorModel(BaseModel):
    """Vector JSON format: {"entries": ["p/q", ...]}."""

    entries: list[str] = Field(..., min_length=1)

    @field_validator("entries", mode="before")
    @classmethod
    def parse_entries(cls, v: Any) -> list[str]:
        if not isinstance(v, list):
            raise ValueError("entries must be a list")
        return [_parse_rational(x) for x in v]

    @classmethod
    def from_vector(cls, x: LatticeVector) -> "VectorModel":
        return cls(entries=[str(v) for v in x.entries])

    def to_vector(self) -> LatticeVector:
        return LatticeVector.of(self.entries)


class PairModel(BaseModel):
    """A pair (A, B) as stored in pair files and corpus lines."""

    a: MatrixModel
    b: MatrixModel

    @model_validator(mode="after")
    def check_same_shape(self) -> "PairModel":
        if (self.a.rows, self.a.cols) != (self.b.rows, self.b.cols):
            raise ValueError("a and b must have the same shape")
        return self

    def to_pair(self) -> tuple[RationalMatrix, RationalMatrix]:
        return self.a.to_matrix(), self.b.to_matrix()


class AlgebraDump(BaseModel):
    """
    Persisted algebra: basis matrices plus generators.

    `generator_indices[i]` is the position of generator i in the basis, or
    None when the generator was linearly dependent on earlier words. A dump
    with only generators is completed by regenerating the closure.
    """

    generators: list[MatrixModel] = Field(..., min_length=1)
    basis: list[MatrixModel] = Field(default_factory=list)
    generator_indices: list[int | None] = Field(default_factory=list)
    unitized: bool = True

    @classmethod
    def from_algebra(cls, alg: MatrixAlgebra) -> "AlgebraDump":
        indices: list[int | None] = []
        for g in alg.generators:
            indices.append(next((i for i, b in enumerate(alg.basis) if b == g), None))
        return cls(
            generators=[MatrixModel.from_matrix(g) for g in alg.generators],
            basis=[MatrixModel.from_matrix(b) for b in alg.basis],
            generator_indices=indices,
            unitized=alg.unitized,
        )

    def to_algebra(self) -> MatrixAlgebra:
        """
        Rebuild the algebra; a stored basis must span exactly the closure of
        the generators (with I_n when unitized).

        Raises:
            InvalidConfigError: The basis is dependent, has the wrong shape,
                disagrees with `generator_indices` or spans another subspace
        """
        gens = [g.to_matrix() for g in self.generators]
        closure = generate_algebra(gens, unitized=self.unitized)
        if not self.basis:
            return closure

        n = closure.n
        basis = tuple(b.to_matrix() for b in self.basis)
        span = VectorSpan(n * n)
        for i, b in enumerate(basis):
            if b.shape != (n, n):
                raise InvalidConfigError(
                    f"Basis element {i} has shape {b.shape}, expected {(n, n)}", {"index": i}
                )
            if not span.add(b.entries):
                raise InvalidConfigError(
                    f"Basis element {i} is linearly dependent on earlier elements", {"index": i}
                )
        for i, index in enumerate(self.generator_indices):
            if i >= len(gens) or (
                index is not None and (not 0 <= index < len(basis) or basis[index] != gens[i])
            ):
                raise InvalidConfigError(
                    f"generator_indices[{i}] does not point at generator {i}", {"index": i}
                )
        if span.dimension != closure.dimension or not all(
            span.contains(w.entries) for w in closure.basis
        ):
            raise InvalidConfigError(
                "Basis does not span the algebra generated by the generators",
                {"basis_dimension": span.dimension, "closure_dimension": closure.dimension},
            )
        return MatrixAlgebra(n=n, generators=tuple(gens), basis=basis, unitized=self.unitized)
