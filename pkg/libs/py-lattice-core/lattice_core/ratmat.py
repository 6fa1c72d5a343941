"""
Exact dense rational linear algebra.

All entries are `fractions.Fraction`, so every result is exact. Matrices are
immutable and safe to share between threads and processes.

Usage:
    a = RationalMatrix.from_rows([[0, 1], [1, 0]])
    b = RationalMatrix.identity(2)
    c = a @ b - b @ a
    is_nilpotent(c)
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .exceptions import DimensionMismatchError, NotSquareError
from .polynomial import Polynomial

Vector = tuple[Fraction, ...]
Scalar = Fraction | int

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_fraction(value: Scalar | str | float) -> Fraction:
    """Convert ints, floats and "p/q" strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def vector(values: Iterable[Scalar | str]) -> Vector:
    """Build an exact vector from any iterable of scalars."""
    return tuple(to_fraction(v) for v in values)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix with exact rational entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise DimensionMismatchError(
                f"Matrix must be at least 1x1, got {self.rows}x{self.cols}"
            )
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"Expected {self.rows * self.cols} entries, got {len(self.entries)}",
                {"rows": self.rows, "cols": self.cols},
            )

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar | str]]) -> "RationalMatrix":
        if not rows or not rows[0]:
            raise DimensionMismatchError("Matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatchError("Every row must have the same number of entries")
        return cls(len(rows), width, tuple(to_fraction(x) for r in rows for x in r))

    @classmethod
    def from_flat(cls, rows: int, cols: int, values: Sequence[Scalar]) -> "RationalMatrix":
        return cls(rows, cols, tuple(to_fraction(v) for v in values))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(_ONE if i == j else _ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "RationalMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (_ZERO,) * (rows * cols))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "RationalMatrix":
        """Matrix unit E_ij."""
        entries = [_ZERO] * (n * n)
        entries[i * n + j] = _ONE
        return cls(n, n, tuple(entries))

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j :: self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __str__(self) -> str:
        cells = [[str(x) for x in self.row(i)] for i in range(self.rows)]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check_same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatchError(
                f"Shapes {self.shape} and {other.shape} differ",
                {"left": self.shape, "right": other.shape},
            )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return RationalMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return RationalMatrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, scalar: Scalar) -> "RationalMatrix":
        s = to_fraction(scalar)
        return RationalMatrix(self.rows, self.cols, tuple(s * a for a in self.entries))

    def __rmul__(self, scalar: Scalar) -> "RationalMatrix":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return self.scale(scalar)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.shape} by {other.shape}",
                {"left": self.shape, "right": other.shape},
            )
        n, inner, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out: list[Fraction] = []
        for i in range(n):
            acc = [_ZERO] * p
            base = i * inner
            for k in range(inner):
                aik = a[base + k]
                if not aik:
                    continue
                offset = k * p
                for j in range(p):
                    bkj = b[offset + j]
                    if bkj:
                        acc[j] += aik * bkj
            out.extend(acc)
        return RationalMatrix(n, p, tuple(out))

    def apply(self, v: Sequence[Scalar]) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionMismatchError(
                f"Vector of length {len(v)} does not match {self.cols} columns"
            )
        x = vector(v)
        return tuple(
            sum((a * b for a, b in zip(self.row(i), x) if a and b), _ZERO)
            for i in range(self.rows)
        )


MatOp = Literal["add", "sub", "mul", "scalar-mul"]


def mat_arith(a: RationalMatrix, b: RationalMatrix | Scalar, op: MatOp) -> RationalMatrix:
    """Exact matrix arithmetic dispatch; `b` is a scalar for "scalar-mul"."""
    if op == "scalar-mul":
        if isinstance(b, RationalMatrix):
            raise DimensionMismatchError("scalar-mul expects a scalar right operand")
        return a.scale(b)
    if not isinstance(b, RationalMatrix):
        raise DimensionMismatchError(f"{op} expects a matrix right operand")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a @ b
    raise ValueError(f"Unknown matrix operation: {op}")


def commutator(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Return ab - ba."""
    return a @ b - b @ a


def _require_square(m: RationalMatrix) -> int:
    if not m.is_square:
        raise NotSquareError(f"Expected a square matrix, got {m.rows}x{m.cols}")
    return m.rows


def trace(m: RationalMatrix) -> Fraction:
    n = _require_square(m)
    return sum((m.entries[i * n + i] for i in range(n)), _ZERO)


def trace_product(a: RationalMatrix, b: RationalMatrix) -> Fraction:
    """trace(a @ b) without forming the product."""
    if a.cols != b.rows or a.rows != b.cols:
        raise DimensionMismatchError(f"trace(ab) undefined for {a.shape} and {b.shape}")
    total = _ZERO
    n, m = a.rows, a.cols
    for i in range(n):
        for k in range(m):
            x = a.entries[i * m + k]
            if x:
                y = b.entries[k * n + i]
                if y:
                    total += x * y
    return total


def power(m: RationalMatrix, exponent: int) -> RationalMatrix:
    """m**exponent by repeated squaring."""
    n = _require_square(m)
    result = RationalMatrix.identity(n)
    base = m
    e = exponent
    while e > 0:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def char_poly(m: RationalMatrix) -> Polynomial:
    """
    Characteristic polynomial det(λI - m) by Faddeev–LeVerrier.

    Exact over the rationals; division is only by the step index k.
    """
    n = _require_square(m)
    identity = RationalMatrix.identity(n)
    coeffs = [_ZERO] * (n + 1)
    coeffs[n] = _ONE
    aux = RationalMatrix.zero(n)
    for k in range(1, n + 1):
        aux = m @ aux + identity.scale(coeffs[n - k + 1])
        coeffs[n - k] = -trace(m @ aux) / k
    return Polynomial(tuple(coeffs))


def is_nilpotent(m: RationalMatrix) -> bool:
    """True iff m^n = 0, checked by squaring until the exponent reaches n."""
    n = _require_square(m)
    current = m
    exponent = 1
    while exponent < n and not current.is_zero():
        current = current @ current
        exponent *= 2
    return current.is_zero()


def in_spectrum(m: RationalMatrix, value: Scalar) -> bool:
    return char_poly(m)(to_fraction(value)) == 0


def is_upper_triangular(m: RationalMatrix) -> bool:
    return all(m[i, j] == 0 for i in range(m.rows) for j in range(min(i, m.cols)))


def is_strictly_lower_triangular(m: RationalMatrix) -> bool:
    return all(m[i, j] == 0 for i in range(m.rows) for j in range(i, m.cols))


# ----------------------------------------------------------------------
# Elimination
# ----------------------------------------------------------------------


def _rref(rows: list[list[Fraction]], width: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss–Jordan elimination; returns the nonzero reduced rows and pivot columns."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [x - factor * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(m: RationalMatrix) -> int:
    _, pivots = _rref(m.to_rows(), m.cols)
    return len(pivots)


def kernel_basis(m: RationalMatrix) -> list[Vector]:
    """Exact basis of the right nullspace {v : m v = 0}."""
    reduced, pivots = _rref(m.to_rows(), m.cols)
    free = [c for c in range(m.cols) if c not in pivots]
    basis: list[Vector] = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


class VectorSpan:
    """
    Incrementally built exact span of vectors of a fixed length.

    Keeps the independent vectors as added (`vectors`) alongside a reduced
    echelon copy used for membership tests.
    """

    def __init__(self, length: int):
        self.length = length
        self.vectors: list[Vector] = []
        self._echelon: list[tuple[int, list[Fraction]]] = []

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def _reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.length:
            raise DimensionMismatchError(
                f"Vector of length {len(v)} does not fit a span in dimension {self.length}"
            )
        work = list(v)
        for pivot, row in self._echelon:
            factor = work[pivot]
            if factor:
                work = [x - factor * y for x, y in zip(work, row)]
        return work

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self._reduce(v))

    def add(self, v: Sequence[Fraction]) -> bool:
        """Add v; return True if it enlarged the span."""
        work = self._reduce(v)
        pivot = next((i for i, x in enumerate(work) if x), None)
        if pivot is None:
            return False
        inv = 1 / work[pivot]
        self._echelon.append((pivot, [x * inv for x in work]))
        self.vectors.append(tuple(v))
        return True

    def extend(self, vs: Iterable[Sequence[Fraction]]) -> int:
        return sum(1 for v in vs if self.add(v))


def span_contains(vectors: Iterable[Sequence[Scalar]], v: Sequence[Scalar]) -> bool:
    vs = [vector(x) for x in vectors]
    span = VectorSpan(len(v))
    span.extend(vs)
    return span.contains(vector(v))


def intersect_spans(us: Sequence[Vector], ws: Sequence[Vector]) -> list[Vector]:
    """Basis of span(us) ∩ span(ws)."""
    if not us or not ws:
        return []
    length = len(us[0])
    columns = list(us) + [tuple(-x for x in w) for w in ws]
    system = RationalMatrix(
        length, len(columns), tuple(columns[j][i] for i in range(length) for j in range(len(columns)))
    )
    span = VectorSpan(length)
    for coeffs in kernel_basis(system):
        combo = [_ZERO] * length
        for c, u in zip(coeffs[: len(us)], us):
            if c:
                combo = [x + c * y for x, y in zip(combo, u)]
        span.add(combo)
    return span.vectors


def is_invariant_subspace(m: RationalMatrix, vectors: Sequence[Sequence[Scalar]]) -> bool:
    """True iff m maps span(vectors) into itself."""
    span = VectorSpan(m.cols)
    span.extend(vector(v) for v in vectors)
    return all(span.contains(m.apply(v)) for v in span.vectors)


def inverse(m: RationalMatrix) -> RationalMatrix | None:
    """Exact inverse, or None when m is singular."""
    n = _require_square(m)
    augmented = [list(m.row(i)) + [_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    reduced, pivots = _rref(augmented, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return RationalMatrix(n, n, tuple(x for row in reduced[:n] for x in row[n:]))
