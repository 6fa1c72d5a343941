"""Tests for exact rational matrix arithmetic and elimination."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_core.exceptions import DimensionMismatchError, NotSquareError
from lattice_core.polynomial import Polynomial
from lattice_core.ratmat import (
    RationalMatrix,
    VectorSpan,
    char_poly,
    commutator,
    in_spectrum,
    intersect_spans,
    inverse,
    is_invariant_subspace,
    is_nilpotent,
    is_strictly_lower_triangular,
    is_upper_triangular,
    kernel_basis,
    mat_arith,
    power,
    rank,
    span_contains,
    trace,
    trace_product,
    vector,
)

EX1_A = RationalMatrix.from_rows([[0, 1, 0], [-1, 1, 0], [1, 0, 0]])
EX1_B = RationalMatrix.from_rows([[0, 0, 0], [0, 1, 1], [0, 0, 0]])
EX2_A = RationalMatrix.from_rows([[0, 0, 0], [0, 1, 0], [0, 1, 0]])
EX2_B = RationalMatrix.from_rows([[0, -1, 1], [1, 1, 0], [0, 0, 0]])
CYCLIC = RationalMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def square_matrices(n: int, bound: int = 4) -> st.SearchStrategy[RationalMatrix]:
    return st.lists(st.integers(-bound, bound), min_size=n * n, max_size=n * n).map(
        lambda xs: RationalMatrix.from_flat(n, n, xs)
    )


def schoolbook(a: RationalMatrix, b: RationalMatrix) -> list[list[Fraction]]:
    n = a.rows
    return [
        [sum((a[i, k] * b[k, j] for k in range(n)), Fraction(0)) for j in range(n)]
        for i in range(n)
    ]


def cofactor_det(rows: list[list[Fraction]]) -> Fraction:
    if len(rows) == 1:
        return rows[0][0]
    total = Fraction(0)
    for j, x in enumerate(rows[0]):
        if x:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * x * cofactor_det(minor)
    return total


class TestConstruction:
    """Tests for RationalMatrix construction and access."""

    def test_from_rows_parses_strings(self):
        """Test that 'p/q' strings become exact fractions."""
        m = RationalMatrix.from_rows([["1/2", "3"], [0, "-2/4"]])
        assert m[0, 0] == Fraction(1, 2)
        assert m[1, 1] == Fraction(-1, 2)

    def test_ragged_rows_rejected(self):
        """Test that rows of different length are rejected."""
        with pytest.raises(DimensionMismatchError):
            RationalMatrix.from_rows([[1, 2], [3]])

    def test_empty_rejected(self):
        """Test that a 0x0 matrix cannot be built."""
        with pytest.raises(DimensionMismatchError):
            RationalMatrix(0, 0, ())

    def test_row_col_transpose(self):
        """Test row, column and transpose access."""
        m = RationalMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert m.row(1) == vector([4, 5, 6])
        assert m.col(2) == vector([3, 6])
        assert m.transpose().shape == (3, 2)
        assert m.transpose()[2, 1] == 6


class TestArithmetic:
    """Tests for mat_arith and the operators behind it."""

    def test_identity_product(self):
        """Test I2 · I2 = I2."""
        i2 = RationalMatrix.identity(2)
        assert mat_arith(i2, i2, "mul") == i2

    def test_example_one_product(self):
        """Test AB for the first 3x3 example pair."""
        assert EX1_A @ EX1_B == RationalMatrix.from_rows([[0, 1, 1], [0, 1, 1], [0, 0, 0]])
        assert EX1_B @ EX1_A == RationalMatrix.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 0]])
        assert commutator(EX1_A, EX1_B) == RationalMatrix.from_rows(
            [[0, 1, 1], [0, 0, 1], [0, 0, 0]]
        )

    def test_add_sub_scale(self):
        """Test add, sub and scalar-mul dispatch."""
        a = RationalMatrix.from_rows([[1, 2], [3, 4]])
        b = RationalMatrix.identity(2)
        assert mat_arith(a, b, "add") == RationalMatrix.from_rows([[2, 2], [3, 5]])
        assert mat_arith(a, b, "sub") == RationalMatrix.from_rows([[0, 2], [3, 3]])
        assert mat_arith(a, Fraction(1, 2), "scalar-mul") == RationalMatrix.from_rows(
            [["1/2", 1], ["3/2", 2]]
        )
        assert 2 * b == b + b

    def test_shape_mismatch(self):
        """Test that incompatible shapes raise DimensionMismatchError."""
        with pytest.raises(DimensionMismatchError):
            RationalMatrix.identity(2) + RationalMatrix.identity(3)
        with pytest.raises(DimensionMismatchError):
            RationalMatrix.identity(2) @ RationalMatrix.zero(3)
        with pytest.raises(DimensionMismatchError):
            mat_arith(RationalMatrix.identity(2), RationalMatrix.identity(2), "scalar-mul")

    @settings(max_examples=50, deadline=None)
    @given(square_matrices(4), square_matrices(4))
    def test_product_matches_schoolbook(self, a, b):
        """Test the sparse-skipping product against the schoolbook formula."""
        assert (a @ b).to_rows() == schoolbook(a, b)

    @settings(max_examples=50, deadline=None)
    @given(square_matrices(3), square_matrices(3))
    def test_trace_product(self, a, b):
        """Test trace(ab) without forming ab."""
        assert trace_product(a, b) == trace(a @ b)

    def test_trace_requires_square(self):
        """Test that trace of a non-square matrix raises."""
        with pytest.raises(NotSquareError):
            trace(RationalMatrix.zero(2, 3))

    def test_power(self):
        """Test repeated squaring on a Jordan block."""
        n = RationalMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert power(n, 0) == RationalMatrix.identity(3)
        assert power(n, 2) == n @ n
        assert power(n, 3).is_zero()


class TestSpectral:
    """Tests for char_poly, nilpotency and spectrum membership."""

    def test_char_poly_identity(self):
        """Test char_poly(I2) = λ² - 2λ + 1."""
        assert char_poly(RationalMatrix.identity(2)) == Polynomial((1, -2, 1))

    def test_coefficients_ascending(self):
        """Test that coefficients run from the constant term up to the leading one."""
        p = char_poly(RationalMatrix.from_rows([[2, 0], [0, 3]]))
        assert p.coefficients == (6, -5, 1)
        assert p(0) == 6 and p.degree == 2
        assert Polynomial.monomial(2, 3).coefficients == (0, 0, 3)
        assert Polynomial((1, 2, 0, 0)).coefficients == (1, 2)

    def test_char_poly_example_one_has_root_one(self):
        """Test that A(AB - BA) has eigenvalue 1."""
        m = EX1_A @ commutator(EX1_A, EX1_B)
        assert char_poly(m)(1) == 0

    @settings(max_examples=30, deadline=None)
    @given(square_matrices(3, bound=5), st.lists(st.integers(-6, 6), min_size=5, max_size=5))
    def test_char_poly_matches_cofactor_determinant(self, m, points):
        """Test char_poly against det(tI - m) by cofactor expansion."""
        p = char_poly(m)
        for t in points:
            shifted = RationalMatrix.identity(3).scale(t) - m
            assert p(t) == cofactor_det(shifted.to_rows())

    def test_nilpotent_strictly_upper(self):
        """Test that a strictly upper triangular matrix is nilpotent."""
        m = RationalMatrix.from_rows([[0, 5, 7], [0, 0, -3], [0, 0, 0]])
        assert is_nilpotent(m)
        assert is_upper_triangular(m)

    def test_example_one_product_not_nilpotent(self):
        """Test that A(AB - BA) is not nilpotent."""
        assert not is_nilpotent(EX1_A @ commutator(EX1_A, EX1_B))

    def test_in_spectrum(self):
        """Test spectrum membership on fixed matrices."""
        assert in_spectrum(commutator(EX2_A, EX2_B) @ EX2_B, 1)
        assert in_spectrum(RationalMatrix.zero(3), 0)
        assert not in_spectrum(RationalMatrix.identity(3), 2)

    def test_strictly_lower(self):
        """Test the strictly lower triangular predicate."""
        assert is_strictly_lower_triangular(RationalMatrix.from_rows([[0, 0], [1, 0]]))
        assert not is_strictly_lower_triangular(RationalMatrix.identity(2))


class TestElimination:
    """Tests for rank, kernel, inverse and spans."""

    def test_kernel_of_zero(self):
        """Test that the zero matrix has the full standard basis as kernel."""
        assert kernel_basis(RationalMatrix.zero(2)) == [vector([1, 0]), vector([0, 1])]

    def test_kernel_of_identity(self):
        """Test that I3 has a trivial kernel."""
        assert kernel_basis(RationalMatrix.identity(3)) == []

    def test_kernel_of_ones(self):
        """Test that [[1,1],[1,1]] has kernel span{(1,-1)}."""
        basis = kernel_basis(RationalMatrix.from_rows([[1, 1], [1, 1]]))
        assert len(basis) == 1
        assert span_contains(basis, [1, -1])

    def test_rank(self):
        """Test rank on a singular matrix."""
        assert rank(RationalMatrix.from_rows([[1, 2], [2, 4]])) == 1
        assert rank(RationalMatrix.identity(4)) == 4

    def test_inverse(self):
        """Test exact inversion and singular detection."""
        m = RationalMatrix.from_rows([[1, 1], [0, 1]])
        assert inverse(m) == RationalMatrix.from_rows([[1, -1], [0, 1]])
        assert inverse(RationalMatrix.from_rows([[1, 2], [2, 4]])) is None

    @settings(max_examples=30, deadline=None)
    @given(square_matrices(3))
    def test_inverse_roundtrip(self, m):
        """Test m · m⁻¹ = I whenever m is invertible."""
        inv = inverse(m)
        if inv is None:
            assert rank(m) < 3
        else:
            assert m @ inv == RationalMatrix.identity(3)

    def test_vector_span(self):
        """Test incremental span growth and membership."""
        span = VectorSpan(3)
        assert span.add(vector([1, 1, 0]))
        assert span.add(vector([0, 1, 1]))
        assert not span.add(vector([1, 2, 1]))
        assert span.dimension == 2
        assert span.contains(vector([1, 0, -1]))
        assert not span.contains(vector([0, 0, 1]))

    def test_intersect_spans(self):
        """Test span{e0, e1} ∩ span{e1, e2} = span{e1}."""
        common = intersect_spans(
            [vector([1, 0, 0]), vector([0, 1, 0])], [vector([0, 1, 0]), vector([0, 0, 1])]
        )
        assert len(common) == 1
        assert span_contains(common, [0, 1, 0])


class TestNonIdealInvariantSubspace:
    """The cyclic permutation has a 2-dimensional invariant subspace that is not an ideal."""

    def test_subspace_is_invariant(self):
        """Test that span{(2,-1,-1), (0,1,-1)} is invariant."""
        assert is_invariant_subspace(CYCLIC, [[2, -1, -1], [0, 1, -1]])

    def test_eigenvector_outside_subspace(self):
        """Test that the fixed vector (1,1,1) is not in the subspace."""
        assert CYCLIC.apply([1, 1, 1]) == vector([1, 1, 1])
        assert not span_contains([[2, -1, -1], [0, 1, -1]], [1, 1, 1])

    def test_coordinate_plane_not_invariant(self):
        """Test that no coordinate plane is invariant under the cycle."""
        assert not is_invariant_subspace(CYCLIC, [[1, 0, 0], [0, 1, 0]])
