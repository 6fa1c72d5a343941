"""
Finite-dimensional matrix algebras and their Jacobson radical.

The algebra generated by a family of n×n rational matrices is the span of
all words in the generators (plus I_n when unitized). Radical membership is
decided by the trace form: over a field of characteristic zero, x in a
unital subalgebra of M_n lies in the radical iff trace(x b) = 0 for every b
in the algebra. The nil-ideal computation is kept as an independent oracle.
"""

import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Literal

from .exceptions import (
    ClosureOverflowError,
    DimensionMismatchError,
    NotInAlgebraError,
    NotUnitizedError,
)
from .ratmat import (
    RationalMatrix,
    VectorSpan,
    commutator,
    intersect_spans,
    kernel_basis,
    power,
    rank,
    trace_product,
)

logger = logging.getLogger(__name__)

WordOrder = Literal["bfs", "dfs"]


@dataclass(frozen=True)
class MatrixAlgebra:
    """
    Span- and multiplication-closed subalgebra of M_n(Q).

    Attributes:
        n: Ambient matrix size
        generators: Generating matrices as supplied
        basis: Linearly independent words spanning the algebra
        unitized: Whether I_n was adjoined
    """

    n: int
    generators: tuple[RationalMatrix, ...]
    basis: tuple[RationalMatrix, ...]
    unitized: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def span(self) -> VectorSpan:
        span = VectorSpan(self.n * self.n)
        span.extend(b.entries for b in self.basis)
        return span

    def contains(self, x: RationalMatrix) -> bool:
        if x.shape != (self.n, self.n):
            raise DimensionMismatchError(
                f"Element of shape {x.shape} does not fit an algebra in M_{self.n}"
            )
        return self.span.contains(x.entries)

    def gram_matrix(self) -> RationalMatrix:
        """Trace form G[i][j] = trace(b_i b_j) on the basis."""
        d = self.dimension
        values: list[Fraction] = [Fraction(0)] * (d * d)
        for i in range(d):
            for j in range(i, d):
                t = trace_product(self.basis[i], self.basis[j])
                values[i * d + j] = t
                values[j * d + i] = t
        return RationalMatrix(d, d, tuple(values))

    @cached_property
    def radical(self) -> tuple[RationalMatrix, ...]:
        return tuple(radical_basis(self))

    @cached_property
    def radical_span(self) -> VectorSpan:
        span = VectorSpan(self.n * self.n)
        span.extend(r.entries for r in self.radical)
        return span


@dataclass(frozen=True)
class RadicalCertificate:
    """
    Verdict of the trace-form radical test.

    When `member` is False, `witness` is a basis element b with
    trace(x b) = `witness_trace` != 0, so b x is not nilpotent.
    """

    member: bool
    gram_rank: int
    witness: RationalMatrix | None = None
    witness_trace: Fraction | None = None


def _check_family(gens: Sequence[RationalMatrix]) -> int:
    if not gens:
        raise DimensionMismatchError("At least one generator is required")
    n = gens[0].rows
    for i, g in enumerate(gens):
        if g.shape != (n, n):
            raise DimensionMismatchError(
                f"Generator {i} has shape {g.shape}, expected {(n, n)}", {"index": i}
            )
    return n


def generate_algebra(
    gens: Sequence[RationalMatrix],
    unitized: bool = True,
    order: WordOrder = "bfs",
) -> MatrixAlgebra:
    """
    Span closure of all words in `gens`.

    Words are extended on the right by each generator; closure is reached when
    no extension adds a new direction. The basis consists of words, in
    discovery order, with the generators (and I_n) first.
    """
    n = _check_family(gens)
    span = VectorSpan(n * n)
    basis: list[RationalMatrix] = []
    frontier: deque[RationalMatrix] = deque()

    seeds = ([RationalMatrix.identity(n)] if unitized else []) + list(gens)
    for s in seeds:
        if span.add(s.entries):
            basis.append(s)
            frontier.append(s)

    while frontier:
        current = frontier.popleft() if order == "bfs" else frontier.pop()
        for g in gens:
            word = current @ g
            if span.add(word.entries):
                basis.append(word)
                frontier.append(word)
                if len(basis) > n * n:
                    raise ClosureOverflowError(
                        f"Closure exceeded n^2 = {n * n} independent matrices",
                        {"n": n},
                        dimension=len(basis),
                    )

    logger.debug(
        "Generated algebra: n=%s generators=%s unitized=%s dim=%s",
        n,
        len(gens),
        unitized,
        len(basis),
    )
    return MatrixAlgebra(n=n, generators=tuple(gens), basis=tuple(basis), unitized=unitized)


def _require_element(alg: MatrixAlgebra, x: RationalMatrix) -> None:
    if not alg.contains(x):
        raise NotInAlgebraError("Element is not in the span of the algebra basis")


def radical_membership(alg: MatrixAlgebra, x: RationalMatrix) -> RadicalCertificate:
    """Decide x ∈ rad(alg) by the trace form on the unitized algebra."""
    if not alg.unitized:
        raise NotUnitizedError("Radical membership is decided in the unitized algebra")
    _require_element(alg, x)

    gram_rank = rank(alg.gram_matrix())
    for b in alg.basis:
        t = trace_product(x, b)
        if t != 0:
            return RadicalCertificate(member=False, gram_rank=gram_rank, witness=b, witness_trace=t)
    return RadicalCertificate(member=True, gram_rank=gram_rank)


def _closure_matrices(span: VectorSpan, n: int) -> list[RationalMatrix]:
    return [RationalMatrix(n, n, v) for v in span.vectors]


def two_sided_ideal(alg: MatrixAlgebra, x: RationalMatrix) -> list[RationalMatrix]:
    """Basis of the ideal generated by x in the unitization of alg."""
    n = alg.n
    span = VectorSpan(n * n)
    if not span.add(x.entries):
        return []
    multipliers = list(alg.basis)
    if not alg.unitized:
        multipliers.append(RationalMatrix.identity(n))
    elements = [x]
    queue = [x]
    while queue:
        j = queue.pop()
        for b in multipliers:
            for product in (b @ j, j @ b):
                if span.add(product.entries):
                    elements.append(product)
                    queue.append(product)
    return elements


def radical_membership_oracle(alg: MatrixAlgebra, x: RationalMatrix) -> bool:
    """
    Decide x ∈ rad(alg) by checking that the ideal J generated by x is nil.

    J is nil iff it is nilpotent; the powers J ⊇ J² ⊇ ... either reach 0 or
    stabilize at a nonzero subspace within dim J + 1 steps.
    """
    _require_element(alg, x)
    ideal = two_sided_ideal(alg, x)
    if not ideal:
        return True
    n = alg.n
    current = ideal
    for _ in range(len(ideal) + 1):
        nxt = VectorSpan(n * n)
        for p in current:
            for q in ideal:
                nxt.add((p @ q).entries)
        if nxt.dimension == 0:
            return True
        if nxt.dimension == len(current):
            return False
        current = _closure_matrices(nxt, n)
    return False


def radical_basis(alg: MatrixAlgebra, nonunitized: bool = False) -> list[RationalMatrix]:
    """
    Basis of {x ∈ alg : trace(x b) = 0 for all b}, the nullspace of the Gram matrix.

    With `nonunitized`, the result is intersected with the span of the
    algebra generated without I_n.
    """
    if not alg.unitized:
        raise NotUnitizedError("The radical basis is computed on the unitized algebra")
    n = alg.n
    rad: list[RationalMatrix] = []
    for coeffs in kernel_basis(alg.gram_matrix()):
        total = RationalMatrix.zero(n)
        for c, b in zip(coeffs, alg.basis):
            if c:
                total = total + b.scale(c)
        rad.append(total)

    if nonunitized and rad:
        plain = generate_algebra(alg.generators, unitized=False)
        common = intersect_spans([r.entries for r in rad], [b.entries for b in plain.basis])
        rad = [RationalMatrix(n, n, v) for v in common]
    return rad


def in_radical(alg: MatrixAlgebra, x: RationalMatrix) -> bool:
    """Membership in span(radical_basis(alg)); x must lie in the algebra."""
    _require_element(alg, x)
    return alg.radical_span.contains(x.entries)


def commutator_power_in_radical(alg: MatrixAlgebra, c: RationalMatrix) -> int | None:
    """Smallest k <= n with c^k in the radical, or None."""
    _require_element(alg, c)
    for k in range(1, alg.n + 1):
        if alg.radical_span.contains(power(c, k).entries):
            return k
    return None


def is_simultaneously_triangularizable(
    a: RationalMatrix,
    b: RationalMatrix,
    check_all_pairs: bool = False,
) -> bool:
    """
    McCoy: a and b are simultaneously triangularizable over the algebraic
    closure iff the unitized algebra they generate is commutative modulo its
    radical.

    The quotient is generated by the images of a and b, so it suffices that
    ab - ba lies in the radical; `check_all_pairs` tests every pair of basis
    elements instead.
    """
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Shapes {a.shape} and {b.shape} differ")
    alg = generate_algebra([a, b], unitized=True)
    if not check_all_pairs:
        return alg.radical_span.contains(commutator(a, b).entries)
    basis = alg.basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not alg.radical_span.contains(commutator(basis[i], basis[j]).entries):
                return False
    return True
