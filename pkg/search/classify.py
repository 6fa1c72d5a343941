"""Classification of matrix pairs against the positive-commutator hypothesis."""

import logging

from pydantic import BaseModel

from lattice_core.algebra import (
    commutator_power_in_radical,
    generate_algebra,
    is_simultaneously_triangularizable,
    radical_membership,
    radical_membership_oracle,
)
from lattice_core.exceptions import DimensionMismatchError, InconsistentResultError
from lattice_core.order import is_positive_operator, leq_entrywise
from lattice_core.polynomial import Polynomial
from lattice_core.ratmat import RationalMatrix, char_poly, is_nilpotent
from lattice_core.reducibility import complete_decomposition
from lattice_core.schema import MatrixModel

logger = logging.getLogger(__name__)


def positive_commutator_holds(a: RationalMatrix, b: RationalMatrix) -> bool:
    """AB >= BA >= 0 entrywise."""
    ba = b @ a
    return is_positive_operator(ba) and leq_entrywise(ba, a @ b)


def checked_nilpotent(m: RationalMatrix) -> bool:
    """Nilpotency by repeated squaring, cross-checked against char_poly = λ^n."""
    by_powers = is_nilpotent(m)
    by_poly = char_poly(m) == Polynomial.monomial(m.rows)
    if by_powers != by_poly:
        raise InconsistentResultError(
            "Nilpotency test disagrees with the characteristic polynomial",
            {"matrix": MatrixModel.from_matrix(m).model_dump(), "powers": by_powers},
        )
    return by_powers


class PairReport(BaseModel):
    """Flags computed for one pair (A, B); field order is the serialization order."""

    a: MatrixModel
    b: MatrixModel
    a_positive: bool
    b_positive: bool
    ab_geq_ba: bool
    ba_geq_ab: bool
    ba_geq_zero: bool
    commutator_zero: bool
    commutator_nilpotent: bool
    radical_member: bool
    oracle_member: bool
    a_commutator_nilpotent: bool
    completely_decomposable: bool
    commutator_decomposable: bool
    triangularizable: bool
    algebra_dim: int
    commutator_power_in_radical: int | None

    @property
    def hypothesis(self) -> bool:
        return self.ab_geq_ba and self.ba_geq_zero

    @property
    def positive_semicommuting(self) -> bool:
        """A, B >= 0 with AB >= BA or BA >= AB."""
        return self.a_positive and self.b_positive and (self.ab_geq_ba or self.ba_geq_ab)

    @property
    def dim(self) -> int:
        return self.a.rows

    def flags(self) -> dict[str, object]:
        return self.model_dump(exclude={"a", "b"})


def classify_pair(a: RationalMatrix, b: RationalMatrix) -> PairReport:
    if not a.is_square or a.shape != b.shape:
        raise DimensionMismatchError(
            f"Pair must be square of the same size, got {a.shape} and {b.shape}"
        )
    ab = a @ b
    ba = b @ a
    c = ab - ba
    alg = generate_algebra([a, b], unitized=True)
    certificate = radical_membership(alg, c)

    return PairReport(
        a=MatrixModel.from_matrix(a),
        b=MatrixModel.from_matrix(b),
        a_positive=is_positive_operator(a),
        b_positive=is_positive_operator(b),
        ab_geq_ba=leq_entrywise(ba, ab),
        ba_geq_ab=leq_entrywise(ab, ba),
        ba_geq_zero=is_positive_operator(ba),
        commutator_zero=c.is_zero(),
        commutator_nilpotent=checked_nilpotent(c),
        radical_member=certificate.member,
        oracle_member=radical_membership_oracle(alg, c),
        a_commutator_nilpotent=checked_nilpotent(a @ c),
        completely_decomposable=complete_decomposition([a, b]) is not None,
        commutator_decomposable=complete_decomposition([c]) is not None,
        triangularizable=is_simultaneously_triangularizable(a, b),
        algebra_dim=alg.dimension,
        commutator_power_in_radical=commutator_power_in_radical(alg, c),
    )
