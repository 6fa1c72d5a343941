"""
Exact invariant-chain checks for the discretized operators.

The float matrices are copied to rationals entry by entry before any
structural question is asked, so these checks carry no rounding.
"""

import logging
import math
from collections.abc import Iterable, Sequence
from typing import Literal

from lattice_core.exceptions import TooLargeError
from lattice_core.ratmat import RationalMatrix, rank
from lattice_core.reducibility import MAX_ENUMERATION, invariant_ideals, is_invariant_ideal

from .operators import (
    WeightSequence,
    donoghue_rational,
    multiplication_matrix,
    to_rational,
    volterra_matrix,
)

logger = logging.getLogger(__name__)

# a strictly increasing finite chain always has J_ != J, so only the
# onto case and the codimension-one shift case can occur
ChainCase = Literal["a", "c"]


def prefix_sets(k: int) -> list[frozenset[int]]:
    """{0..m} for m = 0..k-1, the proper prefix ideals of R^(k+1)."""
    return [frozenset(range(m + 1)) for m in range(k)]


def donoghue_chain_check(k: int, w: WeightSequence) -> bool:
    """
    True iff the invariant coordinate ideals of the truncation are exactly
    the prefix sets.
    """
    if k > MAX_ENUMERATION:
        raise TooLargeError(
            f"Donoghue chain enumeration is limited to k <= {MAX_ENUMERATION}, got {k}",
            {"k": k},
        )
    s = donoghue_rational(k, w)
    found = set(invariant_ideals([s], limit=MAX_ENUMERATION + 1))
    expected = set(prefix_sets(k))
    if found != expected:
        logger.warning(
            "Donoghue truncation k=%s has unexpected invariant ideals: %s",
            k,
            sorted(sorted(x) for x in found ^ expected),
        )
    return found == expected


def _image_rank(m: RationalMatrix, subset: Iterable[int]) -> int:
    columns = sorted(subset)
    if not columns:
        return 0
    block = RationalMatrix.from_rows([[m[i, j] for j in columns] for i in range(m.rows)])
    return rank(block)


def donoghue_shift_check(k: int, w: WeightSequence) -> bool:
    """rank S = k and S maps span{e_0..e_m} onto span{e_0..e_(m-1)} for 1 <= m <= k."""
    s = donoghue_rational(k, w)
    if rank(s) != k:
        return False
    for m in range(1, k + 1):
        prefix = range(m + 1)
        if not is_invariant_ideal([s], range(m)):
            return False
        # image lies in the smaller prefix and fills it
        if any(s[i, j] != 0 for j in prefix for i in range(m, k + 1)):
            return False
        if _image_rank(s, prefix) != m:
            return False
    return True


def invariant_chain_cases(
    m: RationalMatrix, chain: Sequence[frozenset[int]]
) -> list[ChainCase | None]:
    """
    Classify each member of a strictly increasing chain of invariant
    coordinate ideals.

    For a member J with predecessor J_ (the empty set for the first member):
    'a' when m maps J onto itself, 'c' when the image is exactly J_ and J_
    has codimension one in J. None when neither applies.

    Raises:
        ValueError: A member is not invariant or does not strictly contain
            its predecessor
    """
    cases: list[ChainCase | None] = []
    previous: frozenset[int] = frozenset()
    for member in chain:
        if not is_invariant_ideal([m], member):
            raise ValueError(f"Chain member {sorted(member)} is not invariant")
        if not previous < member:
            raise ValueError(f"Chain member {sorted(member)} does not extend its predecessor")
        image_rank = _image_rank(m, member)
        inside_previous = all(
            m[i, j] == 0 for j in member for i in range(m.rows) if i not in previous
        )
        case: ChainCase | None = None
        if image_rank == len(member):
            case = "a"
        elif (
            inside_previous
            and image_rank == len(previous)
            and len(member) - len(previous) == 1
        ):
            case = "c"
        cases.append(case)
        previous = member
    return cases


def donoghue_chain_cases(k: int, w: WeightSequence) -> list[ChainCase | None]:
    """Cases for every prefix ideal {0..m}, m = 0..k, including the whole space."""
    s = donoghue_rational(k, w)
    return invariant_chain_cases(s, [*prefix_sets(k), frozenset(range(k + 1))])


def trailing_set(n: int, t: float) -> frozenset[int]:
    """Indices i >= ceil(t n): the grid shadow of L^2[t, 1]."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    return frozenset(range(math.ceil(t * n), n))


def volterra_chain_check(n: int, ts: Iterable[float]) -> bool:
    """Trailing-coordinate ideals are invariant under both V_n and M_n, exactly."""
    family = [to_rational(volterra_matrix(n)), to_rational(multiplication_matrix(n))]
    for t in ts:
        subset = trailing_set(n, t)
        if not is_invariant_ideal(family, subset):
            logger.warning("Trailing set for t=%s is not invariant at n=%s", t, n)
            return False
    return True
