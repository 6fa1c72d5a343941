"""
Pair templates built from disjoint positive vectors.

Both templates satisfy AB >= BA >= 0 for every choice of three pairwise
disjoint positive vectors, while one of the two operators always has a
negative entry. With the standard atoms they reduce to the fixed 3x3 pairs
used by `verify-example`.
"""

from collections.abc import Sequence

import numpy as np

from lattice_classical import WeightSequence, donoghue_rational, to_rational, volterra_matrix
from lattice_core.exceptions import DimensionMismatchError, InvalidConfigError
from lattice_core.order import LatticeVector, dual_functionals, rank_one, standard_atoms
from lattice_core.ratmat import RationalMatrix

Pair = tuple[RationalMatrix, RationalMatrix]


def _three(xs: Sequence[LatticeVector]) -> tuple[LatticeVector, LatticeVector, LatticeVector]:
    if len(xs) != 3:
        raise DimensionMismatchError(f"Templates need exactly 3 disjoint vectors, got {len(xs)}")
    return xs[0], xs[1], xs[2]


def example1_pair(xs: Sequence[LatticeVector]) -> Pair:
    """
    A = (x3 - x2) ⊗ φ1 + (x1 + x2) ⊗ φ2,  B = x2 ⊗ (φ2 + φ3).

    AB - BA = x1 ⊗ (φ2 + φ3) + x2 ⊗ φ3, yet A(AB - BA) fixes x1 + x3.
    """
    x1, x2, x3 = _three(xs)
    phi1, phi2, phi3 = dual_functionals([x1, x2, x3])
    a = rank_one(x3 - x2, phi1) + rank_one(x1 + x2, phi2)
    b = rank_one(x2, phi2 + phi3)
    return a, b


def example2_pair(xs: Sequence[LatticeVector]) -> Pair:
    """
    A = (x2 + x3) ⊗ φ2,  B = x2 ⊗ φ1 + (x2 - x1) ⊗ φ2 + x1 ⊗ φ3.

    AB - BA = (x2 + x3) ⊗ φ1 + x3 ⊗ φ2, and (AB - BA)B fixes x2 + 2 x3.
    """
    x1, x2, x3 = _three(xs)
    phi1, phi2, phi3 = dual_functionals([x1, x2, x3])
    a = rank_one(x2 + x3, phi2)
    b = rank_one(x2, phi1) + rank_one(x2 - x1, phi2) + rank_one(x1, phi3)
    return a, b


def example1_standard() -> Pair:
    return example1_pair(standard_atoms(3))


def example2_standard() -> Pair:
    return example2_pair(standard_atoms(3))


def random_disjoint_vectors(
    rng: np.random.Generator, dim: int, count: int = 3, bound: int = 3
) -> list[LatticeVector]:
    """
    Pairwise disjoint positive integer vectors.

    A random subset of coordinates is split into `count` nonempty blocks;
    each block carries entries drawn from 1..bound.
    """
    if dim < count:
        raise InvalidConfigError(f"Need dim >= {count} for {count} disjoint vectors, got {dim}")
    used = int(rng.integers(count, dim + 1))
    coords = rng.permutation(dim)[:used]
    # first `count` coordinates seed the blocks, the rest are spread at random
    owners = list(range(count)) + [int(o) for o in rng.integers(0, count, size=used - count)]
    vectors = [[0] * dim for _ in range(count)]
    for coord, owner in zip(coords, owners):
        vectors[owner][int(coord)] = int(rng.integers(1, bound + 1))
    return [LatticeVector.of(v) for v in vectors]


BASE_PRESETS = ("donoghue", "volterra")


def base_preset(name: str, dim: int) -> RationalMatrix:
    """Positive rational base operators for semicommutant sampling."""
    if name == "donoghue":
        return donoghue_rational(dim - 1, WeightSequence.dyadic(dim - 1))
    if name == "volterra":
        return to_rational(volterra_matrix(dim))
    raise InvalidConfigError(f"Unknown base preset: {name}", {"known": list(BASE_PRESETS)})
