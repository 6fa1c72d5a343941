"""Numerical spectral-radius evidence and commutator defect sweeps."""

import csv
import logging
import math
from collections.abc import Iterable
from typing import TextIO

import numpy as np

from lattice_core.exceptions import NotSquareError

from .operators import FloatMatrix, multiplication_matrix, volterra_matrix

logger = logging.getLogger(__name__)


def inf_norm(m: FloatMatrix) -> float:
    """Maximum absolute row sum."""
    return float(np.abs(m).sum(axis=1).max()) if m.size else 0.0


def gelfand_estimate(m: FloatMatrix, kmax: int) -> list[float]:
    """
    ‖m^k‖_∞^(1/k) for k = 1..kmax.

    Powers are renormalized after each step and the scale is carried in
    log space, so small norms do not underflow. Once a power is exactly zero
    all later values are 0.0.
    """
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSquareError(f"Expected a square matrix, got shape {m.shape}")

    values: list[float] = []
    current = m.copy()
    log_scale = 0.0
    for k in range(1, kmax + 1):
        if k > 1:
            current = current @ m
        norm = inf_norm(current)
        if norm == 0.0:
            values.extend([0.0] * (kmax - k + 1))
            break
        log_scale += math.log(norm)
        values.append(math.exp(log_scale / k))
        current = current / norm
    return values


def nilpotency_index(m: FloatMatrix) -> int | None:
    """Smallest k <= n with m^k exactly zero in floating point, or None."""
    n = m.shape[0]
    current = m.copy()
    for k in range(1, n + 1):
        if not np.any(current):
            return k
        current = current @ m
    return None


def commutator_defect(n: int) -> float:
    """‖(MV - VM) - V²‖_∞ for the n-point discretizations; O(1/n)."""
    if n < 2:
        raise ValueError("Need at least 2 grid cells for the commutator defect")
    v = volterra_matrix(n)
    mult = multiplication_matrix(n)
    defect = inf_norm((mult @ v - v @ mult) - v @ v)
    logger.debug("Commutator defect n=%s value=%s", n, defect)
    return defect


def defect_sweep(sizes: Iterable[int]) -> list[tuple[int, float]]:
    return [(n, commutator_defect(n)) for n in sizes]


def write_csv(rows: Iterable[tuple[int, float]], header: tuple[str, str], stream: TextIO) -> None:
    """Emit (n_or_k, value) rows."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for key, value in rows:
        writer.writerow([key, repr(float(value))])
