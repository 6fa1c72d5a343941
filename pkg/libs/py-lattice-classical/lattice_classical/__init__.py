"""Lattice Classical - discretized Volterra and Donoghue operators."""

from .chains import (
    donoghue_chain_cases,
    donoghue_chain_check,
    donoghue_shift_check,
    invariant_chain_cases,
    volterra_chain_check,
)
from .operators import (
    FloatMatrix,
    WeightSequence,
    donoghue_matrix,
    donoghue_rational,
    multiplication_matrix,
    to_rational,
    volterra_matrix,
)
from .spectral import commutator_defect, defect_sweep, gelfand_estimate, nilpotency_index, write_csv

__version__ = "0.1.0"

__all__ = [
    "FloatMatrix",
    "WeightSequence",
    "volterra_matrix",
    "multiplication_matrix",
    "donoghue_matrix",
    "donoghue_rational",
    "to_rational",
    "gelfand_estimate",
    "nilpotency_index",
    "commutator_defect",
    "defect_sweep",
    "write_csv",
    "donoghue_chain_check",
    "donoghue_shift_check",
    "donoghue_chain_cases",
    "invariant_chain_cases",
    "volterra_chain_check",
]
