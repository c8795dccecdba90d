"""Exact analysis of the asymmetric annihilation process and its generalization."""
from .bitlattice import BitState, delta, delta_inv, dot, phi, psi, states
from .operators import (DenseOperator, Params, apply_M, build_A, build_B, build_M_general,
                        build_M_specialized, general_symbols, specialized_params, two_symbols)
from .spectrum import (Report, charpoly_specialized, eigenvalues_closed_form, geometric_multiplicities,
                       verify_charpoly, verify_ratio, verify_spectrum)
from .steadystate import (ResonanceError, partition_general, partition_specialized, simulate_ctmc,
                          solve_y, steady_state, verify_partition, verify_partition_general)
from .transfer import build_T, propagate_steady, verify_tma
from .transform import fwht, htilde_apply, htilde_conjugate, verify_B_transform

__version__ = "0.1.0"

__all__ = [
    "BitState", "DenseOperator", "Params", "Report", "ResonanceError",
    "apply_M", "build_A", "build_B", "build_M_general", "build_M_specialized", "build_T",
    "charpoly_specialized", "delta", "delta_inv", "dot", "eigenvalues_closed_form", "fwht",
    "general_symbols", "geometric_multiplicities", "htilde_apply", "htilde_conjugate",
    "partition_general", "partition_specialized", "phi", "propagate_steady", "psi",
    "simulate_ctmc", "solve_y", "specialized_params", "states", "steady_state", "two_symbols",
    "verify_B_transform", "verify_charpoly", "verify_partition", "verify_partition_general",
    "verify_ratio", "verify_spectrum", "verify_tma",
]
