"""Quantum renormalization group of the 2D anisotropic XY model.

Thin Python interface over the C++ core: block-Hamiltonian ground data,
the (J, gamma) renormalization map, concurrence observables and the
finite-size scaling fits.
"""

from qrgxy._core import (
    alpha_coefficients,
    block_hamiltonian,
    block_projector,
    cg_after_iterations,
    cg_curve,
    concurrence,
    derivative_curve,
    effective_pair_coupling,
    eigh_lowest,
    eta_factors_closed,
    eta_factors_operator,
    fixed_points,
    ground_coefficients,
    ground_energy,
    ground_states,
    locate_derivative_peak,
    pairwise_concurrences,
    partial_trace_pair,
    pauli,
    projector_distance,
    rg_iterate,
    rg_step,
    scaling_fits,
    two_site_coupling,
    verify_ground_space,
)

__all__ = [
    "alpha_coefficients",
    "block_hamiltonian",
    "block_projector",
    "cg_after_iterations",
    "cg_curve",
    "concurrence",
    "derivative_curve",
    "effective_pair_coupling",
    "eigh_lowest",
    "eta_factors_closed",
    "eta_factors_operator",
    "fixed_points",
    "ground_coefficients",
    "ground_energy",
    "ground_states",
    "locate_derivative_peak",
    "pairwise_concurrences",
    "partial_trace_pair",
    "pauli",
    "projector_distance",
    "rg_iterate",
    "rg_step",
    "scaling_fits",
    "two_site_coupling",
    "verify_ground_space",
]

__version__ = "0.1.0"
