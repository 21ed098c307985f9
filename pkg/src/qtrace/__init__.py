"""Partial traces and reduced density matrices with analytic cost models.

The package computes marginals of operators on composite Hilbert spaces
three ways (definition-based, basis-aware, and index-sum optimized),
counts the scalar operations each route executes, reconstructs marginals
through the generalized Bloch parametrization, and drives a
transverse-field Ising chain experiment measuring the nonlocal coherence
of edge spins.
"""

from .bench import BenchRecord, fit_loglog_slope, run_bench
from .bipartite import (
    BipartiteDims,
    ptrace_a_direct,
    ptrace_a_fast,
    ptrace_b_direct,
    ptrace_b_fast,
    ptrace_b_fast_hermitian,
    ptrace_b_semi,
)
from .bloch import (
    BlochVector,
    GellMannBasis,
    bloch_b_direct,
    bloch_b_fast,
    bloch_from_state,
    gellmann_basis,
    reduced_state_bloch,
    state_from_bloch,
)
from .costmodel import (
    CostEstimate,
    Method,
    asymptotic_exponents,
    cost_direct_steps,
    cost_estimate,
)
from .ising import (
    IsingParams,
    ground_state_density,
    ising_hamiltonian,
    l1_coherence,
    nlqc_edge,
    nlqc_sweep,
    nlqc_time_compare,
)
from .linalg import (
    dagger,
    is_hermitian,
    kron,
    random_density_matrix,
    random_unitary,
    trace,
)
from .multipartite import (
    partial_trace,
    partial_trace_direct,
    ptrace_inner,
    ptrace_inner_hermitian,
    reduced_dimension,
)
from .opcount import OpCounter
from .qmat import QmatFormatError, read_qmat, write_qmat

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "BipartiteDims",
    "BlochVector",
    "CostEstimate",
    "GellMannBasis",
    "IsingParams",
    "Method",
    "OpCounter",
    "QmatFormatError",
    "asymptotic_exponents",
    "bloch_b_direct",
    "bloch_b_fast",
    "bloch_from_state",
    "cost_direct_steps",
    "cost_estimate",
    "dagger",
    "fit_loglog_slope",
    "gellmann_basis",
    "ground_state_density",
    "ising_hamiltonian",
    "is_hermitian",
    "kron",
    "l1_coherence",
    "nlqc_edge",
    "nlqc_sweep",
    "nlqc_time_compare",
    "partial_trace",
    "partial_trace_direct",
    "ptrace_a_direct",
    "ptrace_a_fast",
    "ptrace_b_direct",
    "ptrace_b_fast",
    "ptrace_b_fast_hermitian",
    "ptrace_b_semi",
    "ptrace_inner",
    "ptrace_inner_hermitian",
    "random_density_matrix",
    "random_unitary",
    "read_qmat",
    "reduced_dimension",
    "reduced_state_bloch",
    "run_bench",
    "state_from_bloch",
    "trace",
    "write_qmat",
]
