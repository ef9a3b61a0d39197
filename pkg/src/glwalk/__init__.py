"""Quantum-walk search on weighted barbell graphs with a generalized
graph Laplacian, plus the Heisenberg spin-network realization of the walk."""

from .analysis import (CriticalParams, StagePlan, classify_weight,
                       critical_params, leading_order_eigensystem,
                       noncritical_probabilities, wminus_probabilities,
                       wminus_runtime, wminus_two_stage, wplus_constants)
from .engine import (FullBarbellModel, ProbabilitySeries, ReducedBarbellModel,
                     Schedule, Segment, default_time_grid, peak, run_schedule)
from .graphs import (BarbellSpec, SignedWeightedGraph, build_barbell,
                     read_graph, write_graph)
from .linalg import HermitianOperator, QuantumState, eigendecompose, evolve, probabilities
from .spin import (SpinSystem, heisenberg_hamiltonian, project_single_excitation,
                   verify_walk_equivalence, walk_spin_system)

__all__ = [
    "BarbellSpec", "CriticalParams", "FullBarbellModel", "HermitianOperator",
    "ProbabilitySeries", "QuantumState", "ReducedBarbellModel", "Schedule",
    "Segment", "SignedWeightedGraph", "SpinSystem", "StagePlan",
    "build_barbell", "classify_weight", "critical_params", "default_time_grid",
    "eigendecompose", "evolve", "heisenberg_hamiltonian",
    "leading_order_eigensystem", "noncritical_probabilities", "peak",
    "probabilities", "project_single_excitation", "read_graph", "run_schedule",
    "verify_walk_equivalence", "walk_spin_system", "wminus_probabilities",
    "wminus_runtime", "wminus_two_stage", "wplus_constants", "write_graph",
]
