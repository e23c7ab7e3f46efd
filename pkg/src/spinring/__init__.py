"""Exact diagonalization and pairwise entanglement of the frustrated
Heisenberg ring with nearest (J0) and next-nearest (J) neighbour exchange."""

from .basis import (
    MomentumBasis,
    SpinConfiguration,
    SymmetrySector,
    TranslationOrbit,
    build_momentum_basis,
    enumerate_sz_sector,
    translate,
)
from .concurrence import (
    CONVENTIONS,
    DEFAULT_CONVENTION,
    ConcurrenceReport,
    JumpReport,
    alpha_concurrences,
    concurrence_from_correlator,
    concurrence_jump,
    jump_between_sectors,
    pairwise_concurrence,
)
from .errors import (
    AmbiguityError,
    InvalidCoveringError,
    InvalidSectorError,
    NoCrossingError,
    NotDegenerateError,
    NotMomentumEigenstateError,
    RDMStructureError,
    ShapeError,
    SolverError,
    SpinRingError,
    TooLargeError,
    UnsupportedSizeError,
)
from .hamiltonian import CouplingParams, StateVector, apply_hamiltonian, hamiltonian_matrix
from .kernels import BACKEND
from .mg_analytics import (
    DimerCovering,
    MGConstants,
    N6ExactSolution,
    build_dimer_state,
    build_psi_e,
    difference_surface,
    mg_constants,
    mg_ground_states,
    n6_exact,
    nn_difference_closed_form,
    reconstructed_states,
)
from .observables import (
    TwoSiteRDM,
    bond_sums,
    energy_derivative_check,
    isotropic_correlator,
    reduced_density_matrix,
)
from .spectra import EigenLevel, SpectrumResult, lowest_levels, measure_momentum, total_spin
from .sweep import CrossingPoint, ScanPoint, locate_crossing, locate_point_b, scan, table1

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
