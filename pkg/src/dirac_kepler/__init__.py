"""Dirac-Kepler bound states with a Coulomb-like position-dependent mass.

A Dirac particle in U(r) = -e^2/r whose mass carries a 1/r slope,
m*(r) = m (1 + a/r), is a fermion in a mixed vector-scalar Coulomb
background.  This package computes its bound-state spectrum twice
(closed form and an independent shooting solver), implements the
spin-angular operator algebra behind the second-order reduction, and
machine-checks the structural claims about that reduction: component
mixing in the 1/r^2 term, the generally non-integer effective angular
momentum, the two energy branches, and the energy-dependent binding
condition.

Natural units hbar = c = m = 1 everywhere; energies in units of m c^2.
"""
from .params import (
    NATURAL,
    SI_LIKE,
    Channel,
    CouplingParams,
    PhysicalInputs,
    SupercriticalCouplingError,
    channel_from_kappa,
    derive_couplings,
)
from .angular import (
    AngularBlock,
    BarrierBlockReport,
    TwoSpinorSample,
    alpha_matrices,
    angular_block,
    angular_block_eigensystem,
    angular_quadratic_eigs,
    barrier_block_structure,
    beta_double_prime_matrix,
    beta_matrix,
    beta_prime_matrix,
    k_operator_eigenvalue,
    pauli_matrices,
    sigma_dot_n,
    sigma_matrices,
    spinor_harmonic_components,
    spinor_spherical_harmonic,
)
from .special import LaguerreParams, generalized_laguerre, laguerre_values, ln_gamma, radial_norm
from .spectrum import (
    InadmissibleStateError,
    NoRealBranchError,
    SpectrumLine,
    analytic_radial_function,
    binding_condition,
    binding_condition_static,
    count_nodes,
    effective_coulomb,
    effective_principal,
    energy_branches,
    sommerfeld_reference,
)
from .solver import (
    DiracRadialSolution,
    RadialGrid,
    ShootResult,
    default_grid,
    dirac_rhs,
    find_eigenvalues,
    kernel_mode,
    shoot_and_match,
    small_r_exponent,
    warm_up,
)
from .factorization import (
    UNCORRECTED_SPIN_NOTE,
    FactorizationReport,
    smooth_test_pair,
    verify_factorization,
)
from .claims import (
    CLAIM_IDS,
    ClaimReport,
    FullReport,
    GridSpec,
    SweepResult,
    channel_comparison,
    claim_binding_condition,
    claim_lstar_noninteger,
    claim_offdiagonal,
    claim_quadratic_eigencheck,
    claim_two_branches,
    default_grid_spec,
    full_report,
    oracle_sweep,
)

__version__ = "0.1.0"
