"""Bound states of the Klein-Gordon equation with screened vector/scalar
couplings and a position-dependent mass.

Closed-form spectra and wavefunctions come from a parametric
hypergeometric-type (Nikiforov-Uvarov) reduction; every closed-form result
can be checked against an independent shooting-method ODE oracle.
"""
from .errors import (
    ComplexDeltaPrime,
    ConfigMismatch,
    DomainError,
    KgsolveError,
    NegativeRadicand,
    NoConvergence,
    NoSignChange,
    NotNormalizable,
    StiffnessFailure,
    UnboundEnergy,
)
from .hulthen import (
    BoundState,
    CoefficientSet,
    EnergyPair,
    ModelParams,
    QuantumNumbers,
    bound_state,
    bound_state_at_energy,
    build_nu_problem,
    centrifugal_pair,
    coefficients,
    constant_mass_levels,
    delta_prime,
    energy_levels,
    mass_at,
    normalization_closed,
    normalization_quadrature,
    potentials_at,
    wavefunction,
)
from .nu import (
    NuDerived,
    NuProblem,
    SolutionForm,
    derive_parameters,
    quantization_residual,
    solution_form,
    tau_slope,
)
from .refdata import ComparisonRecord, ReferenceRow, compare, load_table
from .shooting import ShootingConfig, ode_residual, radial_rhs, residual_grid, shoot
from .specfun import (
    JacobiIndex,
    integrate,
    jacobi_deriv,
    jacobi_eval,
    jacobi_norm_integral,
    log_gamma,
)

__version__ = "0.1.0"
