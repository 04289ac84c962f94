"""Steady-state entanglement of two quantum-dot qubits mediated by a
one-dimensional chain of metal nanoparticles.

The package converts laboratory inputs (Drude metal, host medium, chain
geometry, laser drive) into the bare rates of the driven dot-chain-dot
system, eliminates the fast chain modes to obtain the mediated two-dot
master equation, solves for its steady state and quantifies entanglement
through the concurrence.  An explicit Fock-space simulation of the full
chain validates the effective model on small systems, and a CLI runs the
named sweep experiments with CSV output.
"""

from .config import ExperimentConfig, apply_overrides, parse_config, parse_config_text
from .effective import (
    ComplexPole,
    CouplingMatrix,
    DickeParams,
    EffectiveCouplings,
    MediatedParams,
    SpectrumPoint,
    build_coupling_matrix,
    complex_pole,
    decay_spectrum,
    dicke_params,
    effective_couplings,
    mediated_params,
)
from .exceptions import (
    ConfigError,
    ContractError,
    DomainError,
    MemoryBudgetError,
    NumericalError,
    PlasmarrayError,
)
from .fullmodel import (
    FockConfig,
    FullSystem,
    build_full_system,
    liouvillian,
    mean_mode_occupation,
    reduce_to_qubits,
    steady_state_full,
    validate_against_effective,
)
from .numerics import (
    FitResult,
    eig_general,
    fit_exponential_decay,
    fit_quadratic,
    thomas_solve,
    uniform_tridiagonal_inverse,
)
from .plasmonics import (
    ArrayGeometry,
    BareCouplings,
    DriveField,
    DrudeMetal,
    HostMedium,
    MaterialSystem,
    QdParams,
    bare_couplings,
    derive_material,
    drive_rates,
    qd_dipole_from_radius,
)
from .steadystate import (
    DickePopulations,
    EvolutionMatrix,
    TwoQubitState,
    build_effective_generator,
    concurrence,
    concurrence_x_approx,
    dicke_populations,
    solve_steady,
    steady_state,
)

__version__ = "0.1.0"
