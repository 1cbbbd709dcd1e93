"""Bound states of the exponential-cosine-screened Coulomb potential.

Closed-form perturbative energies and wavefunctions, a quadrature engine
that cross-checks every closed form, an independent Numerov shooting
solver, and a CLI that reproduces the bundled reference tables.
"""

from .core import (
    ATOMIC,
    HBAR2M,
    DomainError,
    EnergyBreakdown,
    QuantumState,
    ScreeningSpec,
    SecondOrderVariant,
    Tolerances,
    UnitSystem,
    UnsupportedExpansionError,
    UnsupportedOrderError,
    ValidationError,
    make_unit_system,
    state_from_label,
)
from .coulomb import (
    CoulombState,
    coulomb_beta,
    coulomb_energy,
    coulomb_norm,
    coulomb_state,
    coulomb_wavefunction,
    laguerre,
    radial_moment,
)
from .perturbation import (
    GroundCoefficients,
    WavefunctionPolynomial,
    first_order_shift,
    ground_coefficients,
    ground_wavefunction,
    moderated_validity_radius,
    second_order_coefficients,
    second_order_shift,
    second_order_terms,
    superpotential_first,
    superpotential_second_ground,
    superpotential_w0,
    total_energy,
    wavefunction_polynomial,
)
from .potential import (
    SeriesCoefficient,
    effective_potential,
    evaluate_potential,
    perturbation_remainder,
    series_coefficient,
    series_coefficients,
)
from .quadrature import (
    NodeSingularityError,
    QuadratureSpec,
    ToleranceNotMetError,
    first_order_energy_numeric,
    integrate_density,
    integrate_density_with_error,
    second_order_energy_numeric,
    second_order_residual_report,
    superpotential_first_numeric,
)
from .radial import (
    IterationLimitError,
    NoBoundStateError,
    RadialFunction,
    SolverConfig,
    default_solver_config,
    energy_search_bracket,
    solve_bound_state,
)
from .tables import ComparisonRow, ScanResult, TableResult, TABLES, reproduce_table, scan_delta

__version__ = "0.1.0"
