"""Fourier analysis on finite sets acted on by finite abelian groups.

Builds dual bases of G-linear functions, computes Fourier transforms on
G-sets, and decides bentness and G-perfect nonlinearity through three
equivalent criteria, cross-checked by exhaustive search oracles.
"""

from .analysis import (
    BentReport,
    GroupValuedFunction,
    NonUnitaryError,
    PnlReport,
    bent_existence_precondition,
    bent_report,
    counting_function,
    derivative,
    derivative_sums,
    distance_to_g_linear,
    has_totally_balanced_derivatives,
    is_bent_poinsot,
    is_bent_spectral,
    is_g_linear,
    is_g_perfect_nonlinear,
    pseudo_convolution,
    pseudo_convolution_spectrum,
)
from .groups import DEFAULT_TOL, FiniteAbelianGroup, make_group
from .gsets import (
    ActionError,
    GSet,
    distance,
    indicator,
    inner,
    is_unitary,
    make_gset,
    norm,
    roots_of_unity_function,
    set_distance,
)
from .search import (
    BudgetError,
    CriterionMismatchError,
    backend_name,
    enumerate_unitary,
    search_bent,
    search_pnl,
)
from .spectral import (
    DualBasis,
    Spectrum,
    build_dual_basis,
    component_dimension,
    component_dimensions,
    convolution_transform,
    fourier,
    fourier_inverse,
    psi_component,
    shifted_inner_product,
    spectral_energy_by_psi,
    verify_dual_basis,
)

__version__ = "0.1.0"
