"""abmodes: radial modes of the ideal magnetic flux line.

Real-order Bessel machinery, flux decomposition, critical-channel modes,
the cross-order overlap integral with its delta/finite-part split, the
extension-parameter (self-adjointness) conditions obtained by
orthogonalization, and the finite-radius flux-shell model that gives the
extension parameters a physical reading.
"""

from ._backend import BACKEND
from .errors import AbmodesError, InvalidInputError, NumericalFailureError
from .flux import EquationKind, FluxParameter, critical_channels, decompose, radial_order
from .fluxshell import (
    FluxShellProblem,
    g_asymptotic,
    g_from_alpha,
    limit_ratio,
    matching_ratio,
    piecewise_solution,
    resonance_defect,
    solve_g,
)
from .modes import (
    DiracKinematics,
    ModeKind,
    RadialMode,
    evaluate,
    make_dirac_mode,
    make_schrodinger_mode,
    small_rho_signature,
)
from .overlap import (
    OverlapResult,
    closed_form_cross,
    closed_form_same,
    finite_part_estimate,
    fit_cancelling_exponent,
    fit_delta_coefficient,
    mode_overlap_finite_part,
    mode_overlap_finite_part_numeric,
    windowed_overlap,
)
from .sae import (
    Channel,
    ExtensionParameter,
    boundary_ratio_from_alpha,
    dirac_ratio,
    make_extended_mode,
    reference_extension_parameters,
    schrodinger_ratio,
)
from .specfun import bessel_j, bessel_j_prime, gamma

__version__ = "0.1.0"

__all__ = [
    "AbmodesError",
    "BACKEND",
    "Channel",
    "DiracKinematics",
    "EquationKind",
    "ExtensionParameter",
    "FluxParameter",
    "FluxShellProblem",
    "InvalidInputError",
    "ModeKind",
    "NumericalFailureError",
    "OverlapResult",
    "RadialMode",
    "bessel_j",
    "bessel_j_prime",
    "boundary_ratio_from_alpha",
    "closed_form_cross",
    "closed_form_same",
    "critical_channels",
    "decompose",
    "dirac_ratio",
    "evaluate",
    "finite_part_estimate",
    "fit_cancelling_exponent",
    "fit_delta_coefficient",
    "g_asymptotic",
    "g_from_alpha",
    "gamma",
    "limit_ratio",
    "make_dirac_mode",
    "make_extended_mode",
    "make_schrodinger_mode",
    "matching_ratio",
    "mode_overlap_finite_part",
    "mode_overlap_finite_part_numeric",
    "piecewise_solution",
    "radial_order",
    "reference_extension_parameters",
    "resonance_defect",
    "schrodinger_ratio",
    "small_rho_signature",
    "solve_g",
    "windowed_overlap",
    "__version__",
]
