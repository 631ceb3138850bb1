"""Conformal geodesic flows on gravitational-instanton geometries.

Numerical integration of the third-order conformal geodesic system and
its Lorentz-force reduction, first integrals from Killing vectors and
conformal Killing-Yano tensors, Hamilton-Jacobi separation checks, and
the closed-form solution families on flat space, the hyperbolic plane,
Taub-NUT, Eguchi-Hanson and CP^2.
"""

from .errors import (
    ConfgeoError,
    DegenerateConstantsError,
    DomainError,
    RootBracketError,
    SingularCoordinateError,
    TurningPointError,
    UnsupportedOperationError,
)
from .geometry import (
    CP2,
    ChartPoint,
    EguchiHanson,
    Flat4,
    GibbonsHawking,
    HalfPlane,
    MetricModel,
    TaubNUT,
    TwoForm,
    eh_two_center_gh_data,
    flat_gh_data,
    gh_check,
    make_model,
    taub_nut_gh_data,
)
from .invariants import (
    CKYData,
    FirstIntegralSet,
    PhasePoint,
    cky_divergence_oneform,
    cky_first_integral,
    cky_residual,
    invariant_report,
    involution_matrix,
    poisson_bracket,
    taubnut_integral_set,
    taubnut_integrals,
)
from .taubnut import (
    ParabolicPoint,
    SeparationConstants,
    extract_constants,
    from_parabolic,
    hj_residual,
    quartic_U,
    quartic_coefficients,
    radicand_root,
    separation_report,
    tn_cky_W,
    tn_cky_Y,
    tn_ky_Z,
    tn_magnetic_two_form,
    tn_potential_oneform,
    to_parabolic,
    unparam_quadrature,
    w_from_velocity,
)
from .flows import (
    CGState,
    HalfPlaneRegime,
    IntegratorConfig,
    LorentzState,
    Trajectory,
    acceleration_from_c,
    conformal_rhs,
    flat_circle,
    halfplane_classify,
    integrate,
    lorentz_rhs,
)
from .eguchi_hanson import (
    EHOrbitConstants,
    angular_rhs,
    confined_orbit_data,
    eh_frame_rhs,
    eh_hj_residual,
    eh_potential_oneform,
    eh_separation_constants,
    h_ode_residual,
    h_quadrature,
    orbit_constants_from_state,
    orbit_ode_rhs,
    orbit_reconstruction,
    orbit_rotation_rate,
    prolate_coordinates,
    prolate_momenta,
    right_invariant_momenta,
    starstar_residual,
    u_from_momenta,
)

__version__ = "0.1.0"

__all__ = [
    "ConfgeoError",
    "DomainError",
    "UnsupportedOperationError",
    "SingularCoordinateError",
    "TurningPointError",
    "DegenerateConstantsError",
    "RootBracketError",
    "ChartPoint",
    "MetricModel",
    "TwoForm",
    "Flat4",
    "HalfPlane",
    "TaubNUT",
    "EguchiHanson",
    "CP2",
    "GibbonsHawking",
    "flat_gh_data",
    "taub_nut_gh_data",
    "eh_two_center_gh_data",
    "gh_check",
    "make_model",
    "CGState",
    "LorentzState",
    "IntegratorConfig",
    "Trajectory",
    "HalfPlaneRegime",
    "conformal_rhs",
    "acceleration_from_c",
    "lorentz_rhs",
    "integrate",
    "flat_circle",
    "halfplane_classify",
    "CKYData",
    "PhasePoint",
    "FirstIntegralSet",
    "cky_divergence_oneform",
    "cky_residual",
    "cky_first_integral",
    "taubnut_integrals",
    "taubnut_integral_set",
    "poisson_bracket",
    "involution_matrix",
    "invariant_report",
    "ParabolicPoint",
    "SeparationConstants",
    "to_parabolic",
    "from_parabolic",
    "tn_potential_oneform",
    "tn_magnetic_two_form",
    "tn_cky_Y",
    "tn_cky_W",
    "tn_ky_Z",
    "w_from_velocity",
    "quartic_U",
    "quartic_coefficients",
    "radicand_root",
    "extract_constants",
    "hj_residual",
    "unparam_quadrature",
    "separation_report",
    "EHOrbitConstants",
    "orbit_rotation_rate",
    "eh_frame_rhs",
    "eh_potential_oneform",
    "right_invariant_momenta",
    "u_from_momenta",
    "angular_rhs",
    "orbit_ode_rhs",
    "orbit_constants_from_state",
    "confined_orbit_data",
    "h_ode_residual",
    "h_quadrature",
    "starstar_residual",
    "orbit_reconstruction",
    "prolate_coordinates",
    "prolate_momenta",
    "eh_hj_residual",
    "eh_separation_constants",
    "__version__",
]
