"""Cyclic configurations of planar polygonal linkages and their Morse data.

The package enumerates every configuration of a closed linkage whose
vertices lie on a circle (the critical points of the signed area on the
pinned moduli space), evaluates closed-form sign rules for the Hessian
determinant and the Morse index, verifies both against a numerical
constrained-Hessian oracle, and explores sign dynamics under deformations on
a fixed circle.
"""

from .errors import (
    CentralConfigurationError,
    DegenerateCircleError,
    InconsistentDescriptorError,
    InvalidConfigurationError,
    InvalidLinkageError,
    LinkmorseError,
    NonGenericError,
    NonGenericPathError,
    NonRegularPointError,
    NotInscribableError,
    SingularDerivativeError,
    SolverDomainError,
    VanishingChordError,
)
from .geometry import (
    CircleFit,
    Configuration,
    Linkage,
    OrientationString,
    Violation,
    edge_lengths,
    edge_orientations,
    fit_circle,
    is_convex_positive,
    measure_half_angles,
    signed_area,
    validate_configuration,
)
from .solver import (
    CyclicConfiguration,
    CyclicDescriptor,
    DegeneracyFlags,
    SolverOptions,
    degeneracy_flags,
    delta_at_radius,
    enumerate_cyclic,
    f_derivative,
    f_value,
    reconstruct,
    solve_radii,
)
from .morse import (
    MorseReport,
    SignReport,
    closing_chord,
    delta,
    hessian_sign,
    morse_index,
    sign_report,
    subconfig_sign_sequence,
)
from .oracle import (
    OracleVerdict,
    area_gradient,
    area_hessian,
    constraint_jacobian,
    constraint_values,
    criticality_residual,
    inertia,
    oracle_index,
    projected_hessian,
    tangent_basis,
)
from .deform import (
    AngularPath,
    Event,
    LemmaReport,
    PathSnapshot,
    check_lemmas,
    deform,
    detect_events,
    vertex_angles,
)
from .analysis import (
    ConfigurationAnalysis,
    analyze_configuration,
    analyze_linkage,
    index_summary,
    verify_enumeration,
)

__version__ = "0.1.0"
