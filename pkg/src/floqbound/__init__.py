"""Floquet analysis of periodic linear systems.

The package follows the pipeline: describe a q-periodic coefficient
(`systems`), integrate its fundamental and forced solutions (`propagator`),
split the monodromy spectrum against the unit circle (`spectral`, `linalg`),
classify forced responses as bounded or growing (`forced`), and run the
whole story as structured checks (`harness`). `cli` exposes all of it as a
command line; `plots` renders deterministic SVG artifacts.
"""

from .errors import (
    DimensionMismatch,
    FloqboundError,
    NonConvergence,
    NonFinite,
    NotDichotomic,
    ParseError,
    Singular,
    StepLimitExceeded,
    ValidationError,
)
from .forced import (
    BoundednessVerdict,
    ForcedTrace,
    SweepResult,
    boundedness_probe,
    default_mu_grid,
    eval_direct,
    eval_periodic_decomposition,
    resolvent_partial_sum,
    uniform_bound_sweep,
    write_sup_csv,
    write_sweep_csv,
    write_trace_csv,
)
from .harness import (
    ALL_CHECKS,
    COUNTERPHASE_PROJECTOR,
    ConclusionRecord,
    HypothesisRecord,
    TheoremReport,
    default_b_set,
    reproduce_rotation_counterexample,
    run_all,
    verify_converse_dichotomy,
    verify_forward_boundedness,
    verify_power_growth,
    verify_uniform_bounds,
    verify_uniform_stability,
)
from .linalg import (
    Spectrum,
    SubspaceBasis,
    condition_number,
    eigenvalues,
    generalized_eigenspace,
    invert,
    schur_decompose,
    spectral_radius,
)
from .propagator import (
    METHOD_DOPRI,
    METHOD_RK4,
    IntegratorSettings,
    Propagation,
    commutation_residual,
    evolution,
    forced_integral_adjoint,
    forced_integral_forward,
    fundamental_solution,
    growth_constants,
    inverse_fundamental,
    monodromy,
)
from .spectral import (
    DichotomyVerdict,
    GrowthProfile,
    InvertibilityReport,
    ProjectionReport,
    SpectralSplit,
    classify,
    decay_horizon,
    dichotomy_projection,
    growth_profile,
    invertibility_check,
    spectral_projection,
    spectral_split,
)
from .systems import (
    ConstantCoefficient,
    ForcingSpec,
    FourierCoefficient,
    FourierTerm,
    PeriodicSystem,
    PiecewiseConstantCoefficient,
    builtin_examples,
    builtin_system,
    parse_system,
    serialize_system,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_CHECKS",
    "BoundednessVerdict",
    "COUNTERPHASE_PROJECTOR",
    "ConclusionRecord",
    "ConstantCoefficient",
    "DichotomyVerdict",
    "DimensionMismatch",
    "FloqboundError",
    "ForcedTrace",
    "ForcingSpec",
    "FourierCoefficient",
    "FourierTerm",
    "GrowthProfile",
    "HypothesisRecord",
    "IntegratorSettings",
    "InvertibilityReport",
    "METHOD_DOPRI",
    "METHOD_RK4",
    "NonConvergence",
    "NonFinite",
    "NotDichotomic",
    "ParseError",
    "PeriodicSystem",
    "PiecewiseConstantCoefficient",
    "ProjectionReport",
    "Propagation",
    "Singular",
    "SpectralSplit",
    "Spectrum",
    "StepLimitExceeded",
    "SubspaceBasis",
    "SweepResult",
    "TheoremReport",
    "ValidationError",
    "boundedness_probe",
    "builtin_examples",
    "builtin_system",
    "classify",
    "commutation_residual",
    "condition_number",
    "decay_horizon",
    "default_b_set",
    "default_mu_grid",
    "dichotomy_projection",
    "eigenvalues",
    "eval_direct",
    "eval_periodic_decomposition",
    "evolution",
    "forced_integral_adjoint",
    "forced_integral_forward",
    "fundamental_solution",
    "generalized_eigenspace",
    "growth_constants",
    "growth_profile",
    "inverse_fundamental",
    "invert",
    "invertibility_check",
    "monodromy",
    "parse_system",
    "reproduce_rotation_counterexample",
    "resolvent_partial_sum",
    "run_all",
    "schur_decompose",
    "serialize_system",
    "spectral_projection",
    "spectral_radius",
    "spectral_split",
    "uniform_bound_sweep",
    "verify_converse_dichotomy",
    "verify_forward_boundedness",
    "verify_power_growth",
    "verify_uniform_bounds",
    "verify_uniform_stability",
    "write_sup_csv",
    "write_sweep_csv",
    "write_trace_csv",
]
