"""Desk-scale numerical laboratory for sigma-weighted vector L_p norms,
the sandwiched Renyi divergence family, quantum channels, and binary
hypothesis-testing exponents, with randomized verification suites that turn
the governing theorems into machine-checked inequalities."""

from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import (
    BadAlphaError,
    BadExponentError,
    BadRankError,
    ConfigError,
    InfeasibleSupportError,
    NonHermitianError,
    NotConvergedError,
    NotPSDError,
    NotSupportedError,
    RenyiLabError,
    ShapeMismatchError,
    SupportViolationError,
)
from .matcore import (
    SpectralDecomposition,
    eig_hermitian,
    kron,
    mat_fn,
    mat_power,
    mat_sqrt,
    partial_trace,
    schatten_norm,
    support_projector,
    trace,
    transpose,
)
from .states import (
    SpatialDerivative,
    StateFunctional,
    VectorState,
    commutant_functional,
    dominance_constant,
    functional_of_vector,
    purify,
    random_density,
    random_isometry,
    random_unit_vector,
    relation_operator,
    spatial_derivative,
    supported_on,
    trace_vector,
)
from .lpnorms import (
    NormResult,
    OperatorNormEstimate,
    OptimizerConfig,
    SamplerConfig,
    closed_form_optimizer,
    duality_value,
    hoelder_attainment,
    hoelder_check,
    interpolation_check,
    log_convexity_scan,
    modular_identity_check,
    plain_norm_bound_check,
    riesz_thorin_check,
    variational_norm,
    vector_norm,
    weighted_op_norm,
)
from .divergences import (
    DivergenceValue,
    alpha_monotonicity_scan,
    alt_check,
    dmax,
    fidelity,
    petz,
    renyi_limit,
    richardson_extrapolate,
    sandwiched,
    umegaki,
)
from .channels import (
    Channel,
    StinespringDilation,
    apply_predual,
    depolarizing_channel,
    dpi_check_states,
    dpi_check_vectors,
    embed_vector,
    identity_channel,
    measurement_channel,
    random_channel,
    stinespring,
)
from .hyptest import (
    ExponentCurve,
    exponent_empirics,
    finite_n_bound_check,
    neyman_pearson_test,
    strong_converse_curve,
    tensor_power,
)
from .reporting import CheckReport
from .suites import SUITE_NAMES, Report, SuiteConfig, run_suite, run_suites

__version__ = "0.1.0"
