"""Generalized-uncertainty bounds for entangled pairs of identical particles."""
from ._accel import USE_NUMBA
from .errors import (
    BracketError,
    DegenerateDataError,
    DomainError,
    GridError,
    GupError,
    NoMinimumError,
    RecordParseError,
    RootError,
    StateFormatError,
    UnsupportedAnalyticError,
)
from .gup_models import (
    BoundContext,
    GupKind,
    GupModel,
    MomentumStats,
    bound_curve,
    commutator_factor,
    entangled_pair_rhs,
    gamma,
    single_particle_rhs,
)
from .kim_shih import (
    BoundEstimate,
    ExperimentRecord,
    RootMethod,
    estimate_bound,
    load_experiment,
    slit_roots_exact,
    slit_roots_paper,
)
from .minimal_uncertainty import (
    MinimalLengthQuery,
    MinimumResult,
    analytic_min,
    effective_parameter,
    minimal_length,
    numeric_min,
)
from .pair_state import (
    GridSpec,
    PairState,
    UncertaintyReport,
    check_inequalities,
    make_correlated_gaussian,
    make_product_state,
    moments,
    qcf,
)
from .units import UnitSystem

__version__ = "0.1.0"
