"""Time-varying correlation estimation for bivariate series.

Three estimators over a shared track representation:

* :func:`sw_track` — trailing sliding-window Pearson correlation
* :func:`wvga_track` — correlation of windowed median visibility-weight vectors
* :func:`dcc_track` — two-stage ML DCC(1,1)-GARCH(1,1) with convergence status

plus simulation designs (:mod:`dyncorr.sim`), benchmark aggregation
(:mod:`dyncorr.metrics`) and a CLI (``dyncorr --help``).
"""

from .core import (
    DEFAULT_WINDOW,
    MISSING,
    BivariateSeries,
    CorrelationTrack,
    InvalidInputError,
    NumericalFailure,
    TimeSeries,
    median,
    pearson,
)
from .garch import (
    CONVERGED,
    DID_NOT_CONVERGE,
    DccFitReport,
    DccParams,
    GarchParams,
    dcc_fit,
    dcc_track,
    garch_filter,
    garch_fit,
    garch_loglik,
)
from .metrics import McSummary, RepSummary, SummaryStats, max_abs, mc_run, mean_abs, mse
from .optim import OptimResult, minimize
from .sim import (
    CorrelationProfile,
    SimDesign,
    cov_at,
    design_profile,
    gen_cauchy_pair,
    gen_normal_pair,
    generate,
    profile_eval,
)
from .sliding import sw_track
from .visibility import (
    MedianWeightVector,
    WeightMatrix,
    median_weight_vector,
    visibility_weight,
    weight_matrix,
    wvga_track,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_WINDOW",
    "MISSING",
    "BivariateSeries",
    "CorrelationTrack",
    "InvalidInputError",
    "NumericalFailure",
    "TimeSeries",
    "median",
    "pearson",
    "CONVERGED",
    "DID_NOT_CONVERGE",
    "DccFitReport",
    "DccParams",
    "GarchParams",
    "dcc_fit",
    "dcc_track",
    "garch_filter",
    "garch_fit",
    "garch_loglik",
    "McSummary",
    "RepSummary",
    "SummaryStats",
    "max_abs",
    "mc_run",
    "mean_abs",
    "mse",
    "OptimResult",
    "minimize",
    "CorrelationProfile",
    "SimDesign",
    "cov_at",
    "design_profile",
    "gen_cauchy_pair",
    "gen_normal_pair",
    "generate",
    "profile_eval",
    "sw_track",
    "wvga_track",
    "MedianWeightVector",
    "WeightMatrix",
    "median_weight_vector",
    "visibility_weight",
    "weight_matrix",
]
