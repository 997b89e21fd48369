"""Online hyperparameter-free sparse estimation from streaming measurements."""

from .core import AuxState, Sample, SufficientStats, apply_coordinate_delta, ingest, init_aux
from .lasso import LambdaSchedule, LassoState, OnlineLasso, lasso_coordinate_minimize
from .oracle import (
    BatchProblem,
    CovParams,
    batch_weighted_sqrt_lasso,
    concentrated_cost,
    covmatch_cost,
    covmatch_cost_frobenius,
    lmmse,
)
from .rls import OnlineRls, RlsState, rls_step
from .scenarios import ScenarioSpec, gen_iid, gen_sar, gen_sinusoids, stream
from .spice import (
    CoordinateStats,
    OnlineSpice,
    SpiceState,
    coordinate_minimize,
    coordinate_stats,
)

__all__ = [
    "AuxState",
    "BatchProblem",
    "CoordinateStats",
    "CovParams",
    "LambdaSchedule",
    "LassoState",
    "OnlineLasso",
    "OnlineRls",
    "OnlineSpice",
    "RlsState",
    "Sample",
    "ScenarioSpec",
    "SpiceState",
    "SufficientStats",
    "apply_coordinate_delta",
    "batch_weighted_sqrt_lasso",
    "concentrated_cost",
    "coordinate_minimize",
    "coordinate_stats",
    "covmatch_cost",
    "covmatch_cost_frobenius",
    "gen_iid",
    "gen_sar",
    "gen_sinusoids",
    "ingest",
    "init_aux",
    "lasso_coordinate_minimize",
    "lmmse",
    "rls_step",
    "stream",
]
