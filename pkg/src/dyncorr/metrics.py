"""Track metrics and Monte Carlo aggregation for the benchmark scenarios.

Each rep generates one series pair, runs one estimator, and is reduced to
mean |rho|, max |rho| and (given a true profile) the mean squared error
against p(t) at the track's own time indices.  DCC reps that fail to
converge carry no track; they are counted and excluded from the aggregate
statistics.  MISSING track entries are excluded from all three metrics.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import (
    DEFAULT_WINDOW,
    CorrelationTrack,
    InvalidInputError,
)
from .garch import DID_NOT_CONVERGE, dcc_track
from .sim import CorrelationProfile, SimDesign, generate
from .sliding import sw_track
from .visibility import wvga_track

__all__ = [
    "METHODS",
    "RepSummary",
    "SummaryStats",
    "McSummary",
    "mean_abs",
    "max_abs",
    "mse",
    "mc_run",
]

METHODS = ("sw", "wvga", "dcc")


@dataclass(frozen=True)
class RepSummary:
    mean_abs: float | None
    max_abs: float | None
    mse: float | None
    dnc: bool = False


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    sd: float
    median: float


@dataclass(frozen=True)
class McSummary:
    n_reps: int
    n_converged: int
    mean_abs: SummaryStats | None
    max_abs: SummaryStats | None
    mse: SummaryStats | None

    @property
    def dnc(self) -> int:
        return self.n_reps - self.n_converged

    @property
    def all_dnc(self) -> bool:
        return self.n_converged == 0


def mean_abs(track: CorrelationTrack) -> float:
    """Mean absolute correlation over the non-missing entries."""
    defined = track.defined_values()
    if defined.size == 0:
        raise InvalidInputError("track has no defined entries")
    return float(np.mean(np.abs(defined)))


def max_abs(track: CorrelationTrack) -> float:
    """Maximum absolute correlation over the non-missing entries."""
    defined = track.defined_values()
    if defined.size == 0:
        raise InvalidInputError("track has no defined entries")
    return float(np.max(np.abs(defined)))


def mse(track: CorrelationTrack, profile: CorrelationProfile) -> float:
    """Mean squared error against p(t) at the track's defined time indices."""
    pairs = list(track.defined_items())
    if not pairs:
        raise InvalidInputError("track has no defined entries")
    err = [(v - profile.value_at(t)) ** 2 for t, v in pairs]
    return float(np.mean(err))


def _stats(values: list[float]) -> SummaryStats:
    arr = np.asarray(values, dtype=float)
    sd = float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0
    return SummaryStats(
        mean=float(np.mean(arr)), sd=sd, median=float(np.median(arr))
    )


def _one_rep(design: SimDesign, method: str, ws: int) -> RepSummary:
    series = generate(design)
    if method == "sw":
        track = sw_track(series, ws)
    elif method == "wvga":
        track = wvga_track(series, ws)
    elif method == "dcc":
        report = dcc_track(series)
        if report.status == DID_NOT_CONVERGE:
            return RepSummary(None, None, None, dnc=True)
        track = report.track
    else:
        raise InvalidInputError(f"unknown method: {method!r}")
    return RepSummary(
        mean_abs=mean_abs(track),
        max_abs=max_abs(track),
        mse=mse(track, design.profile),
    )


def mc_run(
    design: SimDesign,
    method: str,
    ws: int = DEFAULT_WINDOW,
    n_reps: int = 100,
) -> McSummary:
    """Aggregate one estimator over independent reps of a design.

    Rep r uses seed design.seed + r, so the run is reproducible and each
    rep can be regenerated in isolation.
    """
    if method not in METHODS:
        raise InvalidInputError(f"unknown method: {method!r}")
    if n_reps < 1:
        raise InvalidInputError("n_reps must be >= 1")
    reps = [
        _one_rep(replace(design, seed=design.seed + r), method, ws)
        for r in range(n_reps)
    ]
    kept = [r for r in reps if not r.dnc]
    if not kept:
        return McSummary(n_reps, 0, None, None, None)
    return McSummary(
        n_reps=n_reps,
        n_converged=len(kept),
        mean_abs=_stats([r.mean_abs for r in kept]),
        max_abs=_stats([r.max_abs for r in kept]),
        mse=_stats([r.mse for r in kept]),
    )
