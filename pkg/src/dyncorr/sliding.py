"""Sliding-window correlation estimator.

The estimate at time i is the Pearson correlation over the trailing window
[i - ws + 1, i], so the track starts at index ws and has T - ws + 1 entries.
Windows where either series is constant yield MISSING.
"""

from __future__ import annotations

from .core import (
    DEFAULT_WINDOW,
    BivariateSeries,
    CorrelationTrack,
    check_window,
    pearson,
)

__all__ = ["sw_track"]


def sw_track(series: BivariateSeries, ws: int = DEFAULT_WINDOW) -> CorrelationTrack:
    """Trailing-window Pearson correlation track of a bivariate series."""
    ws = check_window(ws, series.t_len)
    x = series.first.values
    y = series.second.values
    values = [
        pearson(x[i - ws : i], y[i - ws : i])
        for i in range(ws, series.t_len + 1)
    ]
    return CorrelationTrack(start_index=ws, values=values)
