"""Weighted-visibility-graph correlation estimator.

Each series is mapped to a complete weighted graph on its time points: the
edge between times a < b carries the signed slope angle

    w_ab = arctan((x(b) - x(a)) / (b - a))

in radians, so every weight lies strictly inside (-pi/2, pi/2) regardless of
amplitude.  Row i of the symmetric weight matrix (self-weight 0) is the
weight vector of time i.  A trailing window of ws weight vectors is reduced
element-wise to a median weight vector, and the correlation estimate at time
i is the Pearson correlation between the two series' median weight vectors.
The track therefore starts at index ws, like the sliding-window estimator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import (
    DEFAULT_WINDOW,
    BivariateSeries,
    CorrelationTrack,
    InvalidInputError,
    TimeSeries,
    as_series,
    check_window,
    pearson,
)

__all__ = [
    "WeightMatrix",
    "MedianWeightVector",
    "visibility_weight",
    "weight_matrix",
    "median_weight_vector",
    "wvga_track",
]

# row-block size for the windowed median; bounds peak memory on long series
_MEDIAN_CHUNK = 256


def visibility_weight(x_a: float, x_b: float, gap: int) -> float:
    """Signed slope angle between two samples separated by ``gap`` time units."""
    if gap == 0:
        raise InvalidInputError("self-weight is fixed at zero, not computed")
    if gap < 0:
        raise InvalidInputError("gap must be a positive integer")
    return float(np.arctan((float(x_b) - float(x_a)) / gap))


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Symmetric matrix of slope angles with zero diagonal."""

    w: np.ndarray

    def __post_init__(self):
        if self.w.ndim != 2 or self.w.shape[0] != self.w.shape[1]:
            raise InvalidInputError("weight matrix must be square")
        self.w.setflags(write=False)

    @property
    def t_len(self) -> int:
        return self.w.shape[0]


@dataclass(frozen=True, eq=False)
class MedianWeightVector:
    """Element-wise median of the trailing ws weight vectors ending at right_index."""

    right_index: int
    values: np.ndarray


def weight_matrix(x: TimeSeries) -> WeightMatrix:
    """Complete-graph slope-angle matrix of a series."""
    v = as_series(x).values
    n = v.size
    diff = v[None, :] - v[:, None]
    gap = np.arange(n, dtype=float)
    gap = gap[None, :] - gap[:, None]
    slope = np.zeros((n, n))
    np.divide(diff, gap, out=slope, where=gap != 0.0)
    return WeightMatrix(w=np.arctan(slope))


def median_weight_vector(m: WeightMatrix, i: int, ws: int = DEFAULT_WINDOW) -> MedianWeightVector:
    """Median weight vector at right endpoint i (1-based), window size ws.

    A window of 1 is allowed here (the median of one row is that row); the
    correlation itself runs over the T vector elements, not the window.
    """
    ws = check_window(ws, m.t_len, min_ws=1)
    if not (ws <= i <= m.t_len):
        raise InvalidInputError(f"right endpoint {i} outside [{ws}, {m.t_len}]")
    rows = m.w[i - ws : i]
    return MedianWeightVector(right_index=i, values=np.median(rows, axis=0))


def _windowed_medians(w: np.ndarray, ws: int) -> np.ndarray:
    """Stack of median weight vectors for all right endpoints ws..T."""
    view = sliding_window_view(w, ws, axis=0)  # (T-ws+1, T, ws)
    n_out = view.shape[0]
    out = np.empty((n_out, w.shape[1]))
    for lo in range(0, n_out, _MEDIAN_CHUNK):
        hi = min(lo + _MEDIAN_CHUNK, n_out)
        out[lo:hi] = np.median(view[lo:hi], axis=2)
    return out


def wvga_track(series: BivariateSeries, ws: int = DEFAULT_WINDOW) -> CorrelationTrack:
    """Correlation track between the two series' median weight vectors."""
    ws = check_window(ws, series.t_len, min_ws=1)
    m1 = weight_matrix(series.first)
    m2 = weight_matrix(series.second)
    med1 = _windowed_medians(m1.w, ws)
    med2 = _windowed_medians(m2.w, ws)
    values = [pearson(med1[j], med2[j]) for j in range(med1.shape[0])]
    return CorrelationTrack(start_index=ws, values=values)
