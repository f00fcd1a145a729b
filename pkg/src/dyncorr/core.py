"""Shared series types and the scalar statistics the estimators build on.

Conventions used throughout the package:

* time indices are 1-based: a series of length T covers t = 1..T
* correlation values that are undefined (zero-variance input) are reported
  as the MISSING marker, never as NaN
* computed correlations are clamped to [-1, 1] after the final division
"""

from __future__ import annotations

import numpy as np

MISSING = None

DEFAULT_WINDOW = 15


class InvalidInputError(ValueError):
    """An input violates a documented precondition."""


class NumericalFailure(ArithmeticError):
    """A computation produced non-finite intermediates."""


class TimeSeries:
    """Finite real-valued series, immutable once constructed."""

    __slots__ = ("values",)

    def __init__(self, values):
        arr = np.array(values, dtype=float)
        if arr.ndim != 1:
            raise InvalidInputError("series must be one-dimensional")
        if arr.size < 2:
            raise InvalidInputError("series needs at least 2 observations")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("series contains non-finite values")
        arr.setflags(write=False)
        self.values = arr

    @property
    def t_len(self) -> int:
        return self.values.size

    def __len__(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return f"TimeSeries(t_len={self.t_len})"


def as_series(x) -> TimeSeries:
    """Coerce array-likes to TimeSeries, passing TimeSeries through."""
    return x if isinstance(x, TimeSeries) else TimeSeries(x)


class BivariateSeries:
    """Pair of equal-length series observed on the same time grid."""

    __slots__ = ("first", "second")

    def __init__(self, first, second):
        self.first = as_series(first)
        self.second = as_series(second)
        if self.first.t_len != self.second.t_len:
            raise InvalidInputError("paired series must have equal length")

    @property
    def t_len(self) -> int:
        return self.first.t_len

    def __repr__(self) -> str:
        return f"BivariateSeries(t_len={self.t_len})"


class CorrelationTrack:
    """Correlation estimates aligned to time indices start_index, start_index+1, ...

    Entries are floats in [-1, 1] or MISSING where the estimate is undefined.
    """

    __slots__ = ("start_index", "values")

    def __init__(self, start_index, values):
        start_index = int(start_index)
        if start_index < 1:
            raise InvalidInputError("start_index must be >= 1")
        cleaned = []
        for v in values:
            if v is MISSING:
                cleaned.append(MISSING)
                continue
            v = float(v)
            if not np.isfinite(v) or abs(v) > 1.0 + 1e-12:
                raise InvalidInputError(f"correlation value out of range: {v}")
            cleaned.append(v)
        if not cleaned:
            raise InvalidInputError("track must contain at least one entry")
        self.start_index = start_index
        self.values = tuple(cleaned)

    def __len__(self) -> int:
        return len(self.values)

    def time_indices(self) -> range:
        return range(self.start_index, self.start_index + len(self.values))

    def items(self):
        """Yield (t, value) pairs, value possibly MISSING."""
        return zip(self.time_indices(), self.values)

    def defined_items(self):
        """Yield (t, value) pairs for the non-missing entries."""
        for t, v in self.items():
            if v is not MISSING:
                yield t, v

    def defined_values(self) -> np.ndarray:
        return np.array([v for v in self.values if v is not MISSING], dtype=float)

    def n_missing(self) -> int:
        return sum(1 for v in self.values if v is MISSING)

    def to_array(self) -> np.ndarray:
        """Dense float array with NaN in the MISSING slots (plotting/IO helper)."""
        return np.array(
            [np.nan if v is MISSING else v for v in self.values], dtype=float
        )

    def __repr__(self) -> str:
        return (
            f"CorrelationTrack(start_index={self.start_index}, "
            f"n={len(self.values)}, n_missing={self.n_missing()})"
        )


def check_window(ws, t_len: int, min_ws: int = 2) -> int:
    """Validate a window size against a series length.

    Correlation windows need at least 2 points; median windows admit 1.
    """
    if not isinstance(ws, (int, np.integer)) or isinstance(ws, bool):
        raise InvalidInputError("window size must be an integer")
    ws = int(ws)
    if ws < min_ws:
        raise InvalidInputError(f"window size must be >= {min_ws}")
    if ws > t_len:
        raise InvalidInputError(f"window size {ws} exceeds series length {t_len}")
    return ws


def pearson(x, y):
    """Sample Pearson correlation of two equal-length vectors.

    Returns MISSING when either side has zero variance (all entries equal);
    otherwise the usual centered ratio, clamped to [-1, 1].
    """
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.ndim != 1 or ya.ndim != 1:
        raise InvalidInputError("pearson expects one-dimensional inputs")
    if xa.size != ya.size:
        raise InvalidInputError("pearson inputs must have equal length")
    if xa.size < 2:
        raise InvalidInputError("pearson needs at least 2 points")
    # ptp == 0 catches constant vectors exactly, with no fp-noise threshold
    if np.ptp(xa) == 0.0 or np.ptp(ya) == 0.0:
        return MISSING
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    den = np.sqrt((dx @ dx) * (dy @ dy))
    if den == 0.0:
        return MISSING
    r = float((dx @ dy) / den)
    return min(1.0, max(-1.0, r))


def median(v) -> float:
    """Sample median; midpoint of the two central order statistics for even n."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise InvalidInputError("median expects a one-dimensional input")
    if arr.size == 0:
        raise InvalidInputError("median of an empty vector is undefined")
    return float(np.median(arr))
