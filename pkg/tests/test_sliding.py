"""Sliding-window correlation track: alignment, windows, gaps."""

import statistics

import numpy as np
import pytest

from dyncorr.core import MISSING, BivariateSeries, InvalidInputError
from dyncorr.sliding import sw_track


def _pair(rng, t_len):
    return BivariateSeries(rng.normal(size=t_len), rng.normal(size=t_len))


def test_alignment_and_length():
    track = sw_track(_pair(np.random.default_rng(1), 20), 5)
    assert track.start_index == 5
    assert len(track) == 16
    assert list(track.time_indices()) == list(range(5, 21))


def test_default_window():
    track = sw_track(_pair(np.random.default_rng(2), 40))
    assert track.start_index == 15


def test_values_match_windowed_reference():
    rng = np.random.default_rng(3)
    pair = _pair(rng, 30)
    ws = 6
    track = sw_track(pair, ws)
    x = pair.first.values
    y = pair.second.values
    for t, v in track.items():
        want = statistics.correlation(
            x[t - ws : t].tolist(), y[t - ws : t].tolist()
        )
        assert v == pytest.approx(want, abs=1e-12)


def test_constant_window_yields_missing():
    x = [1.0, 1.0, 1.0, 1.0, 2.0, 3.0, 4.0, 5.0]
    y = [0.3, 1.2, -0.5, 0.8, 1.9, -0.2, 0.6, 1.1]
    track = sw_track(BivariateSeries(x, y), 3)
    # windows ending at t = 3, 4 see only the constant prefix of x
    assert track.values[0] is MISSING
    assert track.values[1] is MISSING
    assert all(v is not MISSING for v in track.values[2:])


def test_negation_antisymmetry_is_exact():
    rng = np.random.default_rng(4)
    x = rng.normal(size=25)
    y = rng.normal(size=25)
    base = sw_track(BivariateSeries(x, y), 7)
    flipped = sw_track(BivariateSeries(-x, y), 7)
    for v, w in zip(base.values, flipped.values):
        assert w == -v


def test_window_bounds():
    pair = _pair(np.random.default_rng(5), 10)
    with pytest.raises(InvalidInputError):
        sw_track(pair, 1)
    with pytest.raises(InvalidInputError):
        sw_track(pair, 11)
    assert len(sw_track(pair, 10)) == 1
