"""Two-stage volatility/correlation fit: filters, likelihoods, recoveries."""

import math

import numpy as np
import pytest

from dyncorr.core import BivariateSeries, InvalidInputError
from dyncorr.garch import (
    CONVERGED,
    DID_NOT_CONVERGE,
    DccParams,
    GarchParams,
    _dcc_rho,
    dcc_fit,
    dcc_track,
    garch_filter,
    garch_fit,
    garch_loglik,
)


def _params(omega, alpha, beta):
    return GarchParams(omega, alpha, beta, converged=True, loglik=0.0)


def simulate_garch(omega, alpha, beta, t_len, rng):
    sig2 = omega / (1.0 - alpha - beta)
    out = np.empty(t_len)
    for t in range(t_len):
        eps = math.sqrt(sig2) * rng.standard_normal()
        out[t] = eps
        sig2 = omega + alpha * eps * eps + beta * sig2
    return out


def test_param_validation():
    with pytest.raises(InvalidInputError):
        GarchParams(0.0, 0.1, 0.1, True, 0.0)
    with pytest.raises(InvalidInputError):
        GarchParams(1.0, -0.1, 0.1, True, 0.0)
    with pytest.raises(InvalidInputError):
        GarchParams(1.0, 0.5, 0.5, True, 0.0)
    with pytest.raises(InvalidInputError):
        DccParams(0.6, 0.4, np.eye(2), True, 0.0)
    with pytest.raises(InvalidInputError):
        DccParams(0.1, 0.1, np.array([[1.0, 0.2], [0.3, 1.0]]), True, 0.0)
    with pytest.raises(InvalidInputError):
        DccParams(0.1, 0.1, np.array([[2.0, 0.0], [0.0, 1.0]]), True, 0.0)


def test_filter_collapses_without_memory():
    eps = np.array([0.5, -1.5, 2.0, 0.1])
    sig2 = garch_filter(_params(0.7, 0.0, 0.0), eps)
    assert sig2[0] == pytest.approx(np.mean(eps**2))
    assert np.all(sig2[1:] == 0.7)


def test_filter_one_step_hand_value():
    # mean square of [1, -1] is exactly 1, so sigma2_2 = 0.1 + 0.5 * 1.0
    sig2 = garch_filter(_params(0.1, 0.0, 0.5), [1.0, -1.0])
    assert sig2[0] == 1.0
    assert sig2[1] == pytest.approx(0.6, abs=1e-15)


def test_filter_matches_direct_recursion():
    rng = np.random.default_rng(21)
    for _ in range(25):
        eps = rng.normal(size=40)
        omega = float(rng.uniform(0.01, 0.5))
        alpha = float(rng.uniform(0.0, 0.4))
        beta = float(rng.uniform(0.0, 0.95 - alpha))
        sig2 = garch_filter(_params(omega, alpha, beta), eps)
        want = np.mean(eps**2)
        assert sig2[0] == pytest.approx(want, abs=1e-14)
        for t in range(1, 40):
            want = omega + alpha * eps[t - 1] ** 2 + beta * want
            assert sig2[t] == pytest.approx(want, abs=1e-12)
        assert np.all(sig2[1:] >= omega)


def test_loglik_hand_value():
    ll = garch_loglik(_params(1.0, 0.0, 0.0), [1.0, 1.0])
    assert ll == pytest.approx(-1.0, abs=1e-15)


def test_loglik_peaks_at_mean_square():
    rng = np.random.default_rng(22)
    eps = rng.normal(size=200)
    best = float(np.mean(eps**2))
    at_best = garch_loglik(_params(best, 0.0, 0.0), eps)
    assert at_best > garch_loglik(_params(best + 0.1, 0.0, 0.0), eps)
    assert at_best > garch_loglik(_params(best - 0.1, 0.0, 0.0), eps)


def test_garch_fit_recovers_known_parameters():
    rng = np.random.default_rng(23)
    eps = simulate_garch(0.1, 0.1, 0.8, 5000, rng)
    params, resid = garch_fit(eps)
    assert params.converged
    assert params.omega == pytest.approx(0.1, abs=0.05)
    assert params.alpha == pytest.approx(0.1, abs=0.05)
    assert params.beta == pytest.approx(0.8, abs=0.05)
    assert resid.size == 5000
    # fitted likelihood dominates the canonical starting point
    e = eps - eps.mean()
    start = _params(0.05 * np.mean(e**2), 0.05, 0.90)
    assert params.loglik >= garch_loglik(start, e)


def test_garch_fit_iid_data_stays_stationary():
    rng = np.random.default_rng(24)
    x = rng.normal(size=1000)
    params, _ = garch_fit(x)
    assert params.converged
    assert params.alpha + params.beta < 1.0
    v = float(np.var(x))
    assert params.omega == pytest.approx(
        v * (1.0 - params.alpha - params.beta), rel=0.3
    )


def test_garch_fit_constant_series_does_not_converge():
    params, resid = garch_fit(np.ones(50))
    assert not params.converged
    assert (params.omega, params.alpha, params.beta) == (1.0, 0.0, 0.0)
    assert np.all(resid == 0.0)


def test_garch_fit_needs_minimum_length():
    with pytest.raises(InvalidInputError):
        garch_fit(np.random.default_rng(0).normal(size=29))


def test_correlation_recursion_collapses_when_static():
    rng = np.random.default_rng(25)
    z1 = rng.normal(size=60)
    z2 = rng.normal(size=60)
    rho = _dcc_rho(0.0, 0.0, 0.37, z1, z2)
    assert rho.shape == (60,)
    assert np.all(rho == 0.37)


def test_correlation_recursion_stays_positive_definite():
    rng = np.random.default_rng(26)
    for _ in range(1000):
        a = float(rng.uniform(0.0, 0.6))
        b = float(rng.uniform(0.0, 0.99 - a))
        s12 = float(rng.uniform(-0.95, 0.95))
        z1 = rng.normal(size=50)
        z2 = rng.normal(size=50)
        rho = _dcc_rho(a, b, s12, z1, z2)
        assert np.all(np.isfinite(rho))
        assert np.all(np.abs(rho) < 1.0)
        # leading minors of Q along the same path, by direct recursion
        q11 = q22 = 1.0
        q12 = s12
        assert q11 > 0 and q11 * q22 - q12 * q12 > 0
        got = [q12 / math.sqrt(q11 * q22)]
        c = 1.0 - a - b
        for t in range(1, 50):
            q11 = c + a * z1[t - 1] ** 2 + b * q11
            q22 = c + a * z2[t - 1] ** 2 + b * q22
            q12 = c * s12 + a * z1[t - 1] * z2[t - 1] + b * q12
            assert q11 > 0 and q22 > 0
            assert q11 * q22 - q12 * q12 > 0
            got.append(q12 / math.sqrt(q11 * q22))
        np.testing.assert_allclose(rho, got, atol=1e-12)


def test_dcc_fit_recovers_known_coupling():
    rng = np.random.default_rng(27)
    t_len, a, b, s12 = 3000, 0.2, 0.7, 0.3
    q11 = q22 = 1.0
    q12 = s12
    z = np.empty((t_len, 2))
    z_prev = np.zeros(2)
    for t in range(t_len):
        q11 = (1 - a - b) + a * z_prev[0] ** 2 + b * q11
        q22 = (1 - a - b) + a * z_prev[1] ** 2 + b * q22
        q12 = (1 - a - b) * s12 + a * z_prev[0] * z_prev[1] + b * q12
        rho = q12 / math.sqrt(q11 * q22)
        e = rng.standard_normal(2)
        z_prev = np.array(
            [e[0], rho * e[0] + math.sqrt(1.0 - rho * rho) * e[1]]
        )
        z[t] = z_prev
    fit = dcc_fit(z[:, 0], z[:, 1])
    assert fit.converged
    assert fit.a == pytest.approx(0.2, abs=0.1)
    assert fit.b == pytest.approx(0.7, abs=0.15)


def test_dcc_fit_identical_residuals_degenerate():
    z = np.random.default_rng(28).normal(size=100)
    fit = dcc_fit(z, z)
    assert not fit.converged
    assert fit.s_bar[0, 1] == 1.0


def test_track_constant_correlation_recovery():
    rng = np.random.default_rng(29)
    e = rng.standard_normal((1000, 2))
    x1 = e[:, 0]
    x2 = 0.5 * e[:, 0] + math.sqrt(1.0 - 0.25) * e[:, 1]
    report = dcc_track(BivariateSeries(x1, x2))
    assert report.status == CONVERGED
    assert float(np.mean(report.track.to_array())) == pytest.approx(0.5, abs=0.1)


def test_track_alignment_and_report_fields():
    rng = np.random.default_rng(30)
    pair = BivariateSeries(rng.normal(size=120), rng.normal(size=120))
    report = dcc_track(pair)
    assert report.status == CONVERGED
    assert report.garch_first.converged and report.garch_second.converged
    assert report.dcc.converged
    assert report.track.start_index == 1
    assert len(report.track) == 120


def test_track_identical_series_reports_dnc():
    x = np.random.default_rng(31).normal(size=80)
    report = dcc_track(BivariateSeries(x, x.copy()))
    assert report.status == DID_NOT_CONVERGE
    assert report.track is None


def test_track_needs_minimum_length():
    rng = np.random.default_rng(32)
    with pytest.raises(InvalidInputError):
        dcc_track(BivariateSeries(rng.normal(size=29), rng.normal(size=29)))
