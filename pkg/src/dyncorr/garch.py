"""Two-stage maximum-likelihood DCC(1,1) over per-series GARCH(1,1).

Stage 1 fits each series with a GARCH(1,1) variance recursion

    sigma2_t = omega + alpha * eps_{t-1}^2 + beta * sigma2_{t-1}

under the Gaussian quasi-likelihood -1/2 sum[log sigma2_t + eps_t^2/sigma2_t],
with sigma2_1 set to the sample variance of the demeaned series.  Stage 2
couples the standardized residuals z_t = eps_t/sigma_t through the DCC(1,1)
recursion

    Q_t = (1 - a - b) * S_bar + a * z_{t-1} z_{t-1}' + b * Q_{t-1}
    rho_t = Q_{12,t} / sqrt(Q_{11,t} Q_{22,t})

with Q_1 = S_bar, the sample correlation matrix of the residuals.  Both
stages run unconstrained Nelder-Mead over smooth reparameterizations that
enforce omega > 0, alpha, beta >= 0 and alpha + beta < 1 structurally (and
likewise for a, b).  Fits report convergence instead of raising: a fit that
stalls or lands on a degenerate likelihood comes back converged=False, and
dcc_track surfaces that as DID_NOT_CONVERGE.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .core import (
    BivariateSeries,
    CorrelationTrack,
    InvalidInputError,
    NumericalFailure,
    as_series,
)
from .optim import OptimResult, minimize

__all__ = [
    "GarchParams",
    "DccParams",
    "DccFitReport",
    "CONVERGED",
    "DID_NOT_CONVERGE",
    "MIN_FIT_LENGTH",
    "garch_filter",
    "garch_loglik",
    "garch_fit",
    "dcc_fit",
    "dcc_track",
]

MIN_FIT_LENGTH = 30

CONVERGED = "converged"
DID_NOT_CONVERGE = "did_not_converge"

# ceiling on alpha + beta (and a + b): keeps the persistence sum strictly
# below 1 so the reparameterized search space is unconstrained
_CAP = 0.999

# finite sentinel returned to the optimizer from infeasible evaluations
_PENALTY = 1e10

_INIT_ARCH = 0.05
_INIT_GARCH = 0.90


@dataclass(frozen=True)
class GarchParams:
    omega: float
    alpha: float
    beta: float
    converged: bool
    loglik: float

    def __post_init__(self):
        if not (self.omega > 0):
            raise InvalidInputError("omega must be positive")
        if self.alpha < 0 or self.beta < 0:
            raise InvalidInputError("alpha and beta must be nonnegative")
        if not (self.alpha + self.beta < 1):
            raise InvalidInputError("alpha + beta must be < 1")


@dataclass(frozen=True, eq=False)
class DccParams:
    a: float
    b: float
    s_bar: np.ndarray
    converged: bool
    loglik: float

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise InvalidInputError("a and b must be nonnegative")
        if not (self.a + self.b < 1):
            raise InvalidInputError("a + b must be < 1")
        s = np.asarray(self.s_bar, dtype=float)
        if s.shape != (2, 2):
            raise InvalidInputError("s_bar must be 2x2")
        if not (s[0, 0] == 1.0 and s[1, 1] == 1.0 and s[0, 1] == s[1, 0]):
            raise InvalidInputError("s_bar must be symmetric with unit diagonal")
        if abs(s[0, 1]) > 1.0:
            raise InvalidInputError("s_bar off-diagonal must lie in [-1, 1]")
        s.setflags(write=False)
        object.__setattr__(self, "s_bar", s)


@dataclass(frozen=True, eq=False)
class DccFitReport:
    garch_first: GarchParams
    garch_second: GarchParams
    dcc: DccParams | None
    track: CorrelationTrack | None
    status: str


def _eps_array(eps) -> np.ndarray:
    return as_series(eps).values


def garch_filter(params: GarchParams, eps) -> np.ndarray:
    """Conditional variance path of a demeaned series under fixed parameters.

    sigma2_1 is the sample variance of eps (the mean-square, since eps is
    demeaned by contract); later values follow the recursion and are
    therefore bounded below by omega.
    """
    e = _eps_array(eps)
    s0 = float(np.mean(e * e))
    sig2 = np.empty(e.size)
    sig2[0] = s0
    # linear recursion sigma2_t = u_{t-1} + beta*sigma2_{t-1},
    # u_t = omega + alpha*eps_t^2, evaluated as an IIR filter
    drive = params.omega + params.alpha * e[:-1] ** 2
    sig2[1:] = lfilter([1.0], [1.0, -params.beta], drive, zi=[params.beta * s0])[0]
    if not np.all(np.isfinite(sig2)):
        raise NumericalFailure("variance recursion produced non-finite values")
    return sig2


def garch_loglik(params: GarchParams, eps) -> float:
    """Gaussian quasi-log-likelihood, additive constant dropped."""
    e = _eps_array(eps)
    sig2 = garch_filter(params, e)
    if np.any(sig2 <= 0):
        raise NumericalFailure("nonpositive conditional variance")
    return float(-0.5 * np.sum(np.log(sig2) + e * e / sig2))


def _softmax(v: np.ndarray) -> np.ndarray:
    shifted = np.exp(v - np.max(v))
    return shifted / np.sum(shifted)


def _pack_simplex_pair(first: float, second: float) -> np.ndarray:
    """Unconstrained coords whose softmax reproduces (first, second)/_CAP."""
    rest = 1.0 - (first + second) / _CAP
    return np.log(np.array([first / _CAP, second / _CAP, rest]))


def _unpack_simplex_pair(v: np.ndarray) -> tuple[float, float]:
    sig = _softmax(v)
    return _CAP * float(sig[0]), _CAP * float(sig[1])


def _garch_objective(theta: np.ndarray, e: np.ndarray, s0: float) -> float:
    omega = math.exp(theta[0]) if theta[0] < 700 else math.inf
    if not math.isfinite(omega) or omega <= 0:
        return _PENALTY
    alpha, beta = _unpack_simplex_pair(theta[1:])
    sig2 = np.empty(e.size)
    sig2[0] = s0
    drive = omega + alpha * e[:-1] ** 2
    sig2[1:] = lfilter([1.0], [1.0, -beta], drive, zi=[beta * s0])[0]
    if not np.all(sig2 > 0) or not np.all(np.isfinite(sig2)):
        return _PENALTY
    nll = 0.5 * np.sum(np.log(sig2) + e * e / sig2)
    if not np.isfinite(nll):
        return _PENALTY
    return float(nll)


def garch_fit(x) -> tuple[GarchParams, np.ndarray]:
    """Fit GARCH(1,1) to a series by quasi-ML; never raises on non-convergence.

    Returns the fitted parameters (with a convergence flag) and the
    standardized residuals z_t = eps_t / sigma_t.
    """
    ts = as_series(x)
    if ts.t_len < MIN_FIT_LENGTH:
        raise InvalidInputError(f"need at least {MIN_FIT_LENGTH} observations")
    e = ts.values - ts.values.mean()
    s0 = float(np.mean(e * e))
    if np.ptp(e) == 0.0 or s0 <= 0.0:
        # constant input: variance model is unidentifiable
        params = GarchParams(1.0, 0.0, 0.0, converged=False, loglik=math.nan)
        return params, np.zeros(e.size)

    omega0 = (1.0 - _INIT_ARCH - _INIT_GARCH) * s0
    theta0 = np.concatenate(
        [[math.log(omega0)], _pack_simplex_pair(_INIT_ARCH, _INIT_GARCH)]
    )
    result = minimize(lambda th: _garch_objective(th, e, s0), theta0)
    omega = math.exp(result.x_min[0])
    alpha, beta = _unpack_simplex_pair(result.x_min[1:])
    loglik = -result.f_min
    converged = bool(
        result.converged and math.isfinite(loglik) and result.f_min < _PENALTY
    )
    params = GarchParams(
        omega, alpha, beta, converged=converged,
        loglik=loglik if math.isfinite(loglik) else math.nan,
    )
    sig2 = garch_filter(params, e)
    return params, e / np.sqrt(sig2)


def _dcc_rho(a: float, b: float, s12: float, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """Correlation path of the Q-recursion with Q_1 = S_bar."""
    c = 1.0 - a - b
    ar = [1.0, -b]

    def rec(drive: np.ndarray, s_entry: float) -> np.ndarray:
        # Q_t = c*s_entry + a*drive_{t-1} + b*Q_{t-1}, started at Q_1 = s_entry
        out = np.empty(drive.size + 1)
        out[0] = s_entry
        out[1:] = lfilter([1.0], ar, c * s_entry + a * drive, zi=[b * s_entry])[0]
        return out

    q11 = rec(z1[:-1] ** 2, 1.0)
    q22 = rec(z2[:-1] ** 2, 1.0)
    q12 = rec(z1[:-1] * z2[:-1], s12)
    return q12 / np.sqrt(q11 * q22)


def _dcc_objective(theta: np.ndarray, s12: float, z1: np.ndarray, z2: np.ndarray) -> float:
    a, b = _unpack_simplex_pair(theta)
    rho = _dcc_rho(a, b, s12, z1, z2)
    one_minus = 1.0 - rho * rho
    if np.any(one_minus <= 1e-15) or not np.all(np.isfinite(one_minus)):
        return _PENALTY
    nll = 0.5 * np.sum(
        np.log(one_minus) + (z1 * z1 + z2 * z2 - 2.0 * rho * z1 * z2) / one_minus
    )
    if not np.isfinite(nll):
        return _PENALTY
    return float(nll)


def dcc_fit(z1, z2) -> DccParams:
    """Stage-2 fit of (a, b) over standardized residual pairs."""
    z1 = np.asarray(z1, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    if z1.ndim != 1 or z2.ndim != 1 or z1.size != z2.size:
        raise InvalidInputError("residual vectors must be 1-d and equal length")
    if z1.size < 2:
        raise InvalidInputError("need at least 2 residual pairs")

    degenerate = (
        np.ptp(z1) == 0.0
        or np.ptp(z2) == 0.0
        or not np.all(np.isfinite(z1))
        or not np.all(np.isfinite(z2))
    )
    if not degenerate:
        s12 = float(np.corrcoef(z1, z2)[0, 1])
        s12 = min(1.0, max(-1.0, s12))
        degenerate = not math.isfinite(s12) or abs(s12) >= 1.0 - 1e-10
    else:
        s12 = 0.0
    s_bar = np.array([[1.0, s12], [s12, 1.0]])
    if degenerate:
        return DccParams(0.0, 0.0, s_bar, converged=False, loglik=math.nan)

    theta0 = _pack_simplex_pair(_INIT_ARCH, _INIT_GARCH)
    result = minimize(lambda th: _dcc_objective(th, s12, z1, z2), theta0)
    a, b = _unpack_simplex_pair(result.x_min)
    loglik = -result.f_min
    converged = bool(
        result.converged and math.isfinite(loglik) and result.f_min < _PENALTY
    )
    return DccParams(
        a, b, s_bar, converged=converged,
        loglik=loglik if math.isfinite(loglik) else math.nan,
    )


def dcc_track(series: BivariateSeries) -> DccFitReport:
    """Full two-stage DCC correlation track with explicit convergence status.

    The track covers t = 1..T (start_index 1).  If any stage fails, the
    report carries status DID_NOT_CONVERGE and no track.
    """
    if series.t_len < MIN_FIT_LENGTH:
        raise InvalidInputError(f"need at least {MIN_FIT_LENGTH} observations")
    g1, res1 = garch_fit(series.first)
    g2, res2 = garch_fit(series.second)
    if not (g1.converged and g2.converged):
        return DccFitReport(g1, g2, None, None, DID_NOT_CONVERGE)
    dcc = dcc_fit(res1, res2)
    if not dcc.converged:
        return DccFitReport(g1, g2, dcc, None, DID_NOT_CONVERGE)
    rho = _dcc_rho(dcc.a, dcc.b, float(dcc.s_bar[0, 1]), res1, res2)
    rho = np.clip(rho, -1.0, 1.0)
    track = CorrelationTrack(start_index=1, values=rho)
    return DccFitReport(g1, g2, dcc, track, CONVERGED)
