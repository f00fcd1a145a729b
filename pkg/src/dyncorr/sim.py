"""Simulation designs: bivariate normal and clipped bivariate Cauchy draws
with a time-varying correlation profile p(t).

At each time t the pair is mean-zero with covariance

    [[2,        sqrt(6)*p(t)],
     [sqrt(6)*p(t),        3]]

so p(t) is exactly the correlation.  Profiles:

    zero      p(t) = 0
    sine(k)   p(t) = sin(t / delta), delta = 1024 / 2**k
    gauss(k)  p(t) = exp(-(t - 250)**2 / (2 * (15*k)**2)), peak 1 at t = 250

The Cauchy generator is elliptical: it draws a bivariate normal with unit
variances and correlation p(t) (the shape matrix of the bivariate Cauchy,
the convention used by standard correlation-parameterized samplers) and
divides by the square root of an independent chi-square(1) variate
(multivariate t with one degree of freedom), then clips each coordinate to
[-clip, clip].

Sampling uses numpy's default_rng (PCG64); a design is fully reproducible
from its seed.  Monte Carlo reps derive their seeds as seed + rep_index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BivariateSeries, InvalidInputError

__all__ = [
    "CorrelationProfile",
    "SimDesign",
    "DESIGN_NAMES",
    "design_profile",
    "cov_at",
    "profile_eval",
    "gen_normal_pair",
    "gen_cauchy_pair",
    "generate",
]

PROFILE_KINDS = ("zero", "sine", "gauss")
DISTRIBUTIONS = ("normal", "cauchy")

MIN_T_LEN = 30
DEFAULT_CLIP = 50.0

_GAUSS_CENTER = 250.0


@dataclass(frozen=True)
class CorrelationProfile:
    """True correlation curve p(t), evaluable at integer t >= 1."""

    kind: str
    k: int | None = None

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise InvalidInputError(f"unknown profile kind: {self.kind!r}")
        if self.kind == "zero":
            if self.k is not None:
                raise InvalidInputError("zero profile takes no k")
        else:
            if self.k is None or self.k < 1:
                raise InvalidInputError(f"{self.kind} profile needs integer k >= 1")

    def value_at(self, t) -> float:
        if self.kind == "zero":
            return 0.0
        if self.kind == "sine":
            delta = 1024.0 / 2**self.k
            return math.sin(t / delta)
        sigma = 15.0 * self.k
        return math.exp(-((t - _GAUSS_CENTER) ** 2) / (2.0 * sigma * sigma))

    def sample(self, t_len: int) -> np.ndarray:
        """Vector of p(t) for t = 1..t_len."""
        t = np.arange(1, t_len + 1, dtype=float)
        if self.kind == "zero":
            return np.zeros(t_len)
        if self.kind == "sine":
            delta = 1024.0 / 2**self.k
            return np.sin(t / delta)
        sigma = 15.0 * self.k
        return np.exp(-((t - _GAUSS_CENTER) ** 2) / (2.0 * sigma * sigma))


def profile_eval(profile: CorrelationProfile, t) -> float:
    """Closed-form evaluation of p(t)."""
    return profile.value_at(t)


# the benchmark scenarios: independent, two sine scales, two kernel widths
DESIGN_NAMES = ("d1", "d2a", "d2b", "d3a", "d3b")

_PROFILE_BY_DESIGN = {
    "d1": CorrelationProfile("zero"),
    "d2a": CorrelationProfile("sine", 3),
    "d2b": CorrelationProfile("sine", 4),
    "d3a": CorrelationProfile("gauss", 3),
    "d3b": CorrelationProfile("gauss", 4),
}


def design_profile(name: str) -> CorrelationProfile:
    """Profile for a named scenario (d1, d2a, d2b, d3a, d3b)."""
    try:
        return _PROFILE_BY_DESIGN[name]
    except KeyError:
        raise InvalidInputError(f"unknown design name: {name!r}") from None


@dataclass(frozen=True)
class SimDesign:
    profile: CorrelationProfile
    dist: str
    t_len: int
    seed: int
    clip: float = DEFAULT_CLIP

    def __post_init__(self):
        if self.dist not in DISTRIBUTIONS:
            raise InvalidInputError(f"unknown distribution: {self.dist!r}")
        if self.t_len < MIN_T_LEN:
            raise InvalidInputError(f"t_len must be >= {MIN_T_LEN}")
        if not (self.clip > 0):
            raise InvalidInputError("clip must be positive")
        if self.seed < 0:
            raise InvalidInputError("seed must be a nonnegative integer")


def cov_at(p: float) -> np.ndarray:
    """Per-time covariance matrix; PD for |p| < 1, singular at |p| = 1."""
    p = float(p)
    if not math.isfinite(p) or abs(p) > 1.0:
        raise InvalidInputError("correlation must lie in [-1, 1]")
    off = math.sqrt(6.0) * p
    return np.array([[2.0, off], [off, 3.0]])


def _correlated_normals(
    t_len: int, p: np.ndarray, v1: float, v2: float, rng: np.random.Generator
) -> np.ndarray:
    """(T, 2) array of zero-mean normals with variances (v1, v2) and correlation p[t]."""
    off = math.sqrt(v1 * v2) * p
    covs = np.empty((t_len, 2, 2))
    covs[:, 0, 0] = v1
    covs[:, 1, 1] = v2
    covs[:, 0, 1] = off
    covs[:, 1, 0] = off
    # singular at |p| = 1; a tiny diagonal jitter keeps Cholesky defined
    at_boundary = np.abs(p) >= 1.0
    if np.any(at_boundary):
        covs[at_boundary, 0, 0] += 1e-12
        covs[at_boundary, 1, 1] += 1e-12
    chol = np.linalg.cholesky(covs)
    z = rng.standard_normal((t_len, 2))
    return np.einsum("tij,tj->ti", chol, z)


def gen_normal_pair(design: SimDesign) -> BivariateSeries:
    """Bivariate normal draws along the design's correlation profile."""
    if design.dist != "normal":
        raise InvalidInputError("design.dist must be 'normal'")
    rng = np.random.default_rng(design.seed)
    p = design.profile.sample(design.t_len)
    x = _correlated_normals(design.t_len, p, 2.0, 3.0, rng)
    return BivariateSeries(x[:, 0], x[:, 1])


def gen_cauchy_pair(design: SimDesign) -> BivariateSeries:
    """Clipped bivariate Cauchy draws along the design's correlation profile.

    The underlying normal has unit variances, so p(t) is the correlation
    parameter of the elliptical Cauchy shape matrix.
    """
    if design.dist != "cauchy":
        raise InvalidInputError("design.dist must be 'cauchy'")
    rng = np.random.default_rng(design.seed)
    p = design.profile.sample(design.t_len)
    z = _correlated_normals(design.t_len, p, 1.0, 1.0, rng)
    u = rng.chisquare(1, size=design.t_len)
    x = z / np.sqrt(u)[:, None]
    np.clip(x, -design.clip, design.clip, out=x)
    return BivariateSeries(x[:, 0], x[:, 1])


def generate(design: SimDesign) -> BivariateSeries:
    """Dispatch on design.dist."""
    if design.dist == "normal":
        return gen_normal_pair(design)
    return gen_cauchy_pair(design)
