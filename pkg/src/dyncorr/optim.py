"""Derivative-free simplex minimizer used by the likelihood fits.

Standard Nelder-Mead with reflection 1, expansion 2, contraction 0.5 and
shrink 0.5.  The search stops once the spread of function values across the
simplex falls below ``tol`` while the simplex itself is geometrically small
(coordinate spread below sqrt(tol) relative to scale), or after ``max_iter``
iterations (reported as not converged).  The function-value test alone is
not enough: a simplex straddling a symmetric minimum can tie on f while
still far from the optimum.  The returned minimum never exceeds f(x0): the
best vertex is preserved by every simplex move.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import InvalidInputError

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 2000

_REFLECT = 1.0
_EXPAND = 2.0
_CONTRACT = 0.5
_SHRINK = 0.5


@dataclass(frozen=True)
class OptimResult:
    x_min: np.ndarray
    f_min: float
    iterations: int
    converged: bool


def _initial_simplex(x0: np.ndarray) -> np.ndarray:
    n = x0.size
    simplex = np.tile(x0, (n + 1, 1))
    for k in range(n):
        simplex[k + 1, k] += max(0.05, 0.05 * abs(x0[k]))
    return simplex


def minimize(f, x0, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> OptimResult:
    """Minimize ``f`` starting from ``x0``.

    ``f`` must return finite values (use a large finite penalty for infeasible
    regions).  A non-finite value at ``x0`` itself is rejected outright.
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    if x0.ndim != 1 or x0.size < 1:
        raise InvalidInputError("x0 must be a non-empty vector")
    if not np.all(np.isfinite(x0)):
        raise InvalidInputError("x0 must be finite")
    if not (tol > 0):
        raise InvalidInputError("tol must be positive")
    if max_iter < 1:
        raise InvalidInputError("max_iter must be >= 1")

    f0 = float(f(x0))
    if not np.isfinite(f0):
        raise InvalidInputError("objective is non-finite at x0")

    n = x0.size
    simplex = _initial_simplex(x0)
    fvals = np.empty(n + 1)
    fvals[0] = f0
    for k in range(1, n + 1):
        fvals[k] = f(simplex[k])

    x_tol = math.sqrt(tol)
    iterations = 0
    converged = False
    while True:
        order = np.argsort(fvals, kind="stable")
        simplex = simplex[order]
        fvals = fvals[order]

        f_spread = fvals[-1] - fvals[0]
        x_spread = float(np.max(np.abs(simplex[1:] - simplex[0])))
        x_scale = 1.0 + float(np.max(np.abs(simplex[0])))
        if f_spread < tol and x_spread < x_tol * x_scale:
            converged = True
            break
        if iterations >= max_iter:
            break
        iterations += 1

        centroid = simplex[:-1].mean(axis=0)
        xr = centroid + _REFLECT * (centroid - simplex[-1])
        fr = float(f(xr))

        if fr < fvals[0]:
            xe = centroid + _EXPAND * (centroid - simplex[-1])
            fe = float(f(xe))
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
            continue

        if fr < fvals[-1]:
            # outside contraction, between reflection point and centroid
            xc = centroid + _CONTRACT * (xr - centroid)
            fc = float(f(xc))
            if fc <= fr:
                simplex[-1], fvals[-1] = xc, fc
                continue
        else:
            # inside contraction, between worst point and centroid
            xc = centroid + _CONTRACT * (simplex[-1] - centroid)
            fc = float(f(xc))
            if fc < fvals[-1]:
                simplex[-1], fvals[-1] = xc, fc
                continue

        # contraction failed: shrink every vertex toward the best one
        for k in range(1, n + 1):
            simplex[k] = simplex[0] + _SHRINK * (simplex[k] - simplex[0])
            fvals[k] = f(simplex[k])

    best = int(np.argmin(fvals))
    return OptimResult(
        x_min=simplex[best].copy(),
        f_min=float(fvals[best]),
        iterations=iterations,
        converged=converged,
    )
