"""Scenario generators: profiles, per-time laws, determinism, clipping."""

import math

import numpy as np
import pytest

from dyncorr.core import InvalidInputError
from dyncorr.sim import (
    DESIGN_NAMES,
    CorrelationProfile,
    SimDesign,
    cov_at,
    design_profile,
    gen_cauchy_pair,
    gen_normal_pair,
    generate,
    profile_eval,
)


def test_profile_closed_forms():
    assert profile_eval(CorrelationProfile("zero"), 123) == 0.0
    assert profile_eval(CorrelationProfile("sine", 3), 128) == math.sin(1.0)
    assert profile_eval(CorrelationProfile("gauss", 3), 250) == 1.0
    assert profile_eval(CorrelationProfile("gauss", 3), 295) == math.exp(-0.5)


def test_profile_sample_matches_pointwise_eval():
    for profile in (
        CorrelationProfile("zero"),
        CorrelationProfile("sine", 4),
        CorrelationProfile("gauss", 4),
    ):
        vec = profile.sample(300)
        for t in (1, 2, 100, 250, 300):
            assert vec[t - 1] == pytest.approx(profile.value_at(t), abs=1e-14)


def test_profile_ranges():
    sine = CorrelationProfile("sine", 4).sample(2000)
    gauss = CorrelationProfile("gauss", 3).sample(600)
    assert np.all(np.abs(sine) <= 1.0)
    assert np.all(gauss > 0.0) and np.all(gauss <= 1.0)
    assert np.argmax(gauss) == 249  # peak at t = 250


def test_profile_validation():
    with pytest.raises(InvalidInputError):
        CorrelationProfile("triangle")
    with pytest.raises(InvalidInputError):
        CorrelationProfile("zero", 3)
    with pytest.raises(InvalidInputError):
        CorrelationProfile("sine")
    with pytest.raises(InvalidInputError):
        CorrelationProfile("gauss", 0)


def test_named_designs():
    assert DESIGN_NAMES == ("d1", "d2a", "d2b", "d3a", "d3b")
    assert design_profile("d1") == CorrelationProfile("zero")
    assert design_profile("d2b") == CorrelationProfile("sine", 4)
    assert design_profile("d3a") == CorrelationProfile("gauss", 3)
    with pytest.raises(InvalidInputError):
        design_profile("d9")


def test_design_validation():
    profile = CorrelationProfile("zero")
    with pytest.raises(InvalidInputError):
        SimDesign(profile, "poisson", 300, 0)
    with pytest.raises(InvalidInputError):
        SimDesign(profile, "normal", 29, 0)
    with pytest.raises(InvalidInputError):
        SimDesign(profile, "normal", 300, -1)
    with pytest.raises(InvalidInputError):
        SimDesign(profile, "cauchy", 300, 0, clip=0.0)


def test_covariance_matrix():
    m = cov_at(0.5)
    assert m[0, 0] == 2.0 and m[1, 1] == 3.0
    assert m[0, 1] == m[1, 0] == math.sqrt(6.0) * 0.5
    assert np.linalg.det(cov_at(0.0)) == pytest.approx(6.0)
    assert np.linalg.det(cov_at(1.0)) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(InvalidInputError):
        cov_at(1.5)
    with pytest.raises(InvalidInputError):
        cov_at(math.nan)


def test_normal_marginals_and_independence():
    design = SimDesign(CorrelationProfile("zero"), "normal", 10000, seed=42)
    pair = gen_normal_pair(design)
    x1 = pair.first.values
    x2 = pair.second.values
    assert abs(float(np.var(x1)) - 2.0) < 0.15
    assert abs(float(np.var(x2)) - 3.0) < 0.15
    assert abs(float(np.corrcoef(x1, x2)[0, 1])) < 0.05


def test_normal_correlation_at_kernel_peak():
    # the per-time law at t = 250 has correlation p(250) = 1
    design = SimDesign(CorrelationProfile("gauss", 3), "normal", 260, seed=0)
    xs, ys = [], []
    for r in range(2000):
        pair = gen_normal_pair(
            SimDesign(design.profile, "normal", 260, seed=design.seed + r)
        )
        xs.append(pair.first.values[249])
        ys.append(pair.second.values[249])
    got = float(np.corrcoef(xs, ys)[0, 1])
    assert got == pytest.approx(1.0, abs=0.05)


def test_generators_are_deterministic():
    for dist in ("normal", "cauchy"):
        design = SimDesign(CorrelationProfile("sine", 3), dist, 200, seed=99)
        a = generate(design)
        b = generate(design)
        assert np.array_equal(a.first.values, b.first.values)
        assert np.array_equal(a.second.values, b.second.values)


def test_distinct_seeds_differ():
    d0 = SimDesign(CorrelationProfile("zero"), "normal", 100, seed=1)
    d1 = SimDesign(CorrelationProfile("zero"), "normal", 100, seed=2)
    assert not np.array_equal(
        generate(d0).first.values, generate(d1).first.values
    )


def test_cauchy_clipping():
    design = SimDesign(CorrelationProfile("zero"), "cauchy", 1000, seed=3)
    pair = gen_cauchy_pair(design)
    both = np.concatenate([pair.first.values, pair.second.values])
    assert np.all(np.abs(both) <= 50.0)
    assert np.max(np.abs(both)) == 50.0  # heavy tails hit the cap
    # re-clipping changes nothing
    assert np.array_equal(np.clip(both, -50.0, 50.0), both)


def test_cauchy_unit_scale_marginals():
    # |standard Cauchy| has median 1; clipping far in the tail leaves it alone
    design = SimDesign(CorrelationProfile("zero"), "cauchy", 200000, seed=3)
    pair = gen_cauchy_pair(design)
    assert float(np.median(np.abs(pair.first.values))) == pytest.approx(
        1.0, abs=0.02
    )
    assert float(np.median(np.abs(pair.second.values))) == pytest.approx(
        1.0, abs=0.02
    )


def test_generator_dispatch_checks_distribution():
    normal = SimDesign(CorrelationProfile("zero"), "normal", 100, seed=0)
    cauchy = SimDesign(CorrelationProfile("zero"), "cauchy", 100, seed=0)
    with pytest.raises(InvalidInputError):
        gen_normal_pair(cauchy)
    with pytest.raises(InvalidInputError):
        gen_cauchy_pair(normal)
    assert generate(normal).t_len == 100
    assert generate(cauchy).t_len == 100
