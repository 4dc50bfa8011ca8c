import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from lomo.grid import GridFunction, make_domain
from lomo.rearrangement import (
    DecreasingProfile,
    decreasing_rearrangement,
    distribution_function,
    double_star,
    sum_decomposition,
)

from oracles import rearrangement_by_levels


def unit_ramp(N=8):
    """``f(x) = x`` on ``[0, 1)``, realized on the box ``[-1/2, 1/2)``."""
    dom = make_domain(1, 1.0, N)
    return GridFunction.from_callable(dom, lambda x: x + 0.5)


def indicator(dom, half_width):
    return GridFunction.from_callable(dom, lambda x: (np.abs(x) < half_width).astype(float))


samples_1d = arrays(np.float64, 32, elements=st.floats(-5, 5, allow_nan=False, width=64))


# -- distribution function -------------------------------------------------------

def test_distribution_function_examples():
    dom = make_domain(1, 4.0, 64)
    chi = indicator(dom, 0.5)
    assert distribution_function(chi, 0.5) == pytest.approx(1.0)
    assert distribution_function(GridFunction.constant(dom, 0.0), 0.3) == 0.0
    f = unit_ramp(64)
    assert distribution_function(f, 0.5) == pytest.approx(0.5, abs=f.domain.cell_volume)
    with pytest.raises(ValueError):
        distribution_function(f, -1.0)


# -- rearrangement -------------------------------------------------------------------

def test_rearrangement_indicator_and_constant():
    dom = make_domain(1, 4.0, 64)
    p = decreasing_rearrangement(indicator(dom, 0.5))
    assert p(0.5) == 1.0 and p(0.999) == 1.0 and p(1.0) == 0.0
    c = decreasing_rearrangement(GridFunction.constant(dom, 3.0))
    assert np.all(c(np.linspace(0.01, 3.99, 50)) == 3.0)
    assert c(4.0) == 0.0


def test_rearrangement_ramp_sorting_oracle():
    f = unit_ramp(8)
    p = decreasing_rearrangement(f)
    expect = (np.arange(8)[::-1] + 0.5) / 8
    assert np.allclose(p.values, expect)
    assert p.values[0] == pytest.approx(0.9375) and p.values[1] == pytest.approx(0.8125)


@settings(max_examples=60, deadline=None)
@given(samples_1d, st.floats(0.0, 4.0))
def test_rearrangement_matches_level_oracle(s, t):
    dom = make_domain(1, 4.0, 32)
    p = decreasing_rearrangement(GridFunction(dom, s))
    assert p(t) == rearrangement_by_levels(s, dom.cell_volume, t)


@settings(max_examples=60, deadline=None)
@given(samples_1d, st.floats(0.0, 5.0))
def test_equimeasurable(s, level):
    dom = make_domain(1, 4.0, 32)
    f = GridFunction(dom, s)
    p = decreasing_rearrangement(f)
    d_star = np.sum(np.diff(p.breakpoints, prepend=0.0)[p.values > level])
    assert d_star == pytest.approx(distribution_function(f, level), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(samples_1d, st.integers(0, 2 ** 32 - 1))
def test_permutation_invariance(s, seed):
    dom = make_domain(1, 4.0, 32)
    perm = np.random.default_rng(seed).permutation(32)
    a = decreasing_rearrangement(GridFunction(dom, s))
    b = decreasing_rearrangement(GridFunction(dom, s[perm]))
    assert np.array_equal(a.values, b.values)


@settings(max_examples=40, deadline=None)
@given(samples_1d, st.sampled_from([1.0, 2.0, 3.5]))
def test_power_integral_identity(s, p):
    dom = make_domain(1, 4.0, 32)
    f = GridFunction(dom, s)
    lhs = f.integral(p)
    rhs = decreasing_rearrangement(f).power_integral(p)
    assert rhs == pytest.approx(lhs, rel=1e-12, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(samples_1d, samples_1d)
def test_subadditivity_all_breakpoints(s1, s2):
    dom = make_domain(1, 4.0, 32)
    f, g = GridFunction(dom, s1), GridFunction(dom, s2)
    t = dom.cell_volume * np.arange(1, 33)
    lhs = decreasing_rearrangement(f + g)(t)
    rhs = decreasing_rearrangement(f)(t / 2) + decreasing_rearrangement(g)(t / 2)
    assert np.all(lhs <= rhs)


def test_subadditivity_with_zero_is_monotonicity():
    dom = make_domain(1, 4.0, 32)
    f = GridFunction.from_callable(dom, lambda x: np.exp(-x * x))
    p = decreasing_rearrangement(f)
    t = dom.cell_volume * np.arange(1, 33)
    assert np.all(p(t) <= p(t / 2))


# -- f** ---------------------------------------------------------------------------

def test_double_star_examples():
    m = 0.75
    p = DecreasingProfile.indicator(m)
    t = np.array([0.1, 0.5, 0.75, 1.0, 3.0])
    assert np.allclose(double_star(p, t), np.where(t <= m, 1.0, m / t))
    c = DecreasingProfile.indicator(4.0, 2.0)
    assert np.allclose(double_star(c, [0.1, 1.0, 4.0]), 2.0)
    f = unit_ramp(64)
    assert double_star(decreasing_rearrangement(f), 1.0) == pytest.approx(f.samples.mean())
    with pytest.raises(ValueError):
        double_star(p, 0.0)


@settings(max_examples=40, deadline=None)
@given(samples_1d)
def test_double_star_dominates_and_decreases(s):
    dom = make_domain(1, 4.0, 32)
    p = decreasing_rearrangement(GridFunction(dom, s))
    t = np.linspace(0.01, 6.0, 300)
    ds = p.double_star(t)
    assert np.all(np.diff(ds) <= 1e-12 * max(1.0, ds.max()))
    assert np.all(ds >= p(t) - 1e-12 * max(1.0, ds.max()))


def test_sup_over_sets_by_enumeration():
    from itertools import combinations

    dom = make_domain(1, 2.0, 8)
    f = GridFunction(dom, np.array([0.3, -2.0, 1.1, 0.0, 0.7, -0.7, 1.5, 0.2]))
    p = decreasing_rearrangement(f)
    a = np.abs(f.samples)
    for k in range(1, 9):
        best = max(sum(a[list(c)]) for c in combinations(range(8), k)) * dom.cell_volume
        t = k * dom.cell_volume
        assert t * p.double_star(t) == pytest.approx(best, rel=1e-14)


# -- profiles --------------------------------------------------------------------------

def test_profile_validation():
    with pytest.raises(ValueError):
        DecreasingProfile([1.0, 0.5], [1.0, 0.5])
    with pytest.raises(ValueError):
        DecreasingProfile([0.5, 1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        DecreasingProfile([0.5, 1.0], [1.0, -0.5])
    with pytest.raises(ValueError):
        DecreasingProfile([], [])


def test_profile_right_continuous():
    p = DecreasingProfile([1.0, 2.0], [3.0, 1.0])
    assert p(0.5) == 3.0 and p(1.0) == 1.0 and p(2.0) == 0.0
    assert p.integral(1.5) == pytest.approx(3.5)
    assert p.total == pytest.approx(4.0)
    assert p.support == 2.0


def test_profile_truncate_dilate_roundtrip():
    p = DecreasingProfile([0.5, 1.0, 2.0], [3.0, 2.0, 1.0])
    q = p.truncate(1.5)
    assert np.array_equal(q.breakpoints, [0.5, 1.0, 1.5])
    assert np.array_equal(q.values, [3.0, 2.0, 1.0])
    d = p.dilate(2.0)
    assert d.integral(1.0) == pytest.approx(p.integral(2.0) / 2)
    r = DecreasingProfile.from_dict(p.to_dict())
    assert np.array_equal(r.breakpoints, p.breakpoints)
    assert np.array_equal(r.values, p.values)


def test_weak_sup_is_left_limit_supremum():
    p = DecreasingProfile([1.0, 4.0], [2.0, 1.0])
    # sup_t t^(1/2) phi(t) approached at t -> 1- (value 2) and t -> 4- (value 2)
    assert p.weak_sup(0.5) == pytest.approx(2.0)
    t = np.linspace(1e-4, 5, 100001)
    assert p.weak_sup(0.5) >= np.max(t ** 0.5 * p(t))


# -- decomposition ---------------------------------------------------------------------

def test_sum_decomposition_examples():
    dom = make_domain(1, 4.0, 64)
    f = GridFunction.from_callable(dom, lambda x: np.sin(3 * x) * np.exp(-x * x))
    # below one cell the cut level is max|f|: nothing sticks out above it
    g, h = sum_decomposition(f, 1e-9)
    assert not np.any(g.values)
    assert np.array_equal(h.values, f.values)
    # past the whole box the cut level is 0: everything is peak
    g, h = sum_decomposition(f, dom.measure)
    assert not np.any(h.values)
    assert np.array_equal(g.values, f.values)
    chi = indicator(dom, 0.5)
    g, h = sum_decomposition(chi, 0.5)
    assert not np.any(g.values)


def test_sum_decomposition_ramp():
    f = unit_ramp(64)
    t = 0.5
    g, h = sum_decomposition(f, t)
    assert np.allclose(g.values + h.values, f.values, rtol=0, atol=1e-15)
    fs = decreasing_rearrangement(f)
    hs = decreasing_rearrangement(h)
    grid = f.domain.cell_volume * (np.arange(64) + 0.5)
    assert np.allclose(hs(grid), np.minimum(fs(grid), fs(t)))


@settings(max_examples=40, deadline=None)
@given(samples_1d, st.floats(0.01, 4.0))
def test_sum_decomposition_property(s, t):
    dom = make_domain(1, 4.0, 32)
    f = GridFunction(dom, s)
    g, h = sum_decomposition(f, t)
    assert np.allclose(g.values + h.values, f.values, rtol=1e-15, atol=0)
    fs = decreasing_rearrangement(f)
    grid = dom.cell_volume * (np.arange(32) + 0.5)
    assert np.allclose(decreasing_rearrangement(h)(grid), np.minimum(fs(grid), fs(t)))
