import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakdiss.specfun import DomainError
from weakdiss.zones import (
    DecayPrediction,
    DualPair,
    UnboundedMultiplier,
    Zone,
    ZoneConfig,
    bump_chi,
    classify,
    cutoff_psi,
    cutoffs,
    duhamel_kernel_prediction,
    dyadic_weights,
    energy_decay_alpha,
    energy_op_prediction,
    energy_op_prediction_from_gap,
    lp_lq_prediction,
    smooth_step,
    solution_op_prediction,
    sup_norm_prediction,
)

K1 = ZoneConfig()


def test_classify_examples():
    assert classify(K1, 0.0, 2.0) is Zone.Z1
    assert classify(K1, 9.0, 0.05) is Zone.Z3
    assert classify(K1, 9.0, 0.5) is Zone.Z2


def test_classify_boundaries_take_lowest_index():
    assert classify(K1, 3.0, 1.0) is Zone.Z1
    assert classify(K1, 1.0, 0.5) is Zone.Z2
    assert classify(ZoneConfig(2.0), 0.0, 1.0) is Zone.Z3
    with pytest.raises(DomainError):
        classify(K1, -1.0, 1.0)
    with pytest.raises(DomainError):
        ZoneConfig(0.0)


@settings(max_examples=300, deadline=None)
@given(st.floats(0.0, 1e6), st.floats(0.0, 1e3), st.floats(0.1, 10.0))
def test_zone_exclusivity(t, r, K):
    cfg = ZoneConfig(K)
    z = classify(cfg, t, r)
    if z is Zone.Z1:
        assert r >= K
    elif z is Zone.Z2:
        assert r < K <= (1 + t) * r
    else:
        assert (1 + t) * r < K


def test_cutoff_shape():
    r = np.linspace(0, 5, 2001)
    psi = cutoff_psi(r)
    assert np.all(psi[r <= 0.5] == 1.0) and np.all(psi[r >= 2.0] == 0.0)
    assert np.all(np.diff(psi) <= 0)
    x = np.linspace(-1, 2, 301)
    s = smooth_step(x)
    assert np.all(s[x <= 0] == 0) and np.all(s[x >= 1] == 1)
    assert smooth_step(0.5) == pytest.approx(0.5)


def test_cutoff_examples():
    assert cutoffs(K1, 0.0, 3.0) == (1.0, 0.0, 0.0)
    assert tuple(map(float, cutoffs(K1, 0.0, 0.3))) == (0.0, 0.0, 1.0)


@settings(max_examples=300, deadline=None)
@given(st.floats(0.0, 1e4), st.floats(-50.0, 50.0), st.floats(0.2, 5.0))
def test_cutoffs_partition_unity(t, xi, K):
    parts = cutoffs(ZoneConfig(K), t, xi)
    assert all(0.0 <= float(p) <= 1.0 for p in parts)
    assert abs(sum(parts) - 1.0) <= 1e-15


def test_cutoff_supports_follow_zones():
    rng = np.random.default_rng(3)
    t = rng.uniform(0, 100, 4000)
    xi = np.exp(rng.uniform(-8, 3, 4000))
    p1, p2, p3 = cutoffs(K1, t, xi)
    assert np.all(p1[xi <= 0.5] == 0)
    assert np.all(p3[(1 + t) * xi >= 2] == 0)
    assert np.all(p2[xi >= 2] == 0) and np.all(p2[(1 + t) * xi <= 0.5] == 0)


@settings(max_examples=300, deadline=None)
@given(st.floats(1e-12, 1e12))
def test_dyadic_partition_sums_to_one(r):
    w = dyadic_weights(r)
    assert 1 <= len(w) <= 2
    assert abs(sum(v for _, v in w) - 1.0) <= 1e-12


def test_dyadic_examples():
    assert dyadic_weights(1.0) == [(0, 1.0)]
    a, b = dyadic_weights(0.37), dyadic_weights(0.74)
    assert [(j - 1, w) for j, w in a] == b
    assert np.all(bump_chi(np.array([0.1, 0.5, 2.0, 7.0])) == 0.0)
    with pytest.raises(DomainError):
        dyadic_weights(0.0)


# --- predictors --------------------------------------------------------------------


def test_sup_norm_examples():
    p = sup_norm_prediction(1, 0, -0.5, 1)
    assert (p.exponent, p.log_power) == (-0.5, 0)
    p = sup_norm_prediction(0, -1, 0.0, 0)
    assert (p.exponent, p.log_power) == (0.0, 1)
    with pytest.raises(UnboundedMultiplier):
        sup_norm_prediction(2, 1, -1.0, 0)
    with pytest.raises(UnboundedMultiplier):
        sup_norm_prediction(0.5, 0, 0.3, 1)


def test_sup_norm_case_table():
    assert sup_norm_prediction(2, 0, 0.25, 0).exponent == -0.5
    assert sup_norm_prediction(1, 0, 0.75, 1).exponent == pytest.approx(-0.25)
    assert sup_norm_prediction(0.5, 0, 0.0, 0).log_power == 1
    p = sup_norm_prediction(1, 0, 0.0, 1)
    assert (p.exponent, p.log_power) == (-0.5, 0) and "derived_from" in p.meta


def test_dual_pair():
    assert DualPair(2.0).q == 2.0 and DualPair(2.0).gap == 0.0
    d = DualPair(1.0001)
    assert d.p * d.q == pytest.approx(d.p + d.q)
    assert d.gap == pytest.approx(1 / d.p - 1 / d.q)
    for bad in (1.0, 2.5, 0.5):
        with pytest.raises(DomainError):
            DualPair(bad)


def test_lp_lq_examples():
    assert lp_lq_prediction(1, 0, -0.5, 1, DualPair(2.0), 1).exponent == -0.5
    assert lp_lq_prediction(1, -0.7, -0.5, 1, DualPair(2.0), 3).regularity == -0.7
    with pytest.raises(DomainError):
        lp_lq_prediction(0, 0, 0.1, 1, DualPair(2.0), 1)


def test_lp_lq_log_case_uses_theta():
    pair = DualPair(1.5)
    pred = lp_lq_prediction(0, 0, 0.0, 0, pair, 1, eps=0.2)
    g = pair.gap
    theta = 2 * g / 1.4
    assert pred.meta["theta"] == pytest.approx(theta)
    assert pred.exponent == pytest.approx(-g + 0.2 * theta)
    assert pred.log_power == 1
    with pytest.raises(DomainError):
        lp_lq_prediction(0.45, 0, 0.0, 0, DualPair(2.0), 3, eps=-0.1)


def test_solution_operator_table():
    l2 = DualPair(2.0)
    for n in (1, 2, 3):
        assert solution_op_prediction(0.5, l2, n).exponent == 0.5
    p = solution_op_prediction(1.0, l2, 1)
    assert (p.exponent, p.log_power) == (0.0, 1)
    assert p.meta["theta"] == p.meta["theta_model"]
    assert solution_op_prediction(3.0, l2, 2).exponent == 0.0
    for mu in (0.2, 0.9, 1.5, 4.0):
        assert solution_op_prediction(mu, l2, 1).exponent == pytest.approx(1 - mu if mu < 1 else 0.0)


def test_energy_operator_table():
    l2 = DualPair(2.0)
    assert energy_op_prediction(1.0, l2, 1).exponent == -0.5
    assert energy_op_prediction(2.0, l2, 1).exponent == -1.0
    assert energy_op_prediction(5.0, l2, 3).exponent == -1.0
    with pytest.raises(DomainError):
        energy_op_prediction(0.0, l2, 1)
    assert energy_op_prediction_from_gap(2.0, 1.0, 1).exponent == -1.0
    with pytest.raises(DomainError):
        energy_op_prediction_from_gap(2.0, 1.5, 1)


def test_energy_prediction_kink_at_critical_value():
    mus = np.linspace(0.01, 6, 600)
    e = np.array([energy_op_prediction(m, DualPair(2.0), 2).exponent for m in mus])
    assert np.allclose(e, np.maximum(-mus / 2, -1.0))
    assert np.max(np.abs(np.diff(e))) < 0.01


def test_solution_prediction_continuity_off_one():
    for lo, hi in ((0.01, 0.99), (1.01, 6.0)):
        mus = np.linspace(lo, hi, 500)
        e = np.array([solution_op_prediction(m, DualPair(1.6), 2).exponent for m in mus])
        assert np.max(np.abs(np.diff(e))) < 0.02


def test_energy_decay_alpha():
    assert energy_decay_alpha(1.0) == 1.0
    assert energy_decay_alpha(2.0) == 2.0
    assert energy_decay_alpha(7.0) == 2.0


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 10.0), st.floats(1.01, 2.0), st.integers(1, 5))
def test_duhamel_matches_energy(mu, p, n):
    pair = DualPair(p)
    d = duhamel_kernel_prediction(mu, pair, n)
    assert d.exponent == energy_op_prediction(mu, pair, n).exponent
    assert d.regularity == pytest.approx(n * pair.gap)
    assert d.curve(0.0) == 1.0


def test_curve():
    pred = DecayPrediction(-1.0, 1)
    assert pred.curve(math.e - 1) == pytest.approx(math.log(2 * math.e - 1) / math.e)
