import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakdiss import specfun as sf
from weakdiss.specfun import DomainError

mp.mp.dps = 40

orders = st.floats(-5.0, 5.0, allow_nan=False)
args = st.floats(0.01, 100.0, allow_nan=False)


def mp_j(nu, x):
    return float(mp.besselj(nu, x))


def mp_y(nu, x):
    return float(mp.bessely(nu, x))


# --- values against an arbitrary-precision oracle --------------------------------


def test_j0_at_one():
    assert sf.bessel_j(0.0, 1.0) == pytest.approx(0.7651976866, abs=1e-10)


def test_y1_at_one():
    assert sf.bessel_y(1.0, 1.0) == pytest.approx(-0.7812128213, abs=1e-10)


def test_j_limits_at_zero():
    assert sf.bessel_j(0.0, 0.0) == 1.0
    assert sf.bessel_j(2.5, 0.0) == 0.0
    with pytest.raises(DomainError):
        sf.bessel_j(-0.5, 0.0)
    with pytest.raises(DomainError):
        sf.bessel_j(1.0, -1.0)


@pytest.mark.parametrize("nu", [-9.7, -3.5, -1.2, -0.5, 0.0, 0.3, 1.0, 2.7, 7.0, 10.0])
@pytest.mark.parametrize("x", [1e-2, 0.7, 3.0, 17.5, 64.0, 100.0])
def test_j_and_y_match_mpmath(nu, x):
    j, y = sf.bessel_j(nu, x), sf.bessel_y(nu, x)
    jr, yr = mp_j(nu, x), mp_y(nu, x)
    # relative to |H|, which is what every downstream determinant sees
    scale = math.hypot(jr, yr)
    assert abs(j - jr) <= 1e-10 * scale
    assert abs(y - yr) <= 1e-10 * scale


@pytest.mark.parametrize("nu", [2.0 + 1e-9, 2.0 - 5e-9, -3.0 + 2e-9, 1e-10, 2.0 + 2e-8, 2.0 - 1e-6, 3e-8, 1.0 - 1e-4])
def test_y_next_to_the_integers(nu):
    for x in (1e-3, 0.5, 5.0, 40.0):
        ref = mp_y(mp.mpf(nu), x)
        assert sf.bessel_y(nu, x) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("n", [-4, -1, 0, 1, 3])
def test_y_integer_orders_match_mpmath(n):
    x = np.array([1e-6, 1e-3, 0.5, 5.0, 7.99, 8.01, 40.0])
    ref = np.array([mp_y(n, v) for v in x])
    assert np.allclose(sf.bessel_y(float(n), x), ref, rtol=1e-12, atol=0)


def test_half_integer_closed_forms():
    x = np.logspace(-2, 2, 300)
    assert np.allclose(sf.bessel_j(0.5, x), np.sqrt(2 / (np.pi * x)) * np.sin(x), rtol=0, atol=1e-12)
    assert np.allclose(sf.bessel_j(-0.5, x), np.sqrt(2 / (np.pi * x)) * np.cos(x), rtol=0, atol=1e-12)
    assert np.allclose(sf.bessel_y(0.5, x), -np.sqrt(2 / (np.pi * x)) * np.cos(x), rtol=0, atol=1e-12)
    assert abs(sf.bessel_j(0.5, np.pi)) < 1e-15
    assert abs(sf.bessel_y(0.5, np.pi / 2)) < 1e-15


def test_hankel_half_order_closed_form():
    h = sf.hankel(0.5, 1.0)
    want = math.sqrt(2 / math.pi) * (math.sin(1.0) - 1j * math.cos(1.0))
    assert abs(h.plus - want) < 1e-14
    assert h.minus == np.conj(h.plus)


def test_connection_formula_agrees_off_the_integers():
    assert sf.bessel_y(0.3, 2.0) == pytest.approx(sf.bessel_y_connection(0.3, 2.0), abs=1e-12)
    with pytest.raises(DomainError):
        sf.bessel_y_connection(2.0, 1.0)


def test_y_rejects_nonpositive_argument():
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            sf.bessel_y(0.3, bad)
        with pytest.raises(DomainError):
            sf.hankel(0.3, bad)


# --- identities as properties -----------------------------------------------------


@settings(max_examples=400, deadline=None)
@given(orders, args)
def test_hankel_conjugation_and_sum(nu, x):
    h = sf.hankel(nu, x)
    assert h.minus == np.conj(h.plus)
    assert (h.plus + h.minus).real == pytest.approx(2 * sf.bessel_j(nu, x), rel=1e-15, abs=1e-300)
    assert (h.plus - h.minus).imag == pytest.approx(2 * sf.bessel_y(nu, x), rel=1e-15, abs=1e-300)


@settings(max_examples=400, deadline=None)
@given(orders, args)
def test_three_term_recurrence(nu, x):
    for fn in (sf.bessel_j, sf.bessel_y):
        lo, mid, hi = fn(nu - 1, x), fn(nu, x), fn(nu + 1, x)
        scale = abs(lo) + abs(hi) + abs(2 * nu / x * mid)
        assert abs(lo + hi - 2 * nu / x * mid) <= 1e-9 * scale


def test_recurrence_on_ten_thousand_samples():
    rng = np.random.default_rng(7)
    nu = rng.uniform(-5, 5, 10_000)
    x = np.exp(rng.uniform(math.log(0.01), math.log(100.0), 10_000))
    lo = np.array([sf.bessel_j(a - 1, b) for a, b in zip(nu, x)])
    mid = np.array([sf.bessel_j(a, b) for a, b in zip(nu, x)])
    hi = np.array([sf.bessel_j(a + 1, b) for a, b in zip(nu, x)])
    scale = np.abs(lo) + np.abs(hi) + np.abs(2 * nu / x * mid)
    assert np.max(np.abs(lo + hi - 2 * nu / x * mid) / scale) <= 1e-9


@settings(max_examples=200, deadline=None)
@given(orders, st.floats(0.05, 100.0))
def test_derivative_recursion_matches_finite_differences(nu, x):
    h = 1e-6 * max(1.0, x)
    for fn in (sf.bessel_j, sf.bessel_y):
        d = sf.bessel_derivative(fn(nu, x), fn(nu - 1, x), nu, x)
        fd = (fn(nu, x + h) - fn(nu, x - h)) / (2 * h)
        scale = abs(fn(nu - 1, x)) + abs(nu / x * fn(nu, x))
        assert abs(d - fd) <= 1e-5 * scale


@pytest.mark.parametrize("nu", [-1.2, -0.5, 0.0, 0.3, 0.5, 1.0, 2.7])
def test_wronskian_on_log_grid(nu):
    z = np.logspace(-2, 4, 500)
    assert np.max(sf.wronskian_defect(nu, z)) <= 1e-9


def test_wronskian_value_and_sign():
    w = sf.wronskian(0.3, 2.0)
    assert w == pytest.approx(-4j / (2 * math.pi), abs=1e-12)
    assert sf.wronskian_defect(0.5, 1.0) <= 1e-12
    assert sf.wronskian_defect(-0.25, 50.0) <= 1e-9
    with pytest.raises(DomainError):
        sf.wronskian_defect(0.3, 0.0)


# --- entire parts near the origin ---------------------------------------------------


def test_lambda_values():
    assert sf.lambda_fn(0.0, 0.0) == 1.0
    assert sf.lambda_fn(0.5, 0.0) == pytest.approx(math.sqrt(2 / math.pi), rel=1e-15)
    # leading correction is -Lambda(0) (tau/2)^2 / (nu + 1), about -1.74e-5 here
    assert sf.lambda_fn(0.3, 0.01) - sf.lambda_fn(0.3, 0.0) == pytest.approx(-1.74046390187e-5, rel=1e-9)
    assert sf.lambda_fn(-2.0, 0.0) == 0.0


@pytest.mark.parametrize("nu", [-3.0, -1.7, -0.5, 0.0, 0.3, 2.0, 4.5])
@pytest.mark.parametrize("x", [1e-6, 0.3, 1.9, 2.1, 7.0, 30.0])
def test_lambda_matches_mpmath(nu, x):
    ref = float(mp.besselj(nu, x) / mp.power(x, nu))
    scale = max(abs(ref), float(abs(1 / (mp.power(2, nu) * mp.gamma(nu + 1)))) if nu > -1 else abs(ref), 1e-300)
    assert abs(sf.lambda_fn(nu, x) - ref) <= 1e-12 * max(scale, 1.0)


def test_weber_log_split():
    assert sf.weber_log_split(0, 1.0) == pytest.approx(sf.bessel_y(0.0, 1.0), abs=1e-15)
    assert abs(sf.weber_log_split(0, 1e-3) - sf.weber_log_split(0, 1e-6)) < 1e-2
    assert 1e-4 * sf.weber_log_split(1, 1e-4) == pytest.approx(-2 / math.pi, abs=1e-4)
    with pytest.raises(DomainError):
        sf.weber_log_split(0.5, 1.0)


@pytest.mark.parametrize("n", [-3, -1, 0, 1, 2, 5])
@pytest.mark.parametrize("x", [1e-5, 0.1, 2.0, 7.9, 8.1, 50.0])
def test_weber_log_split_matches_mpmath(n, x):
    ref = mp.bessely(n, x) - 2 / mp.pi * mp.besselj(n, x) * mp.log(x)
    assert sf.weber_log_split(n, x) == pytest.approx(float(ref), rel=1e-10, abs=1e-12)


# --- asymptotic facts ---------------------------------------------------------------


def test_small_argument_bounds():
    x = np.logspace(-8, math.log10(0.5), 200)
    for nu in (-2.5, -1.0, 0.4, 1.5, 3.0):
        ratio = np.abs(sf.hankel(nu, x).plus) * x ** abs(nu)
        c = ratio.max()
        assert np.all(ratio <= c) and c < 10.0
        # the bound is attained up to a constant: the ratio tends to a nonzero limit
        assert ratio[0] > 0.5 * c
    ratio0 = np.abs(sf.hankel(0.0, x).plus) / -np.log(x)
    assert ratio0.max() < 2.0


def test_large_argument_modulus():
    for nu in (-1.2, 0.0, 0.3, 2.7):
        h = sf.hankel(nu, 1e4)
        assert abs(abs(h.plus) * math.sqrt(math.pi * 1e4 / 2) - 1) < 1e-2


def test_amplitude_is_a_symbol_of_order_minus_half():
    a = sf.hankel_amplitude(0.5, np.array([1.0, 10.0, 1e3]))
    assert np.allclose(np.abs(a.plus), np.sqrt(2 / (np.pi * np.array([1.0, 10.0, 1e3]))), rtol=1e-13)
    v = [abs(sf.hankel_amplitude(0.3, x).plus) * math.sqrt(x) for x in (1e3, 1e6)]
    assert v[0] == pytest.approx(v[1], rel=1e-3)
    assert np.isfinite(sf.hankel_amplitude(0.0, 1.0).plus)
    with pytest.raises(DomainError):
        sf.hankel_amplitude(0.3, 0.5, K=1.0)


def test_amplitude_bounded_on_long_range():
    x = np.logspace(0, 6, 400)
    for nu in (-2.2, 0.0, 0.75, 3.0):
        b = np.abs(sf.hankel_amplitude(nu, x).plus) * np.sqrt(x)
        # bounded, and settling to sqrt(2/pi)
        assert b.max() < 10.0
        assert b[-1] == pytest.approx(math.sqrt(2 / math.pi), rel=1e-5)
