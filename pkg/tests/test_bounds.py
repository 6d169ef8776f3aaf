"""Closed-form bound formulas and scalar special functions."""

import math

import pytest

from thermalkey.bounds import (
    binary_entropy,
    c_epsilon,
    chebyshev_lower_expansion,
    curve_point,
    g_entropy,
    hypothesis_testing_weak_bound,
    inv_normal_cdf,
    normal_cdf,
    pure_loss_asymptotic,
    pure_loss_strong_converse,
    pure_loss_weak_converse,
    second_order_expansion,
    thermal_asymptotic,
    thermal_channel_v,
    thermal_strong_converse,
    thermal_weak_converse,
)
from thermalkey.bounds import BoundKind


def test_binary_entropy():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert math.isclose(binary_entropy(0.25), 0.5 + 0.75 * math.log2(4.0 / 3.0),
                        rel_tol=1e-14)
    with pytest.raises(ValueError):
        binary_entropy(-0.1)


def test_g_entropy():
    assert g_entropy(0.0) == 0.0
    assert math.isclose(g_entropy(1.0), 2.0, rel_tol=1e-14)
    assert math.isclose(g_entropy(0.5), 1.5 * math.log2(1.5) + 0.5, rel_tol=1e-14)
    with pytest.raises(ValueError):
        g_entropy(-1.0)


def test_c_epsilon():
    assert math.isclose(c_epsilon(0.0), math.log2(6.0), rel_tol=1e-14)
    assert math.isclose(c_epsilon(0.5), math.log2(6.0) + 2.0 * math.log2(3.0),
                        rel_tol=1e-14)
    assert abs(c_epsilon(1e-10) - math.log2(6.0)) < 1e-8
    with pytest.raises(ValueError):
        c_epsilon(1.0)


def test_inv_normal_cdf():
    assert inv_normal_cdf(0.5) == 0.0
    assert math.isclose(inv_normal_cdf(0.1), -1.2815515655446004, abs_tol=1e-6)
    assert math.isclose(inv_normal_cdf(1e-10), -6.361340902404056, abs_tol=1e-5)
    # relative round trip accuracy, meaningful even deep in the tail
    for eps in (1e-10, 1e-6, 0.01, 0.1, 0.5, 0.9):
        assert abs(normal_cdf(inv_normal_cdf(eps)) - eps) <= 1e-6 * eps


def test_pure_loss_bounds():
    assert math.isclose(pure_loss_asymptotic(0.5), 1.0, abs_tol=1e-12)
    assert math.isclose(pure_loss_asymptotic(0.75), 2.0, abs_tol=1e-12)
    assert math.isclose(pure_loss_strong_converse(0.5, 1000, 0.5),
                        1.0 + (math.log2(6.0) + 2.0 * math.log2(3.0)) / 1000.0,
                        rel_tol=1e-12)
    assert math.isclose(pure_loss_weak_converse(0.5, 100, 0.5), 2.02,
                        rel_tol=1e-12)
    assert math.isclose(pure_loss_weak_converse(0.5, 1, 0.5), 4.0, rel_tol=1e-12)


def test_thermal_asymptotic_values():
    assert abs(thermal_asymptotic(0.5, 1.0)) < 1e-12
    assert math.isclose(thermal_asymptotic(0.9, 0.1), 2.853681718618202,
                        rel_tol=1e-12)
    raw = thermal_asymptotic(0.5, 2.0)
    assert math.isclose(raw, 3.0 - (3.0 * math.log2(3.0) - 2.0), rel_tol=1e-12)
    # minimized exactly to zero at eta = N_B / (N_B + 1), nonnegative elsewhere
    for n_b in (0.1, 1.0, 2.0, 10.0):
        assert abs(thermal_asymptotic(n_b / (n_b + 1.0), n_b)) < 1e-12
        for eta in (0.05, 0.3, 0.7, 0.95):
            assert thermal_asymptotic(eta, n_b) >= -1e-15


def test_curve_point_clamping():
    p = curve_point(10, BoundKind.THERMAL_ASYMPTOTIC, -0.75)
    assert p.value == 0.0 and p.raw == -0.75 and p.clamped
    q = curve_point(10, BoundKind.THERMAL_ASYMPTOTIC, -0.75, clamp=False)
    assert q.value == -0.75 and not q.clamped


def test_thermal_converse_bounds():
    assert math.isclose(thermal_channel_v(0.9, 0.1),
                        0.11 * math.log2(9.9) ** 2, rel_tol=1e-12)
    # the finite-n correction is strictly positive
    for n in (1, 10**3, 10**6, 10**12):
        assert (thermal_strong_converse(0.9, 0.1, n, 1e-10)
                > thermal_asymptotic(0.9, 0.1))
    wc = thermal_weak_converse(0.9, 0.1, 1000, 1e-10)
    expect = (thermal_asymptotic(0.9, 0.1) + binary_entropy(1e-10) / 1000.0) / (
        1.0 - 1e-10)
    assert math.isclose(wc, expect, rel_tol=1e-14)
    # zero asymptotic part leaves only the entropy correction
    assert math.isclose(thermal_weak_converse(0.5, 1.0, 100, 0.25),
                        binary_entropy(0.25) / (100.0 * 0.75), abs_tol=1e-12)


def test_second_order_expansion():
    # eps = 0.5 collapses to D regardless of n and V
    assert second_order_expansion(0.3, 1.7, 12345, 0.5) == 0.3
    # log-term variant adds exactly log2(n)/(2n)
    n = 10**4
    delta = (second_order_expansion(0.3, 0.2, n, 1e-10, include_log_term=True)
             - second_order_expansion(0.3, 0.2, n, 1e-10))
    assert math.isclose(delta, math.log2(n) / (2.0 * n), rel_tol=1e-12)
    with pytest.raises(ValueError):
        second_order_expansion(0.3, -1.0, 10, 0.5)


def test_hypothesis_testing_weak_bound():
    assert math.isclose(hypothesis_testing_weak_bound(0.0, 0.25),
                        binary_entropy(0.25) / 0.75, rel_tol=1e-14)
    assert math.isclose(hypothesis_testing_weak_bound(1.0, 0.5), 4.0,
                        rel_tol=1e-14)


def test_chebyshev_lower_expansion():
    assert chebyshev_lower_expansion(1.0, 0.0, 100, 0.25) == 100.0
    assert math.isclose(chebyshev_lower_expansion(1.0, 1.0, 100, 0.25), 80.0,
                        rel_tol=1e-14)
    # never exceeds n*D
    assert chebyshev_lower_expansion(0.7, 2.0, 50, 0.1) <= 50 * 0.7
