"""Truncated number-basis oracle tests."""

import math

import numpy as np
import pytest

from thermalkey.errors import TruncationInsufficientError
from thermalkey.fock import (
    cross_moment_double_sum,
    oracle_divergences,
    product_diagonal,
    suggested_n_max,
    thermal_diagonal,
    thermal_pair_divergences,
)

D_THETA_1_2 = 2.0 * math.log2(3.0) - 3.0
V_THETA_1_2 = 2.0 * (2.0 - math.log2(3.0)) ** 2


def test_thermal_diagonal_geometric_weights():
    st = thermal_diagonal(1.0, 60)
    assert math.isclose(st.probs[0], 0.5, rel_tol=1e-15)
    assert math.isclose(st.probs[5], 0.5**6, rel_tol=1e-12)
    assert math.isclose(st.tail, 0.5**61, rel_tol=1e-12)
    assert st.probs.sum() + st.tail == pytest.approx(1.0, abs=1e-14)


def test_truncation_guard():
    with pytest.raises(TruncationInsufficientError) as exc:
        thermal_diagonal(10.0, 50)
    assert exc.value.suggested_n_max > 50
    # the suggestion is actually sufficient
    thermal_diagonal(10.0, exc.value.suggested_n_max)


def test_suggested_n_max_tail():
    for n_mean in (0.05, 0.5, 2.0, 10.0):
        n_max = suggested_n_max(n_mean)
        ratio = n_mean / (n_mean + 1.0)
        assert ratio ** (n_max + 1) <= 1e-12


def test_identical_states_have_zero_divergences():
    st = thermal_diagonal(0.5, 200)
    out = oracle_divergences(st, st)
    assert out.d == 0.0 and out.v == 0.0 and out.t == 0.0


def test_theta_1_vs_2_closed_forms():
    out = thermal_pair_divergences(1.0, 2.0)
    assert abs(out.d - D_THETA_1_2) <= 1e-10
    assert abs(out.v - V_THETA_1_2) <= 1e-10


def test_third_moment_truncation_stability():
    a = oracle_divergences(thermal_diagonal(1.0, 500), thermal_diagonal(2.0, 500))
    b = oracle_divergences(thermal_diagonal(1.0, 2000), thermal_diagonal(2.0, 2000))
    assert abs(a.t - b.t) < 1e-10
    assert b.t > 0.0 and math.isfinite(b.t)


def test_moment_inequality():
    # third absolute central moment dominates V^{3/2}
    for n1, n2 in ((1.0, 2.0), (0.1, 0.5), (2.0, 0.05)):
        out = thermal_pair_divergences(n1, n2)
        assert out.t >= out.v**1.5 - 1e-12


def test_product_state_additivity():
    p1 = thermal_diagonal(0.5, 300)
    q1 = thermal_diagonal(1.0, 300)
    single = oracle_divergences(p1, q1)
    double = oracle_divergences(product_diagonal(p1, p1), product_diagonal(q1, q1))
    assert math.isclose(double.d, 2.0 * single.d, rel_tol=1e-10)
    assert math.isclose(double.v, 2.0 * single.v, rel_tol=1e-10)


def test_cross_moment_double_sum_matches_closed_form():
    # (1 - eta) N_S (2 N_S + 1) at N_S = 1, eta = 0.5 is 1.5
    assert abs(cross_moment_double_sum(1.0, 0.5, 400) - 1.5) <= 1e-8
    assert cross_moment_double_sum(1.0, 1.0, 400) == 0.0


def test_cross_moment_truncation_guard():
    with pytest.raises(TruncationInsufficientError):
        cross_moment_double_sum(5.0, 0.5, 30)


def test_binomial_mean_identity():
    # sum_k C(n,k) (1-eta)^k eta^{n-k} k = n (1-eta)
    from scipy.stats import binom

    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(1, 51))
        eta = rng.uniform(0.05, 0.95)
        k = np.arange(n + 1)
        total = float(np.dot(binom.pmf(k, n, 1.0 - eta), k))
        assert math.isclose(total, n * (1.0 - eta), rel_tol=1e-10)
