"""Gaussian divergence formulas cross-validated against the number-basis
oracle and against geometric-distribution closed forms."""

import math

import numpy as np

from thermalkey.divergences import (
    divergence_pair,
    relative_entropy,
    relative_entropy_variance,
)
from thermalkey.fock import thermal_pair_divergences
from thermalkey.gaussian import SingleModeThermal, TwoModeStandardForm

# Closed forms for geometric number distributions: the log-likelihood ratio
# is affine in n, so D and V reduce to geometric mean/variance.
D_THETA_1_2 = 2.0 * math.log2(3.0) - 3.0  # 0.16992500144231215
V_THETA_1_2 = 2.0 * (2.0 - math.log2(3.0)) ** 2  # 0.34451225161527277


def thermal_d_closed(n1, n2):
    llr0 = math.log2((n2 + 1.0) / (n1 + 1.0))
    slope = math.log2((n1 * (n2 + 1.0)) / (n2 * (n1 + 1.0)))
    return llr0 + n1 * slope


def thermal_v_closed(n1, n2):
    slope = math.log2((n1 * (n2 + 1.0)) / (n2 * (n1 + 1.0)))
    return n1 * (n1 + 1.0) * slope**2


def test_gaussian_formula_on_thermal_pair_reference_values():
    rho = SingleModeThermal(1.0)
    sigma = SingleModeThermal(2.0)
    assert math.isclose(float(relative_entropy(rho, sigma)), D_THETA_1_2,
                        abs_tol=1e-12)
    assert math.isclose(float(relative_entropy_variance(rho, sigma)),
                        V_THETA_1_2, abs_tol=1e-12)


def test_gaussian_vs_closed_form_grid():
    for n1 in (0.05, 0.1, 0.5, 1.0, 2.0):
        for n2 in (0.05, 0.1, 0.5, 1.0, 2.0):
            if n1 == n2:
                continue
            rho = SingleModeThermal(n1)
            sigma = SingleModeThermal(n2)
            assert math.isclose(float(relative_entropy(rho, sigma)),
                                thermal_d_closed(n1, n2), abs_tol=1e-10)
            assert math.isclose(float(relative_entropy_variance(rho, sigma)),
                                thermal_v_closed(n1, n2), abs_tol=1e-10)


def test_gaussian_vs_fock_oracle_grid():
    """The two independent computational routes must agree to 1e-8."""
    grid = (0.05, 0.1, 0.5, 1.0, 2.0)

    def deep(n):
        # deepest truncation whose geometric weights stay above underflow
        return int(700.0 / abs(math.log(n / (n + 1.0))))

    for n1 in grid:
        for n2 in grid:
            if n1 == n2:
                continue
            oracle = thermal_pair_divergences(n1, n2, min(deep(n1), deep(n2)))
            rho = SingleModeThermal(n1)
            sigma = SingleModeThermal(n2)
            assert abs(float(relative_entropy(rho, sigma)) - oracle.d) <= 1e-8
            assert abs(float(relative_entropy_variance(rho, sigma)) - oracle.v) <= 1e-8


def test_self_divergence_is_zero():
    state = TwoModeStandardForm(2.5, 1.7, 0.9)
    assert abs(float(relative_entropy(state, state))) < 1e-12
    assert abs(float(relative_entropy_variance(state, state))) < 1e-12


def test_relative_entropy_nonnegative_random():
    rng = np.random.default_rng(19)
    from test_gaussian import random_physical_state

    for _ in range(50):
        rho = random_physical_state(rng)
        sigma = random_physical_state(rng)
        d = float(relative_entropy(rho, sigma))
        assert d >= -1e-10
        assert float(relative_entropy_variance(rho, sigma)) >= -1e-10


def test_divergence_pair_bundles_both():
    rho = SingleModeThermal(1.0)
    sigma = SingleModeThermal(2.0)
    pair = divergence_pair(rho, sigma)
    assert math.isclose(pair.d, D_THETA_1_2, abs_tol=1e-12)
    assert math.isclose(pair.v, V_THETA_1_2, abs_tol=1e-12)
