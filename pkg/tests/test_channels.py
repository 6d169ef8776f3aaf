"""Channel and teleportation-simulation tests."""

import math

import numpy as np
import pytest

from thermalkey.channels import (
    PhaseInsensitiveChannel,
    ThermalChannelParams,
    apply_channel,
    eta_from_distance,
    simulated_channel_from_resource,
    teleport_verify,
    thermal_channel,
)
from thermalkey.errors import UnphysicalSimulationError
from thermalkey.gaussian import TwoModeStandardForm

from test_gaussian import random_physical_state


def test_thermal_channel_form():
    ch = thermal_channel(ThermalChannelParams(0.4, 0.5))
    assert math.isclose(ch.tau, 0.4, rel_tol=1e-15)
    assert math.isclose(ch.y, 0.6 * 2.0, rel_tol=1e-15)
    assert ch.is_physical()


def test_thermal_channel_rejects_pure_loss():
    with pytest.raises(ValueError, match="pure loss"):
        thermal_channel(ThermalChannelParams(0.4, 0.0))
    with pytest.raises(ValueError):
        thermal_channel(ThermalChannelParams(1.2, 0.5))


def test_eta_from_distance():
    assert math.isclose(eta_from_distance(0.542, 0.542), math.exp(-1.0),
                        rel_tol=1e-15)
    assert eta_from_distance(0.0, 1.0) == 1.0
    with pytest.raises(ValueError):
        eta_from_distance(1.0, 0.0)
    with pytest.raises(ValueError):
        eta_from_distance(-1.0, 1.0)


def test_apply_channel_is_affine():
    ch = PhaseInsensitiveChannel(tau=0.3, y=1.1)
    v = 3.0 * np.eye(2)
    assert np.allclose(apply_channel(ch, v), 0.3 * v + 1.1 * np.eye(2))


def test_simulated_channel_gain_sign():
    # either gain sign produces the same (tau, y) up to the 2gc cross term
    state = TwoModeStandardForm(2.0, 2.0, 1.0)
    plus = simulated_channel_from_resource(state, 0.7)
    minus = simulated_channel_from_resource(state, -0.7)
    assert math.isclose(plus.tau, minus.tau, rel_tol=1e-15)
    assert math.isclose(plus.y - minus.y, 4.0 * 0.7 * 1.0, rel_tol=1e-12)


def test_simulated_channel_rejects_unphysical():
    with pytest.raises(UnphysicalSimulationError):
        # unphysical correlations (ab - c^2 < 1) can push y below |1 - tau|
        simulated_channel_from_resource(TwoModeStandardForm(1.0, 1.0, 0.9), -0.5)
    with pytest.raises(ValueError):
        simulated_channel_from_resource(TwoModeStandardForm(2.0, 2.0, 1.0), 0.0)


def test_teleport_matches_algebraic_channel():
    """Dual route: explicit protocol propagation vs the (tau, y) formula."""
    rng = np.random.default_rng(11)
    for _ in range(50):
        state = random_physical_state(rng, faithful=False)
        g = rng.uniform(0.2, 0.95) * rng.choice([-1.0, 1.0])
        try:
            ch = simulated_channel_from_resource(state, g)
        except UnphysicalSimulationError:
            continue
        n_in = rng.uniform(0.0, 3.0)
        sq = rng.uniform(0.6, 1.6)
        v_in = (2.0 * n_in + 1.0) * np.diag([sq, 1.0 / sq])
        out_direct = apply_channel(ch, v_in)
        out_teleport = teleport_verify(state, g, v_in)
        assert np.allclose(out_teleport, out_direct, atol=1e-10)


def test_teleport_rejects_bad_inputs():
    state = TwoModeStandardForm(2.0, 2.0, 1.0)
    with pytest.raises(ValueError):
        teleport_verify(state, 0.7, 0.5 * np.eye(2))  # sub-vacuum input
    with pytest.raises(ValueError):
        teleport_verify(TwoModeStandardForm(0.2, 2.0, 0.0), 0.7, np.eye(2))
