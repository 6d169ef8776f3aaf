"""Single-mode phase-insensitive Gaussian channels and their teleportation
simulation from a two-mode resource state."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMeasurementError, UnphysicalSimulationError
from .gaussian import TwoModeStandardForm, check_physical

# Below this variance the measured homodyne quadrature is declared degenerate.
HOMODYNE_PINV_THRESHOLD = 1e-12


@dataclass(frozen=True)
class PhaseInsensitiveChannel:
    """Channel acting on a covariance matrix as V -> tau*V + y*I."""

    tau: float
    y: float

    def x_matrix(self):
        return math.sqrt(self.tau) * np.eye(2)

    def y_matrix(self):
        return self.y * np.eye(2)

    def is_physical(self):
        """Complete positivity: y >= |1 - tau| (and tau >= 0)."""
        return self.tau >= 0.0 and self.y >= abs(1.0 - self.tau) - 1e-12


@dataclass(frozen=True)
class ThermalChannelParams:
    """Thermal-loss channel: transmissivity eta in (0,1), environment photon
    number n_b > 0 (pure loss n_b = 0 is excluded: it has no finite-energy
    teleportation simulation)."""

    eta: float
    n_b: float


def thermal_channel(params):
    """Phase-insensitive form (tau, y) of the thermal channel."""
    eta, n_b = params.eta, params.n_b
    if not 0.0 < eta < 1.0:
        raise ValueError(f"transmissivity must be in (0, 1), got {eta}")
    if n_b <= 0.0:
        raise ValueError(
            f"thermal photon number must be > 0, got {n_b} "
            "(pure loss has no finite-energy simulation)"
        )
    return PhaseInsensitiveChannel(tau=eta, y=(1.0 - eta) * (2.0 * n_b + 1.0))


def apply_channel(ch, v_in):
    """Transform a single-mode covariance: X V X^T + Y = tau*V + y*I."""
    v_in = np.asarray(v_in, dtype=float)
    if not ch.is_physical():
        raise ValueError(f"channel (tau={ch.tau}, y={ch.y}) violates y >= |1 - tau|")
    if np.linalg.det(v_in) < 1.0 - 1e-10:
        raise ValueError("input covariance is unphysical (det V < 1)")
    return ch.tau * v_in + ch.y * np.eye(2)


def eta_from_distance(l_km, l0_km):
    """Transmissivity of a fiber of length L: eta = exp(-L / L0)."""
    if l0_km <= 0.0:
        raise ValueError(f"attenuation length must be positive, got {l0_km}")
    if l_km < 0.0:
        raise ValueError(f"distance must be nonnegative, got {l_km}")
    return math.exp(-l_km / l0_km)


def simulated_channel_from_resource(state, g):
    """Channel implemented by teleportation with gain g over a resource state.

    tau = g^2 and y = g^2 a + 2 g c + b.  Negative g is legal: the output is
    postprocessed by a phase flip, leaving the same (tau, y).
    """
    if g == 0.0:
        raise ValueError("teleportation gain must be nonzero")
    tau = g * g
    y = g * g * state.a + 2.0 * g * state.c + state.b
    ch = PhaseInsensitiveChannel(tau=tau, y=y)
    if not ch.is_physical():
        raise UnphysicalSimulationError(
            f"resource (a={state.a}, b={state.b}, c={state.c}) with gain {g} "
            f"yields tau={tau}, y={y}, violating y >= |1 - tau|"
        )
    return ch


def _beamsplitter_50_50(n_modes, i, j):
    """Symplectic of a balanced beamsplitter on modes i, j (qq...pp ordering)."""
    s = np.eye(2 * n_modes)
    r = 1.0 / math.sqrt(2.0)
    for off in (0, n_modes):
        s[i + off, i + off] = r
        s[i + off, j + off] = r
        s[j + off, i + off] = r
        s[j + off, j + off] = -r
    return s


def teleport_verify(state, g, v_in):
    """Propagate a covariance matrix through the explicit teleportation protocol.

    Mixes the input mode with resource mode A on a balanced beamsplitter,
    homodynes q of the first output and p of the second, and applies the
    gain-g feedforward displacement g*sqrt(2)*(Q+, P-) to mode B.  Returns the
    unconditional output covariance, which must agree with
    apply_channel(simulated_channel_from_resource(state, g), v_in).
    """
    v_in = np.asarray(v_in, dtype=float)
    if not check_physical(state):
        raise ValueError("resource state is unphysical")
    if np.linalg.det(v_in) < 1.0 - 1e-10:
        raise ValueError("input covariance is unphysical")

    # Three modes (input, A, B); qqqppp ordering.
    sigma = np.zeros((6, 6))
    sigma[0, 0] = v_in[0, 0]
    sigma[3, 3] = v_in[1, 1]
    sigma[0, 3] = sigma[3, 0] = v_in[0, 1]
    a, b, c = state.a, state.b, state.c
    sigma[1:3, 1:3] = [[a, c], [c, b]]
    sigma[4:6, 4:6] = [[a, -c], [-c, b]]

    s_bs = _beamsplitter_50_50(3, 0, 1)
    sigma = s_bs @ sigma @ s_bs.T

    meas = [0, 4]  # q of first output port, p of second output port
    keep = [2, 5]  # (q_B, p_B)
    sigma_mm = sigma[np.ix_(meas, meas)]
    sigma_bm = sigma[np.ix_(keep, meas)]
    sigma_bb = sigma[np.ix_(keep, keep)]

    evals, evecs = np.linalg.eigh(sigma_mm)
    if np.any(evals < HOMODYNE_PINV_THRESHOLD):
        raise DegenerateMeasurementError(
            f"measured quadrature covariance has eigenvalue {evals.min()}"
        )
    inv_mm = evecs @ np.diag(1.0 / evals) @ evecs.T

    # Schur-complement conditioning, then add back the covariance of the
    # feedforward displacement 2 g^2 * Cov(outcomes) plus its cross terms.
    coeff = sigma_bm @ inv_mm
    cond = sigma_bb - coeff @ sigma_bm.T
    feed = coeff + math.sqrt(2.0) * g * np.eye(2)
    return cond + feed @ sigma_mm @ feed.T
