"""Relative entropy and relative entropy variance between zero-mean faithful
Gaussian states, from their covariance matrices.  Outputs are in bits / bits^2."""

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import exponential_form, symplectic_form

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class DivergenceResult:
    d: float  # relative entropy, bits
    v: float  # relative entropy variance, bits^2
    t: float | None = None  # third absolute central moment, bits^3 (oracle only)


def _delta_and_v(rho, sigma):
    if rho.modes != sigma.modes:
        raise ValueError("states must have the same mode count")
    ef_rho = exponential_form(rho)
    ef_sigma = exponential_form(sigma)
    delta = ef_rho.g_matrix - ef_sigma.g_matrix
    return delta, rho.covariance(), ef_rho.log2_z, ef_sigma.log2_z


def relative_entropy(rho, sigma):
    """D(rho||sigma) = log2(Z_sigma/Z_rho)/2 - Tr{Delta V_rho} / (4 ln 2)."""
    delta, v_rho, log2_z_rho, log2_z_sigma = _delta_and_v(rho, sigma)
    return (log2_z_sigma - log2_z_rho) / 2.0 - np.trace(delta @ v_rho) / (4.0 * _LN2)


def relative_entropy_variance(rho, sigma):
    """V(rho||sigma) = [Tr{(Delta V_rho)^2} + Tr{(Delta Omega)^2}] / (8 ln^2 2)."""
    delta, v_rho, _, _ = _delta_and_v(rho, sigma)
    omega = symplectic_form(rho.modes)
    dv = delta @ v_rho
    dw = delta @ omega
    return (np.trace(dv @ dv) + np.trace(dw @ dw)) / (8.0 * _LN2**2)


def divergence_pair(rho, sigma):
    """Both divergence quantities for the same state pair."""
    return DivergenceResult(
        d=float(relative_entropy(rho, sigma)),
        v=float(relative_entropy_variance(rho, sigma)),
    )
