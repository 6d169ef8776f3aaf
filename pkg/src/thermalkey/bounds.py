"""Closed-form and second-order secret-key-agreement bounds, plus the scalar
special functions they need.  All rates are bits per channel use except
chebyshev_lower_expansion, which is a total over n uses."""

import math
from dataclasses import dataclass
from enum import Enum

from scipy.special import erfc, erfcinv

from .divergences import divergence_pair
from .entanglement import separable_reference

_SQRT2 = math.sqrt(2.0)


class BoundKind(str, Enum):
    PURE_LOSS_ASYMPTOTIC = "pure_loss_asymptotic"
    PURE_LOSS_SC = "pure_loss_sc"
    PURE_LOSS_WC = "pure_loss_wc"
    THERMAL_ASYMPTOTIC = "thermal_asymptotic"
    THERMAL_SC = "thermal_sc"
    THERMAL_WC = "thermal_wc"
    THERMAL_SECOND_ORDER = "thermal_second_order"
    ACHIEVABILITY_ESTIMATE = "achievability_estimate"


@dataclass(frozen=True)
class BoundCurvePoint:
    """One row of an emitted bound curve."""

    n: int
    kind: BoundKind
    value: float  # bits per channel use, clamped at 0 when clamping enabled
    raw: float  # unclamped bits per channel use
    clamped: bool


def curve_point(n, kind, raw, clamp=True):
    clamped = clamp and raw < 0.0
    return BoundCurvePoint(n=n, kind=kind, value=max(raw, 0.0) if clamp else raw,
                           raw=raw, clamped=clamped)


def binary_entropy(eps):
    """h2(eps) in bits; endpoints 0 and 1 return 0 by the limit convention."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"argument must be in [0, 1], got {eps}")
    if eps in (0.0, 1.0):
        return 0.0
    return -eps * math.log2(eps) - (1.0 - eps) * math.log2(1.0 - eps)


def g_entropy(n_mean):
    """Entropy of a thermal state with mean photon number N, in bits."""
    if n_mean < 0.0:
        raise ValueError(f"mean photon number must be >= 0, got {n_mean}")
    if n_mean == 0.0:
        return 0.0
    return (n_mean + 1.0) * math.log2(n_mean + 1.0) - n_mean * math.log2(n_mean)


def c_epsilon(eps):
    """C(eps) = log2(6) + 2 log2((1+eps)/(1-eps))."""
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"argument must be in [0, 1), got {eps}")
    return math.log2(6.0) + 2.0 * math.log2((1.0 + eps) / (1.0 - eps))


def normal_cdf(x):
    """Standard normal CDF via the complementary error function."""
    return 0.5 * erfc(-x / _SQRT2)


def inv_normal_cdf(eps):
    """Inverse standard normal CDF, accurate in the deep tail."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"argument must be in (0, 1), got {eps}")
    return float(-_SQRT2 * erfcinv(2.0 * eps))


def pure_loss_asymptotic(eta):
    """Secret-key capacity of the pure-loss channel, -log2(1 - eta)."""
    if not 0.0 < eta < 1.0:
        raise ValueError(f"transmissivity must be in (0, 1), got {eta}")
    return -math.log2(1.0 - eta)


def pure_loss_strong_converse(eta, n, eps):
    return pure_loss_asymptotic(eta) + c_epsilon(eps) / n


def pure_loss_weak_converse(eta, n, eps):
    return (pure_loss_asymptotic(eta) + binary_entropy(eps) / n) / (1.0 - eps)


def thermal_asymptotic(eta, n_b):
    """-log2((1-eta) * eta^{N_B}) - g(N_B); may be negative (raw value)."""
    if not 0.0 < eta < 1.0:
        raise ValueError(f"transmissivity must be in (0, 1), got {eta}")
    if n_b <= 0.0:
        raise ValueError(f"thermal photon number must be > 0, got {n_b}")
    return -math.log2(1.0 - eta) - n_b * math.log2(eta) - g_entropy(n_b)


def thermal_channel_v(eta, n_b):
    """V_{eta,N_B} = N_B (N_B + 1) log2^2(eta (N_B + 1) / N_B)."""
    return n_b * (n_b + 1.0) * math.log2(eta * (n_b + 1.0) / n_b) ** 2


def thermal_strong_converse(eta, n_b, n, eps):
    return (
        thermal_asymptotic(eta, n_b)
        + math.sqrt(2.0 * thermal_channel_v(eta, n_b) / (n * (1.0 - eps)))
        + c_epsilon(eps) / n
    )


def thermal_weak_converse(eta, n_b, n, eps):
    return (thermal_asymptotic(eta, n_b) + binary_entropy(eps) / n) / (1.0 - eps)


def second_order_expansion(d, v, n, eps, include_log_term=False):
    """Normal approximation D + sqrt(V/n) * Phi^{-1}(eps) [+ log2(n)/(2n)]."""
    if v < 0.0:
        raise ValueError(f"variance must be >= 0, got {v}")
    value = d + math.sqrt(v / n) * inv_normal_cdf(eps)
    if include_log_term:
        value += math.log2(n) / (2.0 * n)
    return value


def resource_divergences(rs):
    """(D, V) of a resource state against its separable reference, in bits."""
    reference = separable_reference(rs.state)
    return divergence_pair(rs.state, reference)


def thermal_second_order(eta, n_b, n, eps, rs, include_log_term=False):
    """Improved second-order bound from a finite-energy resource state.

    Only meaningful as a rigorous bound for n large (proportional to
    1/eps^2); below that it is the normal approximation, see
    normal_approximation_regime.
    """
    if abs(rs.g * rs.g - eta) > 1e-9:
        raise ValueError(
            f"resource state gain^2 = {rs.g * rs.g} does not match eta = {eta}"
        )
    dv = resource_divergences(rs)
    if dv.v <= 0.0:
        raise ValueError("degenerate relative entropy variance")
    return second_order_expansion(dv.d, dv.v, n, eps, include_log_term)


def normal_approximation_regime(n, eps):
    """True when n is large enough (>= 1/eps^2) for the expansion to be rigorous."""
    return n >= 1.0 / eps**2


def hypothesis_testing_weak_bound(d, eps):
    """(D + h2(eps)) / (1 - eps), the weak-converse conversion of D_H^eps."""
    if d < 0.0:
        raise ValueError(f"relative entropy must be >= 0, got {d}")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    return (d + binary_entropy(eps)) / (1.0 - eps)


def chebyshev_lower_expansion(d, v, n, eps):
    """n*D - sqrt(n*V/eps): Chebyshev expansion of D_H^eps, total over n uses."""
    if v < 0.0:
        raise ValueError(f"variance must be >= 0, got {v}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    return n * d - math.sqrt(n * v / eps)
