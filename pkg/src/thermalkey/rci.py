"""Reverse-coherent-information quantities for the pure-loss channel with a
two-mode squeezed vacuum input: the achievability estimate and the
convergence check behind the `little room for improvement' claim.

The closed forms are natural-log expressions converted to bits/bits^2 at the
boundary.  eta = 0 and eta = 1 are excluded; evaluate limits by proximity."""

import math

from .bounds import g_entropy

_LN2 = math.log(2.0)


def _check(n_s, eta):
    if n_s <= 0.0:
        raise ValueError(f"input photon number must be > 0, got {n_s}")
    if not 0.0 < eta < 1.0:
        raise ValueError(f"transmissivity must be in (0, 1), got {eta}")


def entropy_variance_thermal(n_s):
    """Entropy variance of a thermal state, N(N+1) log2^2(1 + 1/N), in bits^2."""
    if n_s <= 0.0:
        raise ValueError(f"mean photon number must be > 0, got {n_s}")
    return n_s * (n_s + 1.0) * math.log2(1.0 + 1.0 / n_s) ** 2


def reverse_coherent_information(n_s, eta):
    """I_rev = g(N_S) - g((1 - eta) N_S), bits per use."""
    _check(n_s, eta)
    return g_entropy(n_s) - g_entropy((1.0 - eta) * n_s)


def cross_photon_moment(n_s, eta):
    """Tr{psi_AE (n_A ⊗ n_E)} = (1 - eta) N_S (2 N_S + 1) for TMSV input."""
    _check(n_s, eta)
    return (1.0 - eta) * n_s * (2.0 * n_s + 1.0)


def rci_variance(n_s, eta):
    """Variance of the reverse coherent information, bits^2 (three-term form)."""
    _check(n_s, eta)
    ne = (1.0 - eta) * n_s
    le = math.log2(1.0 + 1.0 / ne)
    ls = math.log2(1.0 + 1.0 / n_s)
    return (
        ne * (ne + 1.0) * le**2
        - 2.0 * ne * (n_s + 1.0) * le * ls
        + n_s * (n_s + 1.0) * ls**2
    )


def rci_variance_from_moments(n_s, eta):
    """rci_variance reassembled from the unreduced intermediate expressions.

    Builds Tr{rho log rho log rho_A} from the cross photon moment and
    subtracts H(A) H(AB) without the algebraic cancellations of the closed
    form; an internal consistency audit.
    """
    _check(n_s, eta)
    ne = (1.0 - eta) * n_s
    # Natural-log pieces.
    le = math.log(1.0 + 1.0 / ne)
    ls = math.log(1.0 + 1.0 / n_s)
    log_e1 = math.log(ne + 1.0)
    log_s1 = math.log(n_s + 1.0)
    tr_log_log = (
        log_e1 * log_s1
        + n_s * log_e1 * ls
        + ne * le * log_s1
        + cross_photon_moment(n_s, eta) * le * ls
    )
    h_a = n_s * ls + log_s1  # g(N_S) in nats
    h_ab = ne * le + log_e1  # g((1-eta) N_S) in nats
    middle = tr_log_log - h_a * h_ab
    var_e = ne * (ne + 1.0) * le**2
    var_a = n_s * (n_s + 1.0) * ls**2
    return (var_e - 2.0 * middle + var_a) / _LN2**2


def rci_variance_large_ns(n_s, eta):
    """Large-N_S approximation: a perfect square that vanishes as N_S grows."""
    _check(n_s, eta)
    ne = (1.0 - eta) * n_s
    return (ne * math.log2(1.0 + 1.0 / ne) - n_s * math.log2(1.0 + 1.0 / n_s)) ** 2


def achievability_estimate(n_s, eta, n, eps):
    """Heuristic lower-bound curve I_rev - sqrt(V_rev / (n eps)), bits per use.

    Labeled heuristic: the infinite-dimensional link between the coding
    theorem and the Chebyshev expansion is not fully established.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    return reverse_coherent_information(n_s, eta) - math.sqrt(
        rci_variance(n_s, eta) / (n * eps)
    )
