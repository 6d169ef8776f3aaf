"""Truncated Fock-space oracle for number-diagonal states.

Validates the Gaussian divergence formulas independently: thermal states are
geometric distributions over number states, so D, V, and the third absolute
central moment T reduce to direct truncated sums."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from .errors import TruncationInsufficientError

TAIL_TOL = 1e-12
N_MAX_CAP = 10**5


@dataclass(frozen=True)
class DiagonalState:
    """Probabilities over number states |0..n_max> with reported tail mass."""

    probs: np.ndarray
    tail: float


@dataclass(frozen=True)
class OracleDivergences:
    d: float  # bits
    v: float  # bits^2
    t: float  # bits^3
    tail: float  # combined truncated mass of the two inputs


def suggested_n_max(n_mean, tail_tol=TAIL_TOL):
    """Smallest truncation with geometric tail (N/(N+1))^{n_max+1} <= tail_tol."""
    if n_mean <= 0.0:
        return 1
    n = math.ceil(math.log(tail_tol) / math.log(n_mean / (n_mean + 1.0))) - 1
    return min(max(n, 1), N_MAX_CAP)


def thermal_diagonal(n_mean, n_max):
    """Geometric number distribution of a thermal state, truncated at n_max."""
    if n_mean <= 0.0:
        raise ValueError(f"mean photon number must be > 0, got {n_mean}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    ratio = n_mean / (n_mean + 1.0)
    tail = ratio ** (n_max + 1)
    if tail > TAIL_TOL:
        raise TruncationInsufficientError(
            f"tail mass {tail:.3e} above {TAIL_TOL} at n_max={n_max}",
            suggested_n_max=suggested_n_max(n_mean),
        )
    n = np.arange(n_max + 1)
    probs = (1.0 / (n_mean + 1.0)) * ratio**n
    return DiagonalState(probs=probs, tail=tail)


def product_diagonal(p, q):
    """Two-fold product of diagonal states (outer product, flattened)."""
    tail = p.tail + q.tail
    return DiagonalState(probs=np.outer(p.probs, q.probs).ravel(), tail=tail)


def oracle_divergences(p, q):
    """Direct truncated sums for D, V, T between number-diagonal states."""
    if p.probs.shape != q.probs.shape:
        raise ValueError("states must share the same truncation")
    support = p.probs > 0.0
    if np.any(q.probs[support] <= 0.0):
        raise ValueError("divergence undefined: zero probability on retained support")
    # levels with p_n = 0 (including double-precision underflow at deep
    # truncations) contribute nothing to any of the three sums
    pp = p.probs[support]
    llr = np.log2(pp / q.probs[support])
    d = float(np.dot(pp, llr))
    centered = llr - d
    v = float(np.dot(pp, centered**2))
    t = float(np.dot(pp, np.abs(centered) ** 3))
    return OracleDivergences(d=d, v=v, t=t, tail=p.tail + q.tail)


def thermal_pair_divergences(n1, n2, n_max=None):
    """Oracle D, V, T between thermal states theta(n1) and theta(n2)."""
    if n_max is None:
        n_max = max(suggested_n_max(n1), suggested_n_max(n2))
    return oracle_divergences(thermal_diagonal(n1, n_max), thermal_diagonal(n2, n_max))


def cross_moment_double_sum(n_s, eta, n_max):
    """Direct double sum for Tr{psi_AE (n_A ⊗ n_E)} with TMSV input.

    (1/(N_S+1)) sum_n n (N_S/(N_S+1))^n sum_k C(n,k) (1-eta)^k eta^{n-k} k.
    """
    if n_s <= 0.0:
        raise ValueError(f"input photon number must be > 0, got {n_s}")
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmissivity must be in [0, 1], got {eta}")
    ratio = n_s / (n_s + 1.0)
    if ratio ** (n_max + 1) * (n_max + 1) > 1e-10:
        raise TruncationInsufficientError(
            f"n_max={n_max} insufficient for N_S={n_s}",
            suggested_n_max=suggested_n_max(n_s) * 2,
        )
    total = 0.0
    for n in range(1, n_max + 1):
        k = np.arange(n + 1)
        inner = float(np.dot(binom.pmf(k, n, 1.0 - eta), k))
        total += n * ratio**n * inner
    return total / (n_s + 1.0)
