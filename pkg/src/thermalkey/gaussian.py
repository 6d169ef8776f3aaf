"""Zero-mean Gaussian states in standard form.

Covariance matrices are normalized so that the vacuum has unit variance in
each quadrature (vacuum covariance = identity).  Quadratures are ordered with
all positions first, then all momenta: (q1, ..., qm, p1, ..., pm).  All
logarithms crossing the module boundary are base 2; arcoth uses natural log
internally.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NonFaithfulStateError

# States with nu_min <= 1 + TOL_FAITHFUL are rejected by exponential_form:
# the arcoth gradient blows up and downstream divergences lose precision.
TOL_FAITHFUL = 1e-9
TOL_PHYSICAL = 1e-12

_SIGMA_Z = np.diag([1.0, -1.0])


def symplectic_form(m):
    """Symplectic form Omega = [[0, 1], [-1, 0]] ⊗ I_m, positions-first ordering."""
    if m < 1:
        raise ValueError(f"mode count must be >= 1, got {m}")
    return np.kron(np.array([[0.0, 1.0], [-1.0, 0.0]]), np.eye(m))


def arcoth(x):
    """Inverse hyperbolic cotangent, 0.5*ln((x+1)/(x-1)), defined for |x| > 1."""
    x = np.asarray(x)
    if x.dtype.kind != "f":
        x = x.astype(float)
    if np.any(np.abs(x) <= 1.0):
        raise ValueError("arcoth requires |x| > 1")
    return 0.5 * np.log((x + 1.0) / (x - 1.0))


@dataclass(frozen=True)
class TwoModeStandardForm:
    """Two-mode zero-mean Gaussian state with covariance in standard form.

    The 4x4 covariance matrix is [[a, c], [c, b]] on the position block and
    [[a, -c], [-c, b]] on the momentum block, with no q-p correlations.
    """

    a: float
    b: float
    c: float

    @property
    def modes(self):
        return 2

    def covariance(self):
        a, b, c = self.a, self.b, self.c
        qq = np.array([[a, c], [c, b]])
        pp = np.array([[a, -c], [-c, b]])
        v = np.zeros((4, 4), dtype=qq.dtype)
        v[:2, :2] = qq
        v[2:, 2:] = pp
        return v


@dataclass(frozen=True)
class SingleModeThermal:
    """Thermal state of mean photon number N, covariance (2N+1) * I_2."""

    n_mean: float

    @property
    def modes(self):
        return 1

    @property
    def nu(self):
        return 2.0 * self.n_mean + 1.0

    def covariance(self):
        return self.nu * np.eye(2)


@dataclass(frozen=True)
class SymplecticData:
    """Analytic symplectic diagonalization of a standard-form state.

    nu_minus and nu_plus follow the closed-form labels
    nu_± = [sqrt(y) ± (b - a)] / 2 with y = (a+b)^2 - 4c^2; when a > b these
    labels are not sorted, so use nu_min/nu_max for physicality checks.
    """

    nu_minus: float
    nu_plus: float
    omega_plus: float
    omega_minus: float
    y_discriminant: float

    @property
    def nu_min(self):
        return min(self.nu_minus, self.nu_plus)

    @property
    def nu_max(self):
        return max(self.nu_minus, self.nu_plus)


def symplectic_data(state):
    """Closed-form symplectic eigenvalues and diagonalizing data."""
    a, b, c = state.a, state.b, state.c
    y = (a + b) ** 2 - 4.0 * c**2
    if y < 0.0:
        raise ValueError(f"discriminant (a+b)^2 - 4c^2 = {y} < 0: not a standard-form state")
    root_y = np.sqrt(y)
    nu_minus = (root_y - (b - a)) / 2.0
    nu_plus = (root_y + (b - a)) / 2.0
    omega_plus = np.sqrt((a + b + root_y) / (2.0 * root_y))
    omega_minus = np.sqrt((a + b - root_y) / (2.0 * root_y))
    return SymplecticData(nu_minus, nu_plus, omega_plus, omega_minus, y)


def symplectic_matrix(state, data=None):
    """4x4 symplectic S with V = S (D ⊕ D) S^T, D = diag(nu_minus, nu_plus)."""
    if data is None:
        data = symplectic_data(state)
    # omega_minus carries the sign of c so that S_0 D S_0^T reproduces the
    # position block [[a, c], [c, b]] for either sign of the correlation.
    sgn = 1.0 if state.c >= 0.0 else -1.0
    s0 = np.array(
        [
            [data.omega_plus, sgn * data.omega_minus],
            [sgn * data.omega_minus, data.omega_plus],
        ]
    )
    s = np.zeros((4, 4), dtype=s0.dtype)
    s[:2, :2] = s0
    s[2:, 2:] = _SIGMA_Z @ s0 @ _SIGMA_Z
    return s


def check_physical(state):
    """True iff the state satisfies the uncertainty principle (nu_min >= 1)."""
    if isinstance(state, SingleModeThermal):
        return state.n_mean >= -TOL_PHYSICAL
    if state.a < 1.0 or state.b < 1.0:
        return False
    a, b, c = state.a, state.b, state.c
    y = (a + b) ** 2 - 4.0 * c**2
    if y < 0.0:
        return False
    return symplectic_data(state).nu_min >= 1.0 - TOL_PHYSICAL


def is_faithful(state):
    """True iff every symplectic eigenvalue exceeds 1 + TOL_FAITHFUL."""
    if isinstance(state, SingleModeThermal):
        return state.nu > 1.0 + TOL_FAITHFUL
    a, b, c = state.a, state.b, state.c
    if (a + b) ** 2 - 4.0 * c**2 < 0.0:
        return False
    return symplectic_data(state).nu_min > 1.0 + TOL_FAITHFUL


def mean_photon_number(state):
    """Total mean photon number under the vacuum-variance-1 normalization."""
    if isinstance(state, SingleModeThermal):
        return state.n_mean
    return (state.a + state.b) / 2.0 - 1.0


@dataclass(frozen=True)
class ExponentialForm:
    """Matrix G and log2(Z) of the Gaussian exponential form.

    A faithful zero-mean state is Z^{-1/2} exp(-x^T G x / 2); G is in natural
    (nats) units by construction, Z is exposed as log base 2.
    """

    g_matrix: np.ndarray
    log2_z: float


def exponential_form(state):
    """Compute the exponential-form data (G, log2 Z) of a faithful state."""
    if isinstance(state, SingleModeThermal):
        nu = state.nu
        if nu <= 1.0 + TOL_FAITHFUL:
            raise NonFaithfulStateError(
                f"thermal state with nu = {nu} is not faithful (arcoth pole at 1)"
            )
        g = 2.0 * arcoth(nu) * np.eye(2)
        log2_z = np.log2((nu**2 - 1.0) / 4.0)
        return ExponentialForm(g, log2_z)

    data = symplectic_data(state)
    if data.nu_min <= 1.0 + TOL_FAITHFUL:
        raise NonFaithfulStateError(
            f"state (a={state.a}, b={state.b}, c={state.c}) has nu_min = "
            f"{data.nu_min}, not faithful"
        )
    s = symplectic_matrix(state, data)
    omega = symplectic_form(2)
    ac = np.diag(
        [
            arcoth(data.nu_minus),
            arcoth(data.nu_plus),
            arcoth(data.nu_minus),
            arcoth(data.nu_plus),
        ]
    )
    g = -2.0 * omega @ s @ ac @ s.T @ omega
    log2_z = np.log2((data.nu_minus**2 - 1.0) / 4.0) + np.log2(
        (data.nu_plus**2 - 1.0) / 4.0
    )
    return ExponentialForm(g, log2_z)
