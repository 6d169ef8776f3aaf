"""Upper bounds on the secret-key-agreement capacity of lossy thermal
bosonic channels, including the second-order bound built from numerically
constructed finite-energy teleportation resource states."""

from .bounds import (
    BoundCurvePoint,
    BoundKind,
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
    resource_divergences,
    second_order_expansion,
    thermal_asymptotic,
    thermal_second_order,
    thermal_strong_converse,
    thermal_weak_converse,
)
from .channels import (
    PhaseInsensitiveChannel,
    ThermalChannelParams,
    apply_channel,
    eta_from_distance,
    simulated_channel_from_resource,
    teleport_verify,
    thermal_channel,
)
from .divergences import (
    DivergenceResult,
    divergence_pair,
    relative_entropy,
    relative_entropy_variance,
)
from .entanglement import c_sep, is_separable, separable_reference, suboptimal_ree
from .errors import (
    BracketNotFoundError,
    DegenerateMeasurementError,
    NonFaithfulStateError,
    TruncationInsufficientError,
    UnphysicalSimulationError,
)
from .fock import (
    DiagonalState,
    cross_moment_double_sum,
    oracle_divergences,
    thermal_diagonal,
    thermal_pair_divergences,
)
from .gaussian import (
    TwoModeStandardForm,
    check_physical,
    exponential_form,
    is_faithful,
    mean_photon_number,
    symplectic_data,
)
from .rci import (
    achievability_estimate,
    cross_photon_moment,
    entropy_variance_thermal,
    rci_variance,
    rci_variance_large_ns,
    reverse_coherent_information,
)
from .solver import (
    ResourceState,
    SolverOptions,
    VerifyReport,
    delta_candidates,
    solve_resource_state,
    solve_with_delta_fallback,
    verify_resource,
)

__version__ = "0.1.0"
