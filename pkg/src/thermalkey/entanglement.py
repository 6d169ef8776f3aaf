"""Separability threshold for standard-form states and the suboptimal
relative entropy of entanglement (fixed separable reference with the same
a, b and c = c_sep)."""

import numpy as np

from .divergences import relative_entropy
from .errors import NonFaithfulStateError
from .gaussian import TwoModeStandardForm, is_faithful

SEP_TOL = 1e-12


def c_sep(a, b):
    """Correlation threshold sqrt((a-1)(b-1)) below which the state is separable."""
    if a < 1.0 or b < 1.0:
        raise ValueError(f"diagonal elements must be >= 1, got a={a}, b={b}")
    return np.sqrt((a - 1.0) * (b - 1.0))


def is_separable(state):
    """True iff |c| <= c_sep(a, b) within tolerance."""
    return abs(state.c) <= c_sep(state.a, state.b) + SEP_TOL


def separable_reference(state):
    """Separable state with the same a and b and c saturating the threshold."""
    return TwoModeStandardForm(state.a, state.b, c_sep(state.a, state.b))


def suboptimal_ree(state):
    """Relative entropy to the fixed separable reference, in bits.

    States with negative correlation are compared after c -> |c|: a local
    phase flip is a local unitary and cannot change entanglement.
    """
    state = TwoModeStandardForm(state.a, state.b, abs(state.c))
    reference = separable_reference(state)
    if not is_faithful(reference):
        raise NonFaithfulStateError(
            f"separable reference (a={state.a}, b={state.b}, c={reference.c}) "
            "is not faithful"
        )
    return float(relative_entropy(state, reference))
