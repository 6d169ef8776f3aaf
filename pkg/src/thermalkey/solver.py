"""Numerical construction of the finite-energy two-mode resource state that
teleportation-simulates a given thermal channel.

With the gain fixed at g = ±sqrt(eta), the channel-matching constraint
y = g^2 a + 2 g c + b eliminates b, leaving two nested 1D root finds:
an inner solve on c pinning the smaller symplectic eigenvalue at 1 + delta,
and an outer solve on a matching the suboptimal relative entropy of
entanglement to the Choi-state value."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .bounds import thermal_asymptotic
from .channels import (
    apply_channel,
    simulated_channel_from_resource,
    teleport_verify,
    thermal_channel,
)
from .entanglement import suboptimal_ree
from .errors import BracketNotFoundError
from .gaussian import (
    TwoModeStandardForm,
    check_physical,
    is_faithful,
    mean_photon_number,
    symplectic_data,
)


@dataclass(frozen=True)
class SolverOptions:
    delta: float = 1e-4  # target offset of nu_min above 1
    tol_constraint: float = 1e-8  # for the y and nu_min residuals
    tol_ree: float = 1e-6  # bits
    a_bracket: tuple = (None, 1e4)  # lower end defaults to 1 + delta
    max_iter: int = 200
    gain_sign_order: tuple = (-1, 1)  # negative gain first, per the constraints
    outer_scan_points: int = 400
    inner_scan_points: int = 400


@dataclass(frozen=True)
class ResourceState:
    state: TwoModeStandardForm
    g: float
    delta: float
    residuals: tuple  # (y residual, nu_min residual, REE residual in bits)
    energy: float  # total mean photon number


@dataclass(frozen=True)
class VerifyReport:
    channel_ok: bool
    nu_ok: bool
    ree_ok: bool
    channel_residual: float
    nu_residual: float
    ree_residual: float
    energy: float

    @property
    def all_ok(self):
        return self.channel_ok and self.nu_ok and self.ree_ok


def _nu_min_grid(a, b, c):
    """Vectorized smaller symplectic eigenvalue; NaN where out of domain."""
    y = (a + b) ** 2 - 4.0 * c**2
    with np.errstate(invalid="ignore"):
        root = np.sqrt(y)
    return np.minimum((root - (b - a)) / 2.0, (root + (b - a)) / 2.0)


def _inner_roots(a, g, y_target, delta, opts):
    """All c >= 0 with nu_min(a, b(c), c) = 1 + delta, b = y - g^2 a - 2 g c.

    Returns a (possibly empty) ascending list of (c, b) pairs.

    Arithmetic runs in extended precision: the solutions of interest can sit
    at a ~ 1e8 where float64 loses the ~1e-8 structure of nu_min."""
    a = np.longdouble(a)
    g = np.longdouble(g)
    y_target = np.longdouble(y_target)
    target = np.longdouble(1.0) + np.longdouble(delta)

    def b_of(c):
        return y_target - g * g * a - 2.0 * g * c

    # Domain limit in c: b >= 1 and (a + b)^2 >= 4 c^2, both linear/quadratic
    # in c; take a generous upper end and mask invalid samples in the scan.
    limits = []
    slope = -2.0 * g  # db/dc
    if slope < 0.0:
        limits.append((y_target - g * g * a - 1.0) / (2.0 * g) if g != 0 else np.inf)
    # (a + b(c)) - 2c = 0 boundary when a + b shrinks relative to 2c.
    denom = 2.0 - slope
    if denom > 0.0:
        limits.append((a + y_target - g * g * a) / denom)
    c_hi = min([lim for lim in limits if lim > 0.0], default=10.0 * (a + y_target))
    if not np.isfinite(c_hi) or c_hi <= 0.0:
        return []

    # Domain start: where b(c) crosses 1 from below (possible when db/dc > 0).
    c_lo = 0.0
    if slope > 0.0 and b_of(0.0) < 1.0:
        c_lo = (1.0 - (y_target - g * g * a)) / slope
    if c_lo >= c_hi:
        return []
    # The nu_min = 1 + delta crossing can sit within O(delta) of the domain
    # edge, so refine the scan logarithmically away from both edges.
    span = c_hi - c_lo
    n_pts = opts.inner_scan_points
    pieces = [
        c_lo + np.geomspace(span * 1e-12, span, n_pts // 2),
        c_hi - np.geomspace(span * 1e-12, span, n_pts // 4),
        np.linspace(c_lo, c_hi, n_pts // 4),
    ]
    # At large a the feasible set collapses to an O(1)-wide bump pinned just
    # above the maximally-entangled correlation |g| sqrt(a^2 - 1); a uniform
    # grid over the whole domain cannot resolve it, so sample it directly.
    c_peak = np.abs(g) * np.sqrt(a * a - 1.0)
    if c_lo < c_peak < c_hi:
        offsets = np.concatenate(
            [-np.geomspace(1e-6, 5.0, 60), [0.0], np.geomspace(1e-6, 1e3, 120)]
        )
        pieces.append(np.clip(c_peak + np.asarray(offsets, dtype=np.longdouble), c_lo, c_hi))
    c_grid = np.unique(np.concatenate([np.asarray(p, dtype=np.longdouble) for p in pieces]))
    b_grid = b_of(c_grid)
    nu = _nu_min_grid(a, b_grid, c_grid)
    f = nu - target
    valid = np.isfinite(f) & (b_grid >= 1.0)

    def fc(c):
        c = np.longdouble(c)
        b = b_of(c)
        y = (a + b) ** 2 - 4.0 * c**2
        if y < 0.0 or b < 1.0:
            return float(-target)
        root = np.sqrt(y)
        return float(min((root - (b - a)) / 2.0, (root + (b - a)) / 2.0) - target)

    brackets = []
    for i in range(len(c_grid) - 1):
        if valid[i] and valid[i + 1] and f[i] * f[i + 1] <= 0.0 and f[i] != f[i + 1]:
            brackets.append((c_grid[i], c_grid[i + 1]))
    if not brackets:
        # The feasible set can be a bump of height ~2 N_B that slips between
        # grid points; refine around the sampled maximum before giving up.
        masked = np.where(valid, f, -np.inf)
        i_max = int(np.argmax(masked))
        if not np.isfinite(masked[i_max]):
            return []
        lo = c_grid[max(i_max - 1, 0)]
        hi = c_grid[min(i_max + 1, len(c_grid) - 1)]
        peak = minimize_scalar(
            lambda c: -fc(c), bounds=(lo, hi), method="bounded",
            options={"xatol": 1e-14},
        )
        if -peak.fun <= 0.0:
            return []
        if fc(lo) < 0.0:
            brackets.append((lo, peak.x))
        if fc(hi) < 0.0:
            brackets.append((peak.x, hi))
        if not brackets:
            return []

    roots = []
    for blo, bhi in brackets:
        # Bisect in extended precision: a float64 root finder leaves the
        # eigenvalue pinned only to ~eps * a, which at a ~ 1e7 overshoots
        # the constraint tolerance.
        lo = np.longdouble(blo)
        hi = np.longdouble(bhi)
        flo = fc(lo)
        fhi = fc(hi)
        if flo == 0.0:
            roots.append((lo, b_of(lo)))
            continue
        if fhi == 0.0:
            roots.append((hi, b_of(hi)))
            continue
        if flo * fhi > 0.0:
            # Rounding at the bracket edge flipped a marginal sign; skip it.
            continue
        for _ in range(120):
            mid = (lo + hi) / 2.0
            if mid == lo or mid == hi:
                break
            fm = fc(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if (fm < 0.0) == (flo < 0.0):
                lo, flo = mid, fm
            else:
                hi = mid
        c = (lo + hi) / 2.0
        roots.append((c, b_of(c)))
    return roots


def _pick_root(roots, branch):
    """Root for the requested branch: 0 = smallest c, 1 = largest c."""
    if not roots:
        return None
    return roots[0] if branch == 0 else roots[-1]


def _ree_residual(a, g, y_target, delta, target_ree, opts, branch):
    """REE(a) - target with c from the inner solve; None if unsolvable."""
    inner = _pick_root(_inner_roots(a, g, y_target, delta, opts), branch)
    if inner is None:
        return None
    c, b = inner
    state = TwoModeStandardForm(a, b, c)
    if not (check_physical(state) and is_faithful(state)):
        return None
    try:
        return suboptimal_ree(state) - target_ree
    except ValueError:
        return None


def _solve_for_branch(params, opts, sign, branch):
    g = sign * math.sqrt(params.eta)
    y_target = thermal_channel(params).y
    target_ree = thermal_asymptotic(params.eta, params.n_b)
    a_lo = opts.a_bracket[0] if opts.a_bracket[0] is not None else 1.0 + opts.delta
    a_hi = opts.a_bracket[1]

    def residual(a):
        return _ree_residual(a, g, y_target, opts.delta, target_ree, opts, branch)

    a_grid = np.geomspace(a_lo, a_hi, opts.outer_scan_points)
    res = [residual(a) for a in a_grid]

    def assemble(a):
        c, b = _pick_root(_inner_roots(a, g, y_target, opts.delta, opts), branch)
        state = TwoModeStandardForm(a, b, c)
        simulated_channel_from_resource(state, g)  # physicality gate
        gl = np.longdouble(g)
        y_res = abs(
            gl * gl * np.longdouble(a)
            + 2.0 * gl * np.longdouble(c)
            + np.longdouble(b)
            - np.longdouble(y_target)
        )
        nu_res = abs(symplectic_data(state).nu_min - (1.0 + opts.delta))
        ree_res = abs(suboptimal_ree(state) - target_ree)
        return ResourceState(
            state=state,
            g=g,
            delta=opts.delta,
            residuals=(y_res, nu_res, ree_res),
            energy=mean_photon_number(state),
        )

    # First sign change of the REE residual in ascending a.
    for i in range(len(a_grid) - 1):
        ri, rj = res[i], res[i + 1]
        if ri is None or rj is None or ri == 0.0 or ri * rj > 0.0:
            if ri is not None and ri == 0.0:
                return assemble(a_grid[i])
            continue
        try:
            a_root = brentq(
                residual, a_grid[i], a_grid[i + 1],
                xtol=1e-13, rtol=1e-15, maxiter=opts.max_iter,
            )
        except (TypeError, ValueError):
            # Inner solve lost its bracket inside this interval; keep scanning.
            continue
        return assemble(a_root)

    # The residual is nonnegative when the target REE sits at the separability
    # boundary (e.g. a channel whose Choi-state REE is exactly zero); fall back
    # to refining the scan minimum and accept it within tol_ree.
    finite = [(abs(r), i) for i, r in enumerate(res) if r is not None]
    if finite:
        _, i_min = min(finite)
        lo = a_grid[max(i_min - 1, 0)]
        hi = a_grid[min(i_min + 1, len(a_grid) - 1)]

        def abs_residual(a):
            r = residual(a)
            return np.inf if r is None else abs(r)

        opt = minimize_scalar(
            abs_residual, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13}
        )
        if opt.fun <= opts.tol_ree:
            return assemble(opt.x)

    # For very weak thermal noise the residual stays positive at every finite
    # a and decays toward zero like 1/a; converge by root-finding the residual
    # onto a shifted target deep inside tol_ree, extending the bracket as
    # needed.  All stated invariants still hold at the returned state.
    shift_levels = sorted({min(opts.tol_ree / 2.0, opts.tol_constraint), opts.tol_ree / 2.0})
    positives = [r for r in res if r is not None]
    if positives and all(r > 0.0 for r in positives):
        a_anchor = a_grid[next(i for i, r in enumerate(res) if r is not None)]
        samples = []
        step = a_hi
        r_prev = None
        for _ in range(18):
            step *= math.sqrt(10.0)
            r_far = residual(step)
            if r_far is None or r_far <= 0.0:
                # A vanishing or sign-flipped sample on an all-positive decay
                # is rounding noise, not signal; stop before it.
                break
            samples.append((step, r_far))
            if r_far < shift_levels[0]:
                break
            if r_prev is not None and r_far >= r_prev:
                # The decay bottomed out at the precision floor.
                break
            r_prev = r_far
        # Converge onto the deepest shifted target the decay actually reaches;
        # the residual can plateau above the tightest level yet still land
        # well inside tol_ree.
        if samples:
            best = min(rr for _, rr in samples)
            shift_levels = sorted(
                set(shift_levels)
                | {min(max(1.5 * best, shift_levels[0]), shift_levels[-1])}
            )
        for shift in shift_levels:
            hits = [aa for aa, rr in samples if rr < shift]
            if not hits:
                continue

            def shifted(a, s=shift):
                r = residual(a)
                return 1e6 if r is None else float(r - s)

            try:
                a_root = brentq(
                    shifted, a_anchor, hits[0],
                    xtol=1e-10, rtol=1e-15, maxiter=opts.max_iter,
                )
                out = assemble(a_root)
            except (TypeError, ValueError):
                continue
            if out.residuals[2] <= opts.tol_ree:
                return out

    signs = [None if r is None else math.copysign(1.0, r) for r in res]
    raise BracketNotFoundError(
        f"no REE-residual sign change over a in [{a_lo}, {a_hi}] "
        f"with gain {g} (branch {branch})",
        scanned={"a_grid": a_grid, "residual_signs": signs},
    )


def solve_resource_state(params, opts=None):
    """Solve for the resource state simulating the thermal channel `params`.

    Deterministic given (params, opts); tries the gain signs in the configured
    order and returns the first solution satisfying all residual tolerances.
    """
    opts = opts or SolverOptions()
    errors = []
    for sign in opts.gain_sign_order:
        for branch in (0, 1):
            try:
                rs = _solve_for_branch(params, opts, sign, branch)
            except BracketNotFoundError as exc:
                errors.append(exc)
                continue
            y_res, nu_res, ree_res = rs.residuals
            if (
                y_res <= opts.tol_constraint
                and nu_res <= opts.tol_constraint
                and ree_res <= opts.tol_ree
                and math.isfinite(rs.energy)
            ):
                return rs
            errors.append(
                BracketNotFoundError(
                    f"gain {sign} branch {branch}: residuals {rs.residuals} "
                    "exceed tolerances"
                )
            )
    msg = "resource-state solve failed for both gain signs: " + "; ".join(
        str(e) for e in errors
    )
    if opts.delta >= 2.0 * params.n_b:
        # On the channel-matching manifold with |g| = sqrt(eta), the smaller
        # symplectic eigenvalue is bounded above by the channel's fixed-point
        # variance y / (1 - eta) = 1 + 2 N_B, so this delta is out of reach.
        msg += (
            f"; delta={opts.delta:g} is not attainable for this channel "
            f"(requires delta < 2 N_B = {2.0 * params.n_b:g})"
        )
    raise BracketNotFoundError(msg)


def delta_candidates(n_b):
    """Default ladder of eigenvalue offsets to try, shallowest first.

    On the channel-matching manifold the offset is capped at 2 N_B, so the
    conventional 1e-4 only applies when the channel is noisy enough; the
    remaining entries approach the cap from below.
    """
    first = 1e-4 if 2.0 * n_b > 1e-4 else n_b / 3.0
    return (first, 2.0 * n_b * (1.0 - 1e-3), 2.0 * n_b * (1.0 - 1e-6))


def solve_with_delta_fallback(params, delta=None, opts=None):
    """Solve with a requested delta, or walk the default ladder until one works."""
    opts = opts or SolverOptions()
    deltas = (delta,) if delta is not None else delta_candidates(params.n_b)
    errors = []
    for d in deltas:
        try:
            return solve_resource_state(
                params, SolverOptions(**{**opts.__dict__, "delta": d})
            )
        except (BracketNotFoundError, ValueError) as exc:
            errors.append(f"delta={d:g}: {exc}")
    raise BracketNotFoundError(
        "no delta candidate admitted a solution: " + " | ".join(errors)
    )


def verify_resource(rs, params, rng=None, n_probes=5, tol=1e-8):
    """Recompute the three constraint residuals with independent code paths.

    The channel match is checked by propagating random inputs through the
    explicit teleportation protocol rather than the algebraic (tau, y) formula.
    """
    rng = rng or np.random.default_rng(0)
    target = thermal_channel(params)
    # The teleportation route runs in float64 and cancels terms of size ~a,
    # so it cannot resolve the match below ~eps * a; widen the gate to what
    # that precision supports.
    scale = 1.0 + abs(float(rs.state.a)) + abs(float(rs.state.b))
    tol_channel = max(tol, 16.0 * np.finfo(float).eps * scale)
    ch_res = 0.0
    for _ in range(n_probes):
        n_in = rng.uniform(0.0, 2.0)
        v_in = (2.0 * n_in + 1.0) * np.eye(2)
        out_tp = teleport_verify(rs.state, rs.g, v_in)
        out_ch = apply_channel(target, v_in)
        ch_res = max(ch_res, float(np.max(np.abs(out_tp - out_ch))))
    nu_res = abs(symplectic_data(rs.state).nu_min - (1.0 + rs.delta))
    ree_res = abs(
        suboptimal_ree(rs.state) - thermal_asymptotic(params.eta, params.n_b)
    )
    return VerifyReport(
        channel_ok=ch_res <= tol_channel,
        nu_ok=nu_res <= tol,
        ree_ok=ree_res <= 1e-6,
        channel_residual=ch_res,
        nu_residual=nu_res,
        ree_residual=ree_res,
        energy=mean_photon_number(rs.state),
    )
