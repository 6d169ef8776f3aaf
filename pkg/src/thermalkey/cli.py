"""Command-line front end: bound-curve CSV emission, resource-state solving,
and a self-contained verification suite.

Exit codes: 0 success, 1 solver/numeric failure, 2 invalid input.
"""

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from .bounds import (
    BoundKind,
    curve_point,
    pure_loss_asymptotic,
    pure_loss_strong_converse,
    pure_loss_weak_converse,
    resource_divergences,
    second_order_expansion,
    thermal_asymptotic,
    thermal_strong_converse,
    thermal_weak_converse,
)
from .channels import (
    ThermalChannelParams,
    apply_channel,
    eta_from_distance,
    teleport_verify,
    thermal_channel,
)
from .divergences import relative_entropy, relative_entropy_variance
from .errors import BracketNotFoundError
from .fock import cross_moment_double_sum, thermal_pair_divergences
from .gaussian import SingleModeThermal
from .rci import (
    achievability_estimate,
    cross_photon_moment,
    entropy_variance_thermal,
    rci_variance,
    rci_variance_large_ns,
)
from .solver import SolverOptions, solve_with_delta_fallback, verify_resource

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_USAGE = 2

DEFAULT_L0_KM = 0.542
DEFAULT_EPS = 1e-10
DEFAULT_N_MIN = 1e3
DEFAULT_N_MAX = 1e12
DEFAULT_N_POINTS = 60
DEFAULT_NS = 1e3  # input photon number for the achievability curve
DEFAULT_KINDS = ("thermal_asymptotic", "thermal_sc", "thermal_wc",
                 "thermal_second_order")

CSV_HEADER = "n,kind,value_bits,raw_bits,clamped,eta,n_b,eps,delta"


class UsageError(ValueError):
    pass


def _fmt(x):
    """17 significant digits: lossless round trip of binary64."""
    return format(float(x), ".17g")


def _load_config(path):
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    return cfg


def _merged(args, keys):
    """Resolve config values: defaults < JSON config file < explicit flags."""
    cfg = _load_config(args.config) if args.config else {}
    out = {}
    for key, default in keys.items():
        flag = getattr(args, key, None)
        if flag is not None:
            out[key] = flag
        elif key in cfg and cfg[key] is not None:
            out[key] = cfg[key]
        else:
            out[key] = default
    return out


def resolve_eta(cfg):
    has_eta = cfg.get("eta") is not None
    has_dist = cfg.get("distance_km") is not None
    if has_eta == has_dist:
        raise UsageError("provide exactly one of --eta or --distance-km")
    if has_eta:
        eta = float(cfg["eta"])
    else:
        eta = eta_from_distance(float(cfg["distance_km"]), float(cfg["l0_km"]))
    if not 0.0 < eta < 1.0:
        raise UsageError(f"transmissivity must be in (0, 1), got {eta}")
    return eta


def n_grid(n_min, n_max, n_points):
    if not (n_min >= 1 and n_max > n_min and n_points >= 2):
        raise UsageError(
            f"need 1 <= n_min < n_max and n_points >= 2, "
            f"got ({n_min}, {n_max}, {n_points})"
        )
    grid = np.unique(np.rint(np.geomspace(n_min, n_max, int(n_points))))
    return [int(n) for n in grid]


def parse_kinds(kinds):
    if isinstance(kinds, str):
        kinds = [k.strip() for k in kinds.split(",") if k.strip()]
    try:
        return [BoundKind(k) for k in kinds]
    except ValueError as exc:
        raise UsageError(
            f"{exc}; valid kinds: {', '.join(k.value for k in BoundKind)}"
        ) from None


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def generate_rows(cfg):
    """All CSV rows for a bounds run; solves the resource state at most once."""
    eta = resolve_eta(cfg)
    kinds = parse_kinds(cfg["kinds"])
    eps = float(cfg["eps"])
    if not 0.0 < eps < 1.0:
        raise UsageError(f"eps must be in (0, 1), got {eps}")
    n_b = cfg.get("n_b")
    clamp = bool(cfg["clamp"])
    log_term = bool(cfg["include_log_term"])
    ns = float(cfg["n_s"])
    grid = n_grid(float(cfg["n_min"]), float(cfg["n_max"]), cfg["n_points"])

    thermal_kinds = {
        BoundKind.THERMAL_ASYMPTOTIC,
        BoundKind.THERMAL_SC,
        BoundKind.THERMAL_WC,
        BoundKind.THERMAL_SECOND_ORDER,
    }
    if any(k in thermal_kinds for k in kinds):
        if n_b is None:
            raise UsageError("--nb is required for thermal bound kinds")
        n_b = float(n_b)
        params = ThermalChannelParams(eta, n_b)
        thermal_channel(params)  # validates domain, including N_B > 0

    rs = None
    d = v = None
    if BoundKind.THERMAL_SECOND_ORDER in kinds:
        rs = solve_with_delta_fallback(params, delta=cfg.get("delta"))
        dv = resource_divergences(rs)
        d, v = dv.d, dv.v

    delta_used = rs.delta if rs is not None else cfg.get("delta")
    delta_col = float("nan") if delta_used is None else float(delta_used)
    nb_col = float("nan") if n_b is None else float(n_b)

    rows = []
    for n in grid:
        for kind in kinds:
            if kind == BoundKind.PURE_LOSS_ASYMPTOTIC:
                raw = pure_loss_asymptotic(eta)
            elif kind == BoundKind.PURE_LOSS_SC:
                raw = pure_loss_strong_converse(eta, n, eps)
            elif kind == BoundKind.PURE_LOSS_WC:
                raw = pure_loss_weak_converse(eta, n, eps)
            elif kind == BoundKind.THERMAL_ASYMPTOTIC:
                raw = thermal_asymptotic(eta, n_b)
            elif kind == BoundKind.THERMAL_SC:
                raw = thermal_strong_converse(eta, n_b, n, eps)
            elif kind == BoundKind.THERMAL_WC:
                raw = thermal_weak_converse(eta, n_b, n, eps)
            elif kind == BoundKind.THERMAL_SECOND_ORDER:
                raw = second_order_expansion(d, v, n, eps, log_term)
            elif kind == BoundKind.ACHIEVABILITY_ESTIMATE:
                raw = achievability_estimate(ns, eta, n, eps)
            else:  # pragma: no cover - enum is exhaustive
                raise UsageError(f"unhandled bound kind {kind}")
            point = curve_point(n, kind, raw, clamp=clamp)
            rows.append((point, eta, nb_col, eps, delta_col))
    return rows, rs


def rows_to_csv(rows):
    lines = [CSV_HEADER]
    for point, eta, nb, eps, delta in rows:
        lines.append(
            ",".join(
                [
                    str(point.n),
                    point.kind.value,
                    _fmt(point.value),
                    _fmt(point.raw),
                    "true" if point.clamped else "false",
                    _fmt(eta),
                    _fmt(nb),
                    _fmt(eps),
                    _fmt(delta),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def cmd_bounds(args):
    cfg = _merged(
        args,
        {
            "eta": None,
            "distance_km": None,
            "l0_km": DEFAULT_L0_KM,
            "n_b": None,
            "eps": DEFAULT_EPS,
            "delta": None,
            "n_min": DEFAULT_N_MIN,
            "n_max": DEFAULT_N_MAX,
            "n_points": DEFAULT_N_POINTS,
            "kinds": list(DEFAULT_KINDS),
            "clamp": True,
            "include_log_term": False,
            "n_s": DEFAULT_NS,
            "out": None,
            "plot": False,
        },
    )
    rows, _ = generate_rows(cfg)
    text = rows_to_csv(rows)
    if cfg["out"]:
        _atomic_write(cfg["out"], text)
        print(f"wrote {len(rows)} rows to {cfg['out']}")
        if cfg["plot"]:
            from .plots import plot_bound_curves

            fig_path = os.path.splitext(cfg["out"])[0] + ".png"
            plot_bound_curves(
                [(p.n, p.kind.value, p.value, p.raw) for p, *_ in rows],
                fig_path,
                title=f"eta={rows[0][1]:.4g}, n_b={rows[0][2]:.4g}, "
                f"eps={rows[0][3]:.4g}",
            )
            print(f"wrote figure to {fig_path}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args):
    cfg = _merged(
        args,
        {
            "eta": None,
            "distance_km": None,
            "l0_km": DEFAULT_L0_KM,
            "n_b": None,
            "delta": None,
            "out": None,
        },
    )
    eta = resolve_eta(cfg)
    if cfg["n_b"] is None:
        raise UsageError("--nb is required to solve for a resource state")
    params = ThermalChannelParams(eta, float(cfg["n_b"]))
    thermal_channel(params)  # validates, rejecting the pure-loss case N_B = 0
    rs = solve_with_delta_fallback(params, delta=cfg.get("delta"))
    report = verify_resource(rs, params)
    dv = resource_divergences(rs)
    fields = [
        ("a", rs.state.a),
        ("b", rs.state.b),
        ("c", rs.state.c),
        ("g", rs.g),
        ("delta", rs.delta),
        ("y_residual", rs.residuals[0]),
        ("nu_residual", rs.residuals[1]),
        ("ree_residual_bits", rs.residuals[2]),
        ("energy_photons", rs.energy),
        ("d_bits", dv.d),
        ("v_bits2", dv.v),
    ]
    print(f"resource state for eta={eta:.12g}, n_b={float(cfg['n_b']):.12g}")
    for name, value in fields:
        print(f"  {name:>18} = {_fmt(value)}")
    print(f"  verification: channel={report.channel_ok} nu={report.nu_ok} "
          f"ree={report.ree_ok}")
    if cfg["out"]:
        lines = ["field,value"] + [f"{k},{_fmt(v)}" for k, v in fields]
        _atomic_write(cfg["out"], "\n".join(lines) + "\n")
    return EXIT_OK if report.all_ok else EXIT_NUMERIC


def _verify_checks(eta, n_b, perturb=0.0):
    """(name, residual, tolerance) triples for the verification suite."""
    checks = []

    # Gaussian divergence formulas against the truncated number-basis sums.
    for n1 in (0.1, 0.5, 1.0):
        for n2 in (0.5, 2.0):
            if n1 == n2:
                continue
            oracle = thermal_pair_divergences(n1, n2)
            rho = SingleModeThermal(n1)
            sigma = SingleModeThermal(n2)
            d = relative_entropy(rho, sigma) + perturb
            v = relative_entropy_variance(rho, sigma) + perturb
            checks.append((f"relative_entropy theta({n1})||theta({n2})",
                           abs(d - oracle.d), 1e-8))
            checks.append((f"entropy_variance theta({n1})||theta({n2})",
                           abs(v - oracle.v), 1e-8))

    # Teleportation simulation against the direct channel action.
    params = ThermalChannelParams(eta, n_b)
    rs = solve_with_delta_fallback(params)
    target = thermal_channel(params)
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(5):
        v_in = (2.0 * rng.uniform(0.0, 2.0) + 1.0) * np.eye(2)
        out_tp = teleport_verify(rs.state, rs.g, v_in)
        out_ch = apply_channel(target, v_in)
        worst = max(worst, float(np.max(np.abs(out_tp - out_ch))))
    scale = 1.0 + abs(float(rs.state.a)) + abs(float(rs.state.b))
    tol_tp = max(1e-8, 16.0 * np.finfo(float).eps * scale)
    checks.append((f"teleport simulation eta={eta:g} n_b={n_b:g}",
                   worst + perturb, tol_tp))

    # Reverse-coherent-information identities.  The exact variance decays
    # like eta / ((1 - eta) N_S ln^2 2); only the large-N_S squared-difference
    # form collapses quadratically.
    checks.append(("rci variance decays at large photon number",
                   rci_variance(1e6, 0.5) + perturb, 1e-5))
    checks.append(("rci large-N_S approximation vanishes",
                   rci_variance_large_ns(1e6, 0.5) + perturb, 1e-10))
    for ns in (0.5, 1.0, 2.0):
        res = abs(rci_variance(ns, 1.0 - 1e-12) - entropy_variance_thermal(ns))
        checks.append((f"rci variance -> thermal entropy variance (N_S={ns})",
                       res + perturb, 1e-6))
    res = abs(cross_photon_moment(1.0, 0.5) - cross_moment_double_sum(1.0, 0.5, 400))
    checks.append(("cross photon moment double-sum", res + perturb, 1e-8))
    return checks


def cmd_verify(args):
    cfg = _merged(
        args,
        {"eta": None, "distance_km": None, "l0_km": DEFAULT_L0_KM, "n_b": None},
    )
    eta = resolve_eta(cfg) if (cfg["eta"] is not None
                               or cfg["distance_km"] is not None) else math.exp(-1)
    n_b = float(cfg["n_b"]) if cfg["n_b"] is not None else 0.1
    perturb = 1e-4 if args.inject_perturbation else 0.0
    checks = _verify_checks(eta, n_b, perturb=perturb)
    failures = 0
    for name, residual, tol in checks:
        ok = residual <= tol
        failures += 0 if ok else 1
        line = f"[{'PASS' if ok else 'FAIL'}] {name}"
        if args.verbose or not ok:
            line += f"  (residual {residual:.3e}, tol {tol:.1e})"
        print(line)
    print(f"{len(checks) - failures}/{len(checks)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_NUMERIC


def _add_common(parser):
    parser.add_argument("--eta", type=float, help="channel transmissivity in (0, 1)")
    parser.add_argument("--distance-km", type=float, dest="distance_km",
                        help="fiber length; eta = exp(-L/L0)")
    parser.add_argument("--l0-km", type=float, dest="l0_km",
                        help=f"attenuation length (default {DEFAULT_L0_KM})")
    parser.add_argument("--nb", type=float, dest="n_b",
                        help="environment thermal photon number (> 0)")
    parser.add_argument("--config", help="JSON config file; explicit flags win")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thermalkey",
        description="Secret-key-agreement capacity bounds for thermal-loss "
        "bosonic channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="emit bound curves as CSV")
    _add_common(p_bounds)
    p_bounds.add_argument("--eps", type=float, help="error parameter (default 1e-10)")
    p_bounds.add_argument("--delta", type=float,
                          help="resource-state eigenvalue offset (default: auto)")
    p_bounds.add_argument("--n-min", type=float, dest="n_min")
    p_bounds.add_argument("--n-max", type=float, dest="n_max")
    p_bounds.add_argument("--n-points", type=int, dest="n_points")
    p_bounds.add_argument("--kinds", help="comma-separated bound kinds")
    p_bounds.add_argument("--ns", type=float, dest="n_s",
                          help="input photon number for the achievability curve")
    p_bounds.add_argument("--clamp", dest="clamp", action="store_const", const=True)
    p_bounds.add_argument("--no-clamp", dest="clamp", action="store_const",
                          const=False)
    p_bounds.add_argument("--log-term", dest="include_log_term",
                          action="store_const", const=True,
                          help="include the log2(n)/(2n) term")
    p_bounds.add_argument("--out", help="CSV output path (default: stdout)")
    p_bounds.add_argument("--plot", action="store_const", const=True,
                          help="also render a figure next to the CSV")
    p_bounds.set_defaults(func=cmd_bounds, clamp=None, include_log_term=None,
                          plot=None)

    p_solve = sub.add_parser("solve", help="solve for a resource state")
    _add_common(p_solve)
    p_solve.add_argument("--delta", type=float)
    p_solve.add_argument("--out", help="CSV report path")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    _add_common(p_verify)
    p_verify.add_argument("--verbose", action="store_true")
    p_verify.add_argument("--inject-perturbation", action="store_true",
                          help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BracketNotFoundError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
