"""Render bound curves to figure files next to their CSV output."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_STYLE = {
    "pure_loss_asymptotic": dict(color="tab:gray", ls="--"),
    "pure_loss_sc": dict(color="tab:cyan", ls="-"),
    "pure_loss_wc": dict(color="tab:cyan", ls=":"),
    "thermal_asymptotic": dict(color="k", ls="--"),
    "thermal_sc": dict(color="tab:red", ls="-"),
    "thermal_wc": dict(color="tab:orange", ls=":"),
    "thermal_second_order": dict(color="tab:blue", ls="-"),
    "achievability_estimate": dict(color="tab:green", ls="-."),
}


def plot_bound_curves(rows, path, title=None, raw=False):
    """Plot rate-vs-n curves from (n, kind, value, raw) tuples and save to path.

    One line per bound kind, log-scaled n axis.  Set raw=True to plot the
    unclamped values instead of the clamped ones.
    """
    series = {}
    for n, kind, value, raw_value in rows:
        xs, ys = series.setdefault(kind, ([], []))
        xs.append(n)
        ys.append(raw_value if raw else value)

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for kind, (xs, ys) in series.items():
        ax.plot(xs, ys, label=kind, **_STYLE.get(kind, {}))
    ax.set_xscale("log")
    ax.set_xlabel("channel uses $n$")
    ax.set_ylabel("rate (bits per channel use)")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
