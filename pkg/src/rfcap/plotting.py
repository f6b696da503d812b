"""Render rate-versus-SNR curves to an image file.

Companion to the CSV output: one line per scheme, error bars where the
rate came from Monte Carlo.  Uses the Agg backend so it works headless.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .schemes import Scheme, SchemeRate

_LABELS = {
    Scheme.BEST_SELECTION: "best selection",
    Scheme.UNIFORM_NO_PA: "uniform (no PA)",
    Scheme.UNIFORM_PA: "uniform (PA)",
    Scheme.NONUNIFORM: "non-uniform",
    Scheme.UPPER_BOUND: "upper bound",
}

_STYLES = {
    Scheme.BEST_SELECTION: dict(color="tab:blue", marker="s"),
    Scheme.UNIFORM_NO_PA: dict(color="tab:orange", marker="^"),
    Scheme.UNIFORM_PA: dict(color="tab:green", marker="v"),
    Scheme.NONUNIFORM: dict(color="tab:red", marker="o"),
    Scheme.UPPER_BOUND: dict(color="black", linestyle="--", marker=""),
}


def plot_rates(rows: list[SchemeRate], path: str, title: str | None = None) -> None:
    """Plot every scheme's curve from report rows and save to ``path``."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for scheme in Scheme:
        pts = sorted((r.snr_db, r.rate, r.std_error) for r in rows if r.scheme is scheme)
        if not pts:
            continue
        x = [p[0] for p in pts]
        y = [p[1] for p in pts]
        errs = [p[2] for p in pts]
        style = _STYLES[scheme]
        if any(e is not None for e in errs):
            ax.errorbar(
                x, y, yerr=[e or 0.0 for e in errs], label=_LABELS[scheme],
                markersize=4, capsize=2, **style,
            )
        else:
            ax.plot(x, y, label=_LABELS[scheme], markersize=4, **style)
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("Spectral efficiency (bits/s/Hz)")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
