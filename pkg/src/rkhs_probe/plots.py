"""Figure rendering for the report paths of the CLI.

Every helper writes one PNG and returns the path.  Figures are rendered
with the Agg backend and are illustrative companions to the delimited
outputs; the CSV/JSON files carry the reproducible numbers.
"""

from __future__ import annotations

from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_variance_plot(ns: Sequence[int], variances: Sequence[float], path: str,
                       closed_forms: Optional[Sequence[Optional[float]]] = None,
                       title: str = "BLUE variance") -> str:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    pos = [(n, v) for n, v in zip(ns, variances) if v > 0]
    if pos:
        ax.semilogy([p[0] for p in pos], [p[1] for p in pos],
                    "o-", ms=3.5, lw=1.0, label="H_n/G_n")
    zeros = [n for n, v in zip(ns, variances) if v == 0]
    if zeros:
        ax.plot(zeros, [min(p[1] for p in pos) if pos else 1.0] * len(zeros),
                "kx", ms=5, label="exact zero")
    if closed_forms is not None:
        cf = [(n, c) for n, c in zip(ns, closed_forms) if c is not None and c > 0]
        if cf:
            ax.semilogy([p[0] for p in cf], [p[1] for p in cf],
                        "--", lw=1.0, color="C3", label="closed form")
    ax.set_xlabel("n")
    ax.set_ylabel("var_n")
    ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_determinacy_plot(ns: Sequence[int], partial_sums: Sequence[float],
                          a4_ns: Sequence[int], a4_values: Sequence[float],
                          path: str, verdict: str = "") -> str:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.8))
    ax1.plot(ns, partial_sums, "-", lw=1.2)
    ax1.set_xlabel("N")
    ax1.set_ylabel("sum of b_n^(-1/(2n))")
    ax1.set_title("series partial sums")
    ax2.semilogy(a4_ns, a4_values, "o-", ms=3, lw=1.0)
    ax2.set_xlabel("n")
    ax2.set_ylabel("b_n^(1/(2n)) / (2n)")
    ax2.set_title("ratio-growth sequence")
    if verdict:
        fig.suptitle(verdict, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_krige_plot(xs: Sequence[float], f_vals: Sequence[float],
                    means: Sequence[float], lo: Sequence[float], hi: Sequence[float],
                    design_x: Sequence[float], design_f: Sequence[float],
                    path: str, title: str = "kriging fit") -> str:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.fill_between(xs, lo, hi, color="C0", alpha=0.25, lw=0, label="band")
    ax.plot(xs, f_vals, "-", color="C2", lw=1.2, label="f")
    ax.plot(xs, means, "--", color="C0", lw=1.2, label="mean")
    ax.plot(design_x, design_f, "ko", ms=4, label="design")
    ax.set_xlabel("x")
    ax.set_ylabel("value")
    ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_membership_plot(Ns: Sequence[int], N_sigma2: Sequence[float],
                         slope: float, verdict: str, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.loglog(Ns, N_sigma2, "o-", ms=4, lw=1.2)
    ax.set_xlabel("N")
    ax.set_ylabel("N * sigma2_hat")
    ax.set_title(f"{verdict} (slope {slope:.3f})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_residual_plot(ns: Sequence[int], residuals: Sequence[float], path: str,
                       title: str = "closed form vs determinant") -> str:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    pos = [(n, r) for n, r in zip(ns, residuals) if r > 0]
    if pos:
        ax.semilogy([p[0] for p in pos], [p[1] for p in pos], "o-", ms=3.5, lw=1.0)
    exact = [n for n, r in zip(ns, residuals) if r == 0]
    if exact:
        ax.set_xlim(min(ns) - 0.5, max(ns) + 0.5)
        ax.annotate(f"{len(exact)} orders match exactly",
                    xy=(0.02, 0.02), xycoords="axes fraction", fontsize=8)
    ax.set_xlabel("n")
    ax.set_ylabel("|closed form - determinant|")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
