"""Matplotlib renderings of the numeric reports.

Figures are written with the Agg backend and fixed metadata so reruns
produce identical files.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

_META = {
    ".png": {"Software": None},
    ".svg": {"Date": None, "Creator": None},
    ".pdf": {"CreationDate": None, "ModDate": None, "Producer": None, "Creator": None},
}
_RC = {"font.size": 9, "axes.spines.top": False, "axes.spines.right": False, "svg.hashsalt": "gradedrham"}


def _integer_axes(ax) -> None:
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.yaxis.set_major_locator(MaxNLocator(integer=True))


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    meta = _META.get(os.path.splitext(path)[1].lower(), {})
    fig.savefig(path, metadata=meta, dpi=120)
    plt.close(fig)
    return path


def hilbert_bars(hf, path: str, title: str = "") -> str:
    """Bar plot of a HilbertFn over its window."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 2.6))
        degs = list(range(hf.lo, hf.hi + 1))
        ax.bar(degs, hf.dims, width=0.7, color="#3b6ea5")
        ax.set_xlabel("degree")
        ax.set_ylabel("dimension")
        _integer_axes(ax)
        if title:
            ax.set_title(title)
        fig.tight_layout()
        return _save(fig, path)


def cap_sweep(stabs, path: str, title: str = "") -> str:
    """Truncated homology dimension against pole cap, one line per degree."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 3))
        for s in stabs:
            caps = range(1, len(s.sequence) + 1)
            ax.plot(caps, s.sequence, marker="o", ms=3, label="d = %d" % s.degree)
        _integer_axes(ax)
        ax.set_xlabel("pole cap")
        ax.set_ylabel("dim")
        if title:
            ax.set_title(title)
        ax.legend(fontsize=7, frameon=False)
        fig.tight_layout()
        return _save(fig, path)


def bound_rows(report: dict, path: str) -> str:
    """Per-nu Koszul dimensions with the bound and the truncated estimate."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.5, 2.6))
        rows = report["rows"]
        ax.bar([r["nu"] for r in rows], [r["h1dim"] for r in rows], color="#3b6ea5", label="H1 dim at candidate")
        est = report.get("truncated_estimate") or {}
        ax.axhline(report["bound"], color="k", lw=1, label="bound = %d" % report["bound"])
        if est.get("status") == "value":
            ax.axhline(est["dim"], color="#c0504d", ls="--", lw=1, label="estimate = %d" % est["dim"])
        _integer_axes(ax)
        ax.set_xlabel("nu")
        ax.set_ylabel("dimension")
        ax.set_title(report["f"])
        ax.legend(fontsize=7, frameon=False)
        fig.tight_layout()
        return _save(fig, path)


def trichotomy_grid(results: list[dict], path: str) -> str:
    """Bound over the (n, m) grid of the x1^2 + ... + x_n^m family."""
    ns = sorted({r["n"] for r in results})
    ms = sorted({r["m"] for r in results})
    grid = [[0] * len(ns) for _ in ms]
    for r in results:
        grid[ms.index(r["m"])][ns.index(r["n"])] = r["bound"]
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(3.6, 3.2))
        ax.imshow(grid, cmap="Blues", vmin=0, vmax=max(1, max(map(max, grid))), origin="lower")
        for a, m in enumerate(ms):
            for b, n in enumerate(ns):
                ax.text(b, a, str(grid[a][b]), ha="center", va="center")
        ax.set_xticks(range(len(ns)), [str(n) for n in ns])
        ax.set_yticks(range(len(ms)), [str(m) for m in ms])
        ax.set_xlabel("n")
        ax.set_ylabel("m")
        fig.tight_layout()
        return _save(fig, path)
