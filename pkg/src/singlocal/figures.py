"""Figure rendering for spectra, Newton polygons, and family scans.

All numbers in the library are exact rationals; conversion to float happens
only here, at the drawing boundary.  Figures are written as PNG files next
to the delimited report output and never feed back into any computation.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .invariants import Spectrum
from .newton import NewtonPoly
from .sections import MuScan


def spectrum_figure(spec: Spectrum, path: str | Path, title: str = "spectrum") -> Path:
    """Stem plot of spectral values against multiplicities."""
    path = Path(path)
    values = [float(v) for v, _ in spec.entries]
    mults = [m for _, m in spec.entries]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    ax.stem(values, mults, basefmt=" ")
    center = spec.ambient / 2
    ax.axvline(center, color="gray", linestyle=":", linewidth=1, label=f"n/2 = {center}")
    ax.set_xlabel("spectral value")
    ax.set_ylabel("multiplicity")
    ax.set_ylim(bottom=0)
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def newton_figure(np_: NewtonPoly, path: str | Path, title: str = "newton polygon") -> Path:
    """Boundary of a two-dimensional Newton polyhedron with its vertices."""
    if np_.n != 2:
        raise ValueError("newton figures are drawn for two variables only")
    path = Path(path)
    verts = sorted((float(a), float(b)) for a, b in np_.vertices)
    xmax = max(x for x, _ in verts) + 1
    ymax = max(y for _, y in verts) + 1
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    # Unbounded edges run off along the axes directions.
    chain = [(verts[0][0], ymax)] + verts + [(xmax, verts[-1][1])]
    ax.plot([p[0] for p in chain], [p[1] for p in chain], "-", color="tab:blue")
    ax.plot([p[0] for p in verts], [p[1] for p in verts], "o", color="tab:blue")
    diag = min(xmax, ymax)
    ax.plot([0, diag], [0, diag], ":", color="gray", linewidth=1)
    ax.set_xlim(0, xmax)
    ax.set_ylim(0, ymax)
    ax.set_xlabel("a1")
    ax.set_ylabel("a2")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def mu_scan_figure(scan: MuScan, path: str | Path, title: str = "mu scan") -> Path:
    """Milnor number against the family parameter; markers for bad samples."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 3.2))
    good = [(float(t), mu) for t, mu in scan.rows if isinstance(mu, int)]
    bad = [float(t) for t, mu in scan.rows if not isinstance(mu, int)]
    if good:
        ax.plot([t for t, _ in good], [m for _, m in good], "o", color="tab:green")
    for t in bad:
        ax.axvline(t, color="tab:red", linestyle="--", linewidth=1)
    ax.set_xlabel("parameter")
    ax.set_ylabel("Milnor number")
    ax.set_title(title + (" (constant)" if scan.constant else ""))
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def summary_figure(summary: dict, path: str | Path) -> Path:
    """Verdict counts for a corpus run."""
    path = Path(path)
    labels = ["pass", "fail", "inconclusive", "error"]
    counts = [summary.get(k, 0) for k in labels]
    colors = ["tab:green", "tab:red", "tab:orange", "tab:gray"]
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(labels, counts, color=colors)
    for i, c in enumerate(counts):
        ax.text(i, c, str(c), ha="center", va="bottom")
    ax.set_ylabel("checks")
    ax.set_title("verdicts")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
