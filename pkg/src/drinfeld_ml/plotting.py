"""PNG figures for report subcommands (``--plot-dir``)."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, plot_dir, name):
    os.makedirs(plot_dir, exist_ok=True)
    path = os.path.join(plot_dir, name)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def plot_image_chain(dims, plot_dir, name="image_chain.png", title="image chain"):
    """dims[0] is the ambient dimension; dims[n] = dim Im(f^n)."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.step(range(len(dims)), dims, where="mid", marker="o")
    ax.set_xlabel("n")
    ax.set_ylabel("F_p-dimension of image")
    ax.set_title(title)
    ax.set_ylim(bottom=0)
    return _save(fig, plot_dir, name)


def plot_growth(bounds, gamma_sizes, inter_sizes, plot_dir, name="intersection_growth.png"):
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.semilogy(bounds, gamma_sizes, marker="s", label="enumerated points")
    ax.semilogy(bounds, [max(s, 1) for s in inter_sizes], marker="o", label="points on X")
    ax.set_xlabel("degree bound B")
    ax.set_ylabel("count")
    ax.legend()
    ax.set_title("X ∩ Γ by degree bound")
    return _save(fig, plot_dir, name)


def plot_reduction(scan, plot_dir, name="reduction_scan.png"):
    colors = {"injective": "tab:green", "non-injective": "tab:red", "skipped": "tab:gray"}
    fig, ax = plt.subplots(figsize=(7, 3.2))
    xs = range(len(scan.results))
    ax.bar(xs, [r.reduced_size for r in scan.results], color=[colors[r.status] for r in scan.results])
    ax.axhline(scan.total_points, color="black", lw=0.8, ls="--")
    ax.set_xlabel("place index")
    ax.set_ylabel("distinct reductions")
    ax.set_title(f"reduction of {scan.total_points} points")
    return _save(fig, plot_dir, name)


def plot_commutators(ns, sizes, plot_dir, name="commutators.png"):
    """sizes[i]: number of nonzero coefficients of [psi, phi_{t^n}]."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(ns, sizes)
    ax.set_xlabel("n")
    ax.set_ylabel("nonzero commutator terms")
    ax.set_title("psi phi_{t^n} - phi_{t^n} psi")
    return _save(fig, plot_dir, name)


def plot_kernel_dims(tried, dims, plot_dir, name="kernel_dims.png"):
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(tried, dims, marker="o")
    ax.set_xlabel("search degree N")
    ax.set_ylabel("F_p-dimension of kernel")
    ax.set_title("torsion in F_{q^{mN}}")
    return _save(fig, plot_dir, name)
