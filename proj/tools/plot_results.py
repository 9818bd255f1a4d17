#!/usr/bin/env python3
"""Render the CSV tables emitted by ifdcav into quick-look figures.

Usage: plot_results.py <run-dir> [<run-dir> ...]

Each run directory is inspected for the known file names; whatever is found
gets a panel. Output goes to <run-dir>/plots/.
"""
import json
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def read_csv(path):
    data = np.genfromtxt(path, delimiter=",", names=True)
    return np.atleast_1d(data)


def plot_sweep_xi(run, outdir):
    path = run / "sweep_xi.csv"
    if not path.exists():
        return
    manifest = json.loads((run / "manifest.json").read_text())
    n0_values = manifest["config"]["sweep"]["n0_values"]
    rows = read_csv(path)
    block = len(rows) // len(n0_values)

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
    for i, n0 in enumerate(n0_values):
        r = rows[i * block:(i + 1) * block]
        style = "-" if i == 0 else "--"
        ax1.plot(r["xi"], r["eta_tot"], "k" + style, label=f"eta_tot, N0={n0:g}")
        ax1.plot(r["xi"], r["snr1"], "b" + style, label=f"SNR refl, N0={n0:g}")
        ax1.plot(r["xi"], r["snr2"], "r" + style, label=f"SNR trans, N0={n0:g}")
        ax2.plot(r["xi"], r["zeta1"], "b" + style, label=f"zeta refl, N0={n0:g}")
        ax2.plot(r["xi"], r["zeta2"], "r" + style, label=f"zeta trans, N0={n0:g}")
    for ax in (ax1, ax2):
        ax.set_xlabel("xi")
        ax.legend(fontsize=7)
    ax1.set_ylabel("eta_tot / SNR")
    ax2.set_ylabel("zeta")
    fig.tight_layout()
    fig.savefig(outdir / "sweep_xi.png", dpi=150)
    plt.close(fig)


def plot_param_maps(run, outdir):
    for port in ("reflection", "transmission"):
        for kind in ("argmax_xi", "max_zeta"):
            path = run / f"param_map_{port}_{kind}.csv"
            if not path.exists():
                continue
            rows = read_csv(path)
            k3 = np.unique(rows["kappa3"])
            dp = np.unique(rows["deltaP"])
            grid = rows["value"].reshape(len(k3), len(dp))

            fig, ax = plt.subplots(figsize=(5, 4))
            mesh = ax.pcolormesh(dp, k3, grid, shading="nearest")
            ax.set_xscale("log")
            ax.set_yscale("log")
            ax.set_xlabel("Delta_P / 2pi [Hz]")
            ax.set_ylabel("kappa_3 / 2pi [Hz]")
            ax.set_title(f"{port} {kind}")
            fig.colorbar(mesh, ax=ax)
            fig.tight_layout()
            fig.savefig(outdir / f"param_map_{port}_{kind}.png", dpi=150)
            plt.close(fig)


def plot_security_curves(run, outdir):
    made = False
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for port, color in (("reflection", "b"), ("transmission", "r")):
        path = run / f"security_curve_{port}.csv"
        if not path.exists():
            continue
        made = True
        rows = read_csv(path)
        ax1.plot(rows["snr"], rows["eta_tot"], color, label=port)
        ax2.plot(rows["n0"], rows["eta_tot"], color, label=port)
    if not made:
        plt.close(fig)
        return
    ax1.set_xlabel("SNR")
    ax2.set_xlabel("N0")
    for ax in (ax1, ax2):
        ax.set_ylabel("eta_tot")
        ax.legend()
    fig.tight_layout()
    fig.savefig(outdir / "security_curve.png", dpi=150)
    plt.close(fig)


def main():
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    for arg in sys.argv[1:]:
        run = pathlib.Path(arg)
        outdir = run / "plots"
        outdir.mkdir(exist_ok=True)
        plot_sweep_xi(run, outdir)
        plot_param_maps(run, outdir)
        plot_security_curves(run, outdir)
        print(f"{run}: plots written to {outdir}")


if __name__ == "__main__":
    main()
