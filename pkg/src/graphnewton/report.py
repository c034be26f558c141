"""Render convergence figures and a delimited summary from a trace file.

Reads the JSON Lines trace written by the solver and produces PNG figures
(decrement on a log scale, step size, and the objective when present)
alongside a flat CSV of the same numbers.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["render_report"]


def _save(fig, outdir: str, name: str, written: list[str]) -> None:
    path = os.path.join(outdir, name)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(path)


def render_report(trace: list[dict], outdir: str) -> list[str]:
    """Write figures and a summary CSV for one solver run; returns the paths."""
    os.makedirs(outdir, exist_ok=True)
    written: list[str] = []
    iters = [rec["iter"] for rec in trace]
    lambdas = [rec["lambda"] for rec in trace]
    alphas = [rec["alpha"] for rec in trace]

    fig, ax = plt.subplots(figsize=(6, 4))
    if any(lam > 0 for lam in lambdas):
        ax.semilogy(iters, lambdas, "o-", ms=3)
    else:
        ax.plot(iters, lambdas, "o-", ms=3)
    ax.set_xlabel("outer iteration")
    ax.set_ylabel(r"decrement $\lambda_i$")
    ax.grid(True, which="both", alpha=0.3)
    _save(fig, outdir, "decrement.png", written)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(iters, alphas, "o-", ms=3)
    ax.set_xlabel("outer iteration")
    ax.set_ylabel(r"step size $\alpha_i$")
    ax.set_ylim(0.0, 1.05)
    ax.grid(True, alpha=0.3)
    _save(fig, outdir, "step_size.png", written)

    if any("objective" in rec for rec in trace):
        objs = [rec.get("objective") for rec in trace]
        pts = [(i, o) for i, o in zip(iters, objs) if o is not None]
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.plot([i for i, _ in pts], [o for _, o in pts], "o-", ms=3)
        ax.set_xlabel("outer iteration")
        ax.set_ylabel("objective $F$")
        ax.grid(True, alpha=0.3)
        _save(fig, outdir, "objective.png", written)

    summary = os.path.join(outdir, "trace_summary.csv")
    fields = ["iter", "lambda", "alpha", "inner_iters", "objective", "elapsed_ms"]
    with open(summary, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for rec in trace:
            writer.writerow({f: rec.get(f, "") for f in fields})
    written.append(summary)
    return written
