"""Inversion-free proximal Newton solver for sparse precision estimation.

Solves  min_{Theta > 0}  -log det(Theta) + tr(S Theta) + rho ||vec(Theta)||_1
without Cholesky factorizations or matrix inversions.  Each outer iteration
solves the dual of the proximal Newton subproblem over the unit box by
accelerated projected gradient, recovers the primal direction with matrix
products only, and takes the analytic damped step alpha = 1/(1 + lambda),
which keeps every iterate positive definite.

The objective itself is never evaluated on this path; diagnostics that need
log-det live in :mod:`graphnewton.diagnostics`.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fpgm import FpgmConfig, FpgmResult, fpgm_solve
from .linalg import (
    as_symmetric,
    clip_unit,
    largest_eigenvalue,
    sandwich,
    smallest_eigenvalue_probe,
    symmetrize,
    trace,
    trace_of_square,
)
from .selfconcordant import SIGMA_BAR, IterationTrace, damped_step_size

__all__ = [
    "GraphProblem",
    "GraphSolveResult",
    "ClampedDecrementWarning",
    "default_theta0",
    "q_tilde",
    "dual_gradient",
    "dual_objective",
    "solve_dual_subproblem",
    "primal_direction",
    "decrement",
    "solve",
    "sparsify",
]


class ClampedDecrementWarning(RuntimeWarning):
    """The decrement radicand went slightly negative (roundoff near a solution)."""


@dataclass(frozen=True)
class GraphProblem:
    """Empirical covariance and l1 weight defining one estimation problem."""

    sigma_hat: np.ndarray
    rho: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma_hat", as_symmetric(self.sigma_hat, atol=1e-8))
        if self.rho <= 0.0:
            raise ValueError(f"rho must be positive, got {self.rho}")

    @property
    def dim(self) -> int:
        return self.sigma_hat.shape[0]


@dataclass
class GraphSolveResult:
    theta: np.ndarray
    trace: list[IterationTrace]
    reason: str  # converged | iteration_cap
    iterates: Optional[list[np.ndarray]] = None
    u_warm: Optional[np.ndarray] = None


def default_theta0(prob: GraphProblem) -> np.ndarray:
    """Diagonal starting point diag(1 / (S_ii + rho)); strictly PD."""
    return np.diag(1.0 / (np.diag(prob.sigma_hat) + prob.rho))


def q_tilde(theta: np.ndarray, prob: GraphProblem) -> np.ndarray:
    """Linear term of the dual subproblem: (Theta S Theta - 2 Theta) / rho."""
    return symmetrize((sandwich(theta, prob.sigma_hat) - 2.0 * theta) / prob.rho)


def dual_gradient(u: np.ndarray, theta: np.ndarray, prob: GraphProblem) -> np.ndarray:
    """Gradient of the dual objective: Theta U Theta + q_tilde(Theta).

    Algebraically equal to Theta (U + S/rho) Theta - (2/rho) Theta.
    """
    return sandwich(theta, u) + q_tilde(theta, prob)


def dual_objective(u: np.ndarray, theta: np.ndarray, prob: GraphProblem) -> float:
    """Dual subproblem objective 0.5 tr((Theta U)^2) + tr(Q U)."""
    tu = theta @ u
    return 0.5 * trace_of_square(tu) + float(np.sum(q_tilde(theta, prob) * u))


def solve_dual_subproblem(
    theta: np.ndarray,
    prob: GraphProblem,
    cfg: FpgmConfig,
    warm: Optional[np.ndarray] = None,
) -> FpgmResult:
    """Solve the box-constrained dual by FPGM with L = gamma_max(Theta)^2."""
    if cfg.lipschitz is not None:
        lipschitz = cfg.lipschitz
    else:
        gamma = largest_eigenvalue(theta, tol=1e-8, max_iters=500)
        lipschitz = gamma.value ** 2
    mu = cfg.mu
    if cfg.momentum == "strongly_convex" and mu is None:
        mu = smallest_eigenvalue_probe(theta) ** 2
        cfg = FpgmConfig(
            inner_eps=cfg.inner_eps,
            k_max=cfg.k_max,
            momentum=cfg.momentum,
            lipschitz=cfg.lipschitz,
            mu=mu,
        )
    u0 = clip_unit(warm) if warm is not None else np.zeros_like(theta)
    qt = q_tilde(theta, prob)

    def grad(u: np.ndarray) -> np.ndarray:
        return sandwich(theta, u) + qt

    def objective(u: np.ndarray) -> float:
        return 0.5 * trace_of_square(theta @ u) + float(np.sum(qt * u))

    return fpgm_solve(grad, lipschitz, u0, cfg, objective=objective)


def primal_direction(
    theta: np.ndarray, u_star: np.ndarray, prob: GraphProblem
) -> np.ndarray:
    """Recover the Newton direction from the dual solution, products only.

    Delta = -((Theta S - I) Theta + rho Theta U* Theta), symmetrized.
    """
    p = theta.shape[0]
    raw = -((theta @ prob.sigma_hat - np.eye(p)) @ theta + prob.rho * theta @ u_star @ theta)
    return symmetrize(raw)


def decrement(theta: np.ndarray, u_star: np.ndarray, prob: GraphProblem) -> float:
    """Proximal Newton decrement sqrt(p - 2 tr(W) + tr(W^2)), W = Theta (S + rho U*).

    tr(W^2) goes through the O(p^2) diagonal-only path.  A slightly negative
    radicand (pure roundoff near convergence) is clamped to zero with a
    warning.
    """
    p = theta.shape[0]
    w = theta @ (prob.sigma_hat + prob.rho * u_star)
    radicand = p - 2.0 * trace(w) + trace_of_square(w)
    if radicand < 0.0:
        if radicand < -1e-9:
            warnings.warn(
                f"decrement radicand clamped from {radicand:.3e}", ClampedDecrementWarning
            )
        radicand = 0.0
    return float(np.sqrt(radicand))


def solve(
    prob: GraphProblem,
    theta0: Optional[np.ndarray] = None,
    eps: float = 1e-6,
    max_iters: int = 200,
    inner: Optional[FpgmConfig] = None,
    diagnostics: bool = False,
    allow_full_steps: bool = False,
    keep_iterates: bool = False,
) -> GraphSolveResult:
    """Run the damped proximal Newton outer loop on the graph problem.

    Per iteration: solve the dual subproblem (warm-started from the previous
    dual solution), compute the decrement lambda from the trace formula,
    stop if lambda <= eps, otherwise step Theta <- Theta + alpha Delta with
    alpha = 1/(1 + lambda).  With ``allow_full_steps`` the step becomes
    alpha = 1 once lambda is inside the quadratic region.

    ``diagnostics`` records the objective per iteration (this evaluates a
    log-det through :mod:`graphnewton.diagnostics` and is kept off the
    default path).
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    if inner is None:
        inner = FpgmConfig()
    theta = as_symmetric(theta0) if theta0 is not None else default_theta0(prob)
    if theta.shape != prob.sigma_hat.shape:
        raise ValueError("theta0 dimension does not match the problem")

    objective_value = None
    if diagnostics:
        from .diagnostics import objective_value  # deliberate lazy import

    u_warm: Optional[np.ndarray] = None
    tr_rows: list[IterationTrace] = []
    iterates: Optional[list[np.ndarray]] = [theta.copy()] if keep_iterates else None
    reason = "iteration_cap"

    for _ in range(max_iters):
        start = time.perf_counter()
        sub = solve_dual_subproblem(theta, prob, inner, warm=u_warm)
        u_warm = sub.u_star
        lam = decrement(theta, sub.u_star, prob)
        alpha = damped_step_size(lam)
        obj = objective_value(theta, prob) if diagnostics else None
        tr_rows.append(
            IterationTrace(
                phase="damped",
                lam=lam,
                alpha=alpha,
                inner_iters=sub.iterations,
                elapsed=time.perf_counter() - start,
                objective=obj,
            )
        )
        if lam <= eps:
            reason = "converged"
            break
        delta = primal_direction(theta, sub.u_star, prob)
        if allow_full_steps and lam <= SIGMA_BAR:
            alpha = 1.0
            tr_rows[-1].phase = "full"
            tr_rows[-1].alpha = 1.0
        theta = symmetrize(theta + alpha * delta)
        if iterates is not None:
            iterates.append(theta.copy())

    return GraphSolveResult(theta, tr_rows, reason, iterates=iterates, u_warm=u_warm)


def sparsify(theta: np.ndarray, threshold: float) -> np.ndarray:
    """Hard-threshold small off-diagonal entries; the diagonal is never zeroed."""
    if threshold < 0.0:
        raise ValueError("threshold must be nonnegative")
    out = np.array(theta, dtype=float, copy=True)
    mask = np.abs(out) < threshold
    np.fill_diagonal(mask, False)
    out[mask] = 0.0
    return out
