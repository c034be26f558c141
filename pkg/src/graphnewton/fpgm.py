"""Accelerated projected gradient for the box-constrained dual subproblem.

Minimizes a smooth convex function over the unit infinity-norm ball
{U : |U_ij| <= 1} using projected gradient steps of size 1/L with FISTA
momentum (or the constant strongly-convex momentum when the smallest
curvature is known).  The caller supplies the gradient as an operator, so
this module is generic over how the dual quadratic form is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .linalg import clip_unit

__all__ = [
    "FpgmConfig",
    "FpgmResult",
    "NonFiniteGradientError",
    "momentum_fista",
    "momentum_strongly_convex",
    "fpgm_solve",
]


class NonFiniteGradientError(RuntimeError):
    """The gradient operator returned NaN/Inf entries."""

    def __init__(self, iteration: int, iterate: np.ndarray):
        super().__init__(f"non-finite gradient at inner iteration {iteration}")
        self.iteration = iteration
        self.iterate = iterate


@dataclass(frozen=True)
class FpgmConfig:
    inner_eps: float = 1e-6
    k_max: int = 1000
    momentum: str = "fista"  # "fista" or "strongly_convex"
    lipschitz: Optional[float] = None  # computed by the caller if absent
    mu: Optional[float] = None  # smallest curvature, for strongly_convex

    def __post_init__(self) -> None:
        if self.inner_eps <= 0.0:
            raise ValueError("inner_eps must be positive")
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if self.momentum not in ("fista", "strongly_convex"):
            raise ValueError(f"unknown momentum variant {self.momentum!r}")


@dataclass
class FpgmResult:
    u_star: np.ndarray
    iterations: int
    converged: bool
    final_step_change: float
    lipschitz: float = 0.0


def momentum_fista(t_k: float) -> tuple[float, float]:
    """FISTA momentum update: t' = (1 + sqrt(1 + 4 t^2))/2, beta = (t-1)/t'."""
    if t_k < 1.0:
        raise ValueError(f"t must be >= 1, got {t_k}")
    t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t_k * t_k))
    return t_next, (t_k - 1.0) / t_next


def momentum_strongly_convex(lipschitz: float, mu: float) -> float:
    """Constant momentum (sqrt(L) - sqrt(mu)) / (sqrt(L) + sqrt(mu))."""
    if mu <= 0.0 or mu > lipschitz:
        raise ValueError(f"need 0 < mu <= L, got mu={mu}, L={lipschitz}")
    sl, sm = math.sqrt(lipschitz), math.sqrt(mu)
    return (sl - sm) / (sl + sm)


def fpgm_solve(
    grad_map: Callable[[np.ndarray], np.ndarray],
    lipschitz: float,
    u0: np.ndarray,
    cfg: FpgmConfig,
    objective: Optional[Callable[[np.ndarray], float]] = None,
) -> FpgmResult:
    """Run the accelerated projected-gradient iteration from a feasible u0.

    Iterates V <- clip(U - grad(U)/L) with extrapolation
    U <- V + beta (V - V_prev), stopping when the V-step change satisfies
    ||V_new - V||_F <= inner_eps * max(||V||_F, 1) or after k_max steps.
    Returns the last projected point V (which is always feasible), never the
    extrapolated U.

    When ``objective`` is provided, the first step doubles L once if the
    objective at V_1 exceeds its value at u0 (guards against an
    underestimated power-method Lipschitz constant).
    """
    if lipschitz <= 0.0:
        raise ValueError("lipschitz must be positive")

    L = lipschitz
    if objective is not None:
        g0 = grad_map(u0)
        v1 = clip_unit(u0 - g0 / L)
        if objective(v1) > objective(u0) + 1e-12:
            L *= 2.0

    beta_const = None
    if cfg.momentum == "strongly_convex":
        if cfg.mu is None:
            raise ValueError("strongly_convex momentum requires mu")
        beta_const = momentum_strongly_convex(L, cfg.mu)

    u = np.asarray(u0, dtype=float)
    v = u
    t = 1.0
    step_change = math.inf
    for k in range(cfg.k_max):
        grad = grad_map(u)
        if not np.all(np.isfinite(grad)):
            raise NonFiniteGradientError(k, u)
        v_new = clip_unit(u - grad / L)
        step_change = float(np.linalg.norm(v_new - v))
        if step_change <= cfg.inner_eps * max(float(np.linalg.norm(v)), 1.0):
            return FpgmResult(v_new, k, True, step_change, L)
        if beta_const is not None:
            beta = beta_const
        else:
            t, beta = momentum_fista(t)
        u = v_new + beta * (v_new - v)
        v = v_new
    return FpgmResult(v, cfg.k_max, False, step_change, L)
