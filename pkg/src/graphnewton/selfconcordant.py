"""Two-phase proximal Newton engine for self-concordant composite minimization.

Minimizes F(x) = f(x) + g(x) where f is convex and self-concordant and g is
a proper, lower semicontinuous convex regularizer.  The engine is generic
over a smooth-function oracle, a regularizer, and a subproblem solver that
returns a proximal Newton direction together with its decrement (the local
norm of the direction).

Phase 1 takes damped steps with the analytic step size 1/(1 + lambda),
which guarantees a fixed objective decrease of omega(lambda) per iteration
without any line search.  Once the decrement drops below the phase-switch
threshold sigma, Phase 2 takes full steps and converges quadratically.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any, Optional, Protocol

__all__ = [
    "SIGMA_BAR",
    "SIGMA_BAR_DAMPED",
    "SmoothOracle",
    "ProxRegularizer",
    "SubproblemSolver",
    "PhaseConfig",
    "IterationTrace",
    "DomainError",
    "omega",
    "omega_star",
    "damped_step_size",
    "fpn_contraction_bound",
    "damped_contraction_bound",
    "phase1_iteration_cap",
    "run_two_phase",
    "TwoPhaseResult",
]

# Largest phase-switch threshold with guaranteed quadratic contraction of
# full steps: (5 - sqrt(17)) / 4.
SIGMA_BAR = (5.0 - math.sqrt(17.0)) / 4.0

# Corresponding threshold for damped steps: sqrt(5) - 2.
SIGMA_BAR_DAMPED = math.sqrt(5.0) - 2.0

# Both contraction bounds need lambda < 1 - 1/sqrt(2).
_CONTRACTION_DOMAIN = 1.0 - 1.0 / math.sqrt(2.0)


class SmoothOracle(Protocol):
    """Smooth, convex, self-concordant part of the objective."""

    def value(self, x) -> float: ...

    def gradient(self, x): ...

    def in_domain(self, x) -> bool: ...


class ProxRegularizer(Protocol):
    """Proper, lower semicontinuous, convex regularizer."""

    def value(self, x) -> float: ...


class SubproblemSolver(Protocol):
    """Solves the proximal Newton subproblem at the current iterate.

    ``solve`` returns ``(direction, decrement, inner_iterations)`` where the
    decrement is the local (Hessian-weighted) norm of the direction.
    """

    def solve(self, x) -> tuple[Any, float, int]: ...


class DomainError(RuntimeError):
    """An iterate left the domain of the smooth term (a bug signal)."""


def omega(t: float) -> float:
    """omega(t) = t - ln(1 + t) for t >= 0."""
    if t < 0.0:
        raise ValueError(f"omega requires t >= 0, got {t}")
    return t - math.log1p(t)


def omega_star(t: float) -> float:
    """omega*(t) = -t - ln(1 - t) for t in [0, 1)."""
    if not 0.0 <= t < 1.0:
        raise ValueError(f"omega_star requires 0 <= t < 1, got {t}")
    return -t - math.log1p(-t)


def damped_step_size(lam: float) -> float:
    """Analytic damped step size 1 / (1 + lambda)."""
    if lam < 0.0:
        raise ValueError(f"decrement must be nonnegative, got {lam}")
    return 1.0 / (1.0 + lam)


def fpn_contraction_bound(lam: float) -> float:
    """Full-step contraction: lambda^2 / (1 - 4*lambda + 2*lambda^2)."""
    if not 0.0 <= lam < _CONTRACTION_DOMAIN:
        raise ValueError(f"bound requires 0 <= lambda < {_CONTRACTION_DOMAIN:.6f}")
    return lam * lam / (1.0 - 4.0 * lam + 2.0 * lam * lam)


def damped_contraction_bound(lam: float) -> float:
    """Damped-step contraction: 2*lambda^2 / (1 - 2*lambda - lambda^2)."""
    if not 0.0 <= lam < _CONTRACTION_DOMAIN:
        raise ValueError(f"bound requires 0 <= lambda < {_CONTRACTION_DOMAIN:.6f}")
    return 2.0 * lam * lam / (1.0 - 2.0 * lam - lam * lam)


def phase1_iteration_cap(f0: float, f_star: float, sigma: float) -> int:
    """Upper bound on damped iterations: floor((F0 - F*) / omega(sigma)) + 1.

    Diagnostic only; the engine never uses it as a stopping criterion.
    """
    if f0 < f_star:
        raise ValueError("f0 must be >= f_star")
    if not 0.0 < sigma <= SIGMA_BAR:
        raise ValueError(f"sigma must be in (0, {SIGMA_BAR}]")
    return int(math.floor((f0 - f_star) / omega(sigma))) + 1


@dataclass(frozen=True)
class PhaseConfig:
    sigma: float = SIGMA_BAR
    eps: float = 1e-6
    j_max: int = 200
    k_max: int = 100

    def __post_init__(self) -> None:
        if not 0.0 < self.sigma <= SIGMA_BAR:
            raise ValueError(f"sigma must be in (0, {SIGMA_BAR}], got {self.sigma}")
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")
        if self.j_max < 1 or self.k_max < 1:
            raise ValueError("iteration caps must be positive")


@dataclass
class IterationTrace:
    phase: str  # "damped" or "full"
    lam: float
    alpha: float
    inner_iters: int
    elapsed: float
    objective: Optional[float] = None


@dataclass
class TwoPhaseResult:
    x: Any
    trace: list[IterationTrace] = field(default_factory=list)
    reason: str = "converged"  # converged | phase1_cap | phase2_cap


def run_two_phase(
    f: SmoothOracle,
    g: ProxRegularizer,
    sub: SubproblemSolver,
    x0,
    cfg: PhaseConfig,
    collect_objective: bool = False,
) -> TwoPhaseResult:
    """Run the damped phase followed by the full-step phase.

    Phase 1 iterates x <- x + d/(1 + lambda) until lambda <= sigma (or the
    cap j_max).  Phase 2 iterates x <- x + d until lambda <= eps (or k_max).
    If an inexact inner solve ever pushes lambda back above sigma during
    Phase 2, the engine falls back to damped steps for that iterate.
    """
    if not f.in_domain(x0):
        raise DomainError("x0 is outside the domain of the smooth term")

    x = x0
    trace: list[IterationTrace] = []
    phase = "damped"
    j = k = 0
    pending: Optional[tuple[Any, float, int]] = None

    while True:
        start = time.perf_counter()
        if pending is not None:
            d, lam, inner = pending
            pending = None
        else:
            d, lam, inner = sub.solve(x)
        if lam < 0.0:
            raise ValueError(f"subproblem solver returned negative decrement {lam}")

        if phase == "damped":
            if lam <= cfg.sigma:
                phase = "full"
                pending = (d, lam, inner)
                continue
            if j >= cfg.j_max:
                return TwoPhaseResult(x, trace, "phase1_cap")
            alpha = damped_step_size(lam)
            x = x + alpha * d
            j += 1
        else:
            if lam <= cfg.eps:
                return TwoPhaseResult(x, trace, "converged")
            if lam > cfg.sigma:
                # possible only under inexact inner solves
                phase = "damped"
                pending = (d, lam, inner)
                continue
            if k >= cfg.k_max:
                return TwoPhaseResult(x, trace, "phase2_cap")
            alpha = 1.0
            x = x + d
            k += 1

        if not f.in_domain(x):
            raise DomainError(
                f"iterate left the domain at {phase} step {j + k} (lambda={lam})"
            )
        obj = f.value(x) + g.value(x) if collect_objective else None
        trace.append(
            IterationTrace(
                phase=phase,
                lam=lam,
                alpha=alpha,
                inner_iters=inner,
                elapsed=time.perf_counter() - start,
                objective=obj,
            )
        )
