"""Inversion-free proximal Newton solver for sparse precision matrix estimation.

A reusable two-phase proximal Newton engine for composite minimization of a
self-concordant smooth term plus a nonsmooth convex regularizer, plus its
graph-learning instantiation where every outer iteration costs only dense
matrix products: no Cholesky factorizations, no matrix inversions.
"""

from .fpgm import FpgmConfig, FpgmResult, fpgm_solve, momentum_fista, momentum_strongly_convex
from .graphlearn import (
    GraphProblem,
    GraphSolveResult,
    decrement,
    default_theta0,
    dual_gradient,
    dual_objective,
    primal_direction,
    q_tilde,
    solve,
    solve_dual_subproblem,
    sparsify,
)
from .linalg import (
    clip_unit,
    largest_eigenvalue,
    sandwich,
    smallest_eigenvalue_probe,
    sym_multiply,
    symmetrize,
    trace,
    trace_of_square,
)
from .selfconcordant import (
    SIGMA_BAR,
    SIGMA_BAR_DAMPED,
    IterationTrace,
    PhaseConfig,
    TwoPhaseResult,
    damped_contraction_bound,
    damped_step_size,
    fpn_contraction_bound,
    omega,
    omega_star,
    phase1_iteration_cap,
    run_two_phase,
)

__version__ = "0.1.0"
