"""Diagnostic objective evaluation.

Kept apart from the solver modules on purpose: evaluating the graph
objective needs a log-determinant, which we obtain from a Cholesky
factorization.  The solve path never imports this module unless the caller
explicitly turns diagnostics on.
"""

from __future__ import annotations

import numpy as np

from .graphlearn import GraphProblem

__all__ = ["NotPositiveDefiniteError", "objective_value"]


class NotPositiveDefiniteError(ValueError):
    """The matrix handed to the diagnostic objective is not PD."""


def objective_value(theta: np.ndarray, prob: GraphProblem) -> float:
    """F(Theta) = -log det(Theta) + tr(S Theta) + rho * ||vec(Theta)||_1."""
    theta = np.asarray(theta, dtype=float)
    try:
        chol = np.linalg.cholesky(theta)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError("theta is not positive definite") from exc
    logdet = 2.0 * float(np.sum(np.log(np.diag(chol))))
    return (
        -logdet
        + float(np.sum(prob.sigma_hat * theta))
        + prob.rho * float(np.sum(np.abs(theta)))
    )
