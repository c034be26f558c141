"""Dense symmetric linear-algebra primitives.

Everything here operates on plain ``numpy.ndarray`` values.  Matrices that
are documented as symmetric are explicitly re-symmetrized via (M + M.T)/2
before being returned, so that roundoff asymmetry cannot accumulate over
hundreds of solver iterations.

None of these routines performs a matrix factorization or inversion; the
solver's inversion-free guarantee rests on that (see tests for the
structural check).
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

__all__ = [
    "DimensionMismatchError",
    "symmetrize",
    "as_symmetric",
    "sym_multiply",
    "sandwich",
    "trace",
    "trace_of_square",
    "clip_unit",
    "EigenEstimate",
    "largest_eigenvalue",
    "smallest_eigenvalue_probe",
]


class DimensionMismatchError(ValueError):
    """Raised when matrix operands have incompatible shapes."""


def _require_square(a: np.ndarray, name: str = "matrix") -> None:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {a.shape}")


def symmetrize(a: np.ndarray) -> np.ndarray:
    """Return (A + A.T) / 2."""
    a = np.asarray(a, dtype=float)
    _require_square(a)
    return (a + a.T) / 2.0


def as_symmetric(a: np.ndarray, atol: float = 0.0) -> np.ndarray:
    """Validate and return a symmetric matrix with finite entries.

    The input is symmetrized via (A + A.T)/2.  If ``atol`` is positive, the
    input must already be symmetric to within that absolute tolerance.
    """
    a = np.asarray(a, dtype=float)
    _require_square(a)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    if atol > 0.0 and np.max(np.abs(a - a.T)) > atol:
        raise ValueError(f"matrix is not symmetric to within {atol}")
    return symmetrize(a)


def sym_multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product A @ B (generally nonsymmetric even for symmetric inputs)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _require_square(a, "a")
    _require_square(b, "b")
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a @ b


def sandwich(theta: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Compute T @ U @ T for symmetric T, U and re-symmetrize the result.

    This is the single operation the solver's data-parallel contract
    targets; the stored value is exactly symmetric.
    """
    theta = np.asarray(theta, dtype=float)
    u = np.asarray(u, dtype=float)
    if theta.shape != u.shape:
        raise DimensionMismatchError(f"shape mismatch: {theta.shape} vs {u.shape}")
    _require_square(theta, "theta")
    return symmetrize(theta @ u @ theta)


def trace(a: np.ndarray) -> float:
    """Sum of diagonal entries."""
    a = np.asarray(a, dtype=float)
    _require_square(a)
    return float(np.trace(a))


def trace_of_square(w: np.ndarray) -> float:
    """tr(W @ W) in O(p^2) without forming the square.

    Uses tr(W^2) = sum_ij W_ij * W_ji.
    """
    w = np.asarray(w, dtype=float)
    _require_square(w)
    return float(np.sum(w * w.T))


def clip_unit(x: np.ndarray) -> np.ndarray:
    """Elementwise projection onto the unit infinity-norm ball [-1, 1]."""
    return np.clip(np.asarray(x, dtype=float), -1.0, 1.0)


class EigenEstimate(NamedTuple):
    value: float
    converged: bool
    iterations: int
    degenerate: bool = False


def _power_iterate(
    matvec: Callable[[np.ndarray], np.ndarray],
    v: np.ndarray,
    tol: float,
    max_iters: int,
) -> EigenEstimate:
    gamma = 0.0
    for k in range(1, max_iters + 1):
        av = matvec(v)
        gamma = float(v @ av)
        resid = float(np.linalg.norm(av - gamma * v))
        if abs(gamma) > 0.0 and resid / abs(gamma) <= tol:
            return EigenEstimate(gamma, True, k)
        nrm = float(np.linalg.norm(av))
        if nrm == 0.0:
            # v is in the kernel; caller decides what to do
            return EigenEstimate(0.0, False, k)
        v = av / nrm
    return EigenEstimate(gamma, False, max_iters)


def largest_eigenvalue(
    a: np.ndarray, tol: float = 1e-6, max_iters: int = 100
) -> EigenEstimate:
    """Dominant eigenvalue of a symmetric matrix by power iteration.

    Starts from the normalized all-ones vector for reproducibility, with one
    fixed pseudo-random restart if the first pass stagnates above ``tol``.
    Returns the Rayleigh-quotient estimate together with a convergence flag;
    the zero matrix yields value 0 with ``degenerate=True``.
    """
    a = np.asarray(a, dtype=float)
    _require_square(a)
    p = a.shape[0]
    if not np.any(a):
        return EigenEstimate(0.0, True, 0, degenerate=True)

    v0 = np.ones(p) / np.sqrt(p)
    est = _power_iterate(lambda v: a @ v, v0, tol, max_iters)
    if est.converged and est.value != 0.0:
        return est
    # deterministic restart from a fixed pseudo-random direction
    rng = np.random.default_rng(0)
    v0 = rng.standard_normal(p)
    v0 /= np.linalg.norm(v0)
    retry = _power_iterate(lambda v: a @ v, v0, tol, max_iters)
    if retry.converged or abs(retry.value) > abs(est.value):
        return EigenEstimate(retry.value, retry.converged, est.iterations + retry.iterations)
    return EigenEstimate(est.value, False, est.iterations + retry.iterations)


def smallest_eigenvalue_probe(
    a: np.ndarray, tol: float = 1e-8, max_iters: int = 2000
) -> float:
    """Estimate the smallest eigenvalue via power iteration on a shifted matrix.

    With s an upper estimate of the largest eigenvalue, the dominant
    eigenvalue of s*I - A is s - lambda_min(A).  Used by tests as a PD probe
    and optionally for the strongly-convex momentum variant; never by the
    solver hot path.
    """
    a = np.asarray(a, dtype=float)
    _require_square(a)
    top = largest_eigenvalue(a, tol=tol, max_iters=max_iters)
    if top.degenerate:
        return 0.0
    # small margin keeps the shifted spectrum nonnegative when the power
    # method slightly underestimates the top eigenvalue
    shift = abs(top.value) * (1.0 + 1e-6) + 1e-12
    shifted = shift * np.eye(a.shape[0]) - a
    low = largest_eigenvalue(shifted, tol=tol, max_iters=max_iters)
    return shift - low.value
