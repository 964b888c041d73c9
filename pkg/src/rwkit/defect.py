"""Sparsity defect: distance (in the sparsity norm) from a signal to the
L1 ball of radius T in coefficient space.

The solver is the split-Bregman iteration operating on the analysis
coefficients w of the back-projected signal.  The iteration's fixed point
is the soft-thresholding of w at the Bregman shrinkage parameter, so that
parameter controls where the loop lands.  When w lies outside the budget
ball the minimizer sits on its boundary, so whenever the fixed point
reached with the configured parameter misses the boundary — infeasible
(L1 norm above T, parameter too small) or strictly interior (over-shrunk,
parameter too large) — the solver recalibrates the parameter by bisection
to the value whose fixed point has L1 norm T and reruns the loop; the
result then matches the exhaustive oracle.

``bregman_defect`` exposes the raw single-parameter loop, including its
"no solution found" failure branch, for callers that want the unadorned
iteration.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels, sensing
from .errors import EstimationError, IterationCapError, ParameterError, ShapeError
from .frames import analyze

__all__ = [
    "DefectParams",
    "DefectResult",
    "ExpectedDefect",
    "bregman_defect",
    "coefficient_defect",
    "sparsity_defect",
    "brute_force_defect",
    "expected_defect",
]

_FEASIBILITY_SLACK = 1e-8


@dataclass(frozen=True)
class DefectParams:
    solution_bound: float
    bregman_lambda: float = 0.5
    tolerance: float = 1e-6
    max_iterations: int = 10_000

    def __post_init__(self):
        if self.solution_bound <= 0:
            raise ParameterError(
                f"solution_bound must be positive, got {self.solution_bound}"
            )
        if self.bregman_lambda <= 0:
            raise ParameterError(
                f"bregman_lambda must be positive, got {self.bregman_lambda}"
            )
        if self.tolerance <= 0:
            raise ParameterError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ParameterError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )


@dataclass(frozen=True)
class DefectResult:
    """Solver outcome: ``defect`` is None iff ``failed`` (infeasible exit)."""

    defect: float | None
    failed: bool
    iterations: int
    final_l1: float
    lambda_used: float

    def __post_init__(self):
        if not self.failed and (self.defect is None or self.defect < 0):
            raise ParameterError("successful result must carry a nonnegative defect")


def _effective_tolerance(tol, n):
    # Loop tolerance is an L1 norm over n entries; scale for large signals.
    return tol * max(1.0, n / 256.0)


def bregman_defect(w, solution_bound, lam, tolerance, max_iterations):
    """Split-Bregman loop on a coefficient vector, single shrinkage parameter.

    Returns a DefectResult whose ``failed`` flag is set when the converged
    iterate violates the L1 budget.  Raises IterationCapError if the loop
    does not reach its tolerance within ``max_iterations``.
    """
    w = np.asarray(w, dtype=np.complex128).ravel()
    tol = _effective_tolerance(tolerance, w.size)
    d, iterations, converged = kernels.bregman_loop(
        w, float(lam), float(tol), int(max_iterations)
    )
    if not converged:
        raise IterationCapError(
            f"no convergence within {max_iterations} iterations (tol={tol:g})"
        )
    final_l1 = float(np.sum(np.abs(d)))
    if final_l1 > solution_bound + _FEASIBILITY_SLACK:
        return DefectResult(None, True, iterations, final_l1, float(lam))
    defect = float(np.sum(np.abs(w - d)))
    return DefectResult(defect, False, iterations, final_l1, float(lam))


def _smallest_feasible_lambda(w, budget):
    # ||S_lam(w)||_1 is continuous and decreasing in lam; bisect for the
    # smallest lam whose fixed point fits the budget, with a tiny feasible
    # margin so the rerun loop exits strictly inside it.
    mags = np.abs(w)
    target = budget * (1.0 - 1e-12) - 1e-12
    lo, hi = 0.0, float(mags.max())
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if float(np.sum(np.maximum(mags - mid, 0.0))) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def coefficient_defect(w, params):
    """Defect of a raw coefficient vector w: min ||w - a||_1, ||a||_1 <= T.

    Points already inside the ball have defect 0 and skip the solver.
    Otherwise the Bregman loop runs at the configured shrinkage parameter
    and, if its fixed point misses the ball boundary (infeasible or
    strictly interior), at the recalibrated one.
    """
    w = np.asarray(w, dtype=np.complex128).ravel()
    l1 = float(np.sum(np.abs(w)))
    budget = params.solution_bound
    if l1 <= budget + _FEASIBILITY_SLACK:
        return DefectResult(0.0, False, 0, l1, params.bregman_lambda)
    result = bregman_defect(
        w, budget, params.bregman_lambda, params.tolerance, params.max_iterations
    )
    boundary_slack = 1e-6 * max(1.0, budget)
    if not result.failed and result.final_l1 >= budget - boundary_slack:
        return result
    lam = _smallest_feasible_lambda(w, budget)
    return bregman_defect(w, budget, lam, params.tolerance, params.max_iterations)


def sparsity_defect(x, op, frame, params):
    """Sparsity defect of the back-projection of ``x`` through ``op``.

    Computes w = analyze(adjoint(x)) and minimizes ||w - a||_1 over the L1
    ball of radius ``params.solution_bound``.
    """
    w = analyze(frame, sensing.adjoint(op, x))
    return coefficient_defect(w, params)


def brute_force_defect(x, solution_bound, grid_step):
    """Exhaustive oracle: minimum L1 distance to the L1 ball over a grid.

    Refused for dimension > 3 (combinatorial blowup); intended as a test
    oracle only.
    """
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size > 3:
        raise ParameterError(f"brute force oracle limited to dim <= 3, got {x.size}")
    if grid_step <= 0:
        raise ParameterError(f"grid_step must be positive, got {grid_step}")
    T = float(solution_bound)
    # Tiny slack so grid points on the ball boundary survive float rounding.
    slack = 1e-9 * max(1.0, T)
    axis = np.arange(-T, T + grid_step / 2, grid_step)
    if x.size == 1:
        candidates = axis[np.abs(axis) <= T + slack]
        return float(np.min(np.abs(x[0] - candidates)))
    if x.size == 2:
        a0, a1 = np.meshgrid(axis, axis, indexing="ij")
        feasible = np.abs(a0) + np.abs(a1) <= T + slack
        dist = np.abs(x[0] - a0) + np.abs(x[1] - a1)
        return float(np.min(dist[feasible]))
    best = np.inf
    for a0 in axis:
        rem = T - abs(a0) + slack
        if rem < 0:
            continue
        a1, a2 = np.meshgrid(axis, axis, indexing="ij")
        feasible = np.abs(a1) + np.abs(a2) <= rem
        if not feasible.any():
            continue
        dist = abs(x[0] - a0) + np.abs(x[1] - a1) + np.abs(x[2] - a2)
        best = min(best, float(np.min(dist[feasible])))
    return best


@dataclass(frozen=True)
class ExpectedDefect:
    """Monte-Carlo estimate of the expected worst-case defect."""

    estimate: float
    num_operators: int
    failed_instances: int


def expected_defect(samples, frame, params, num_operators, master_seed, subsample_prob=1.0):
    """Average over seeded operators of the per-operator maximum defect.

    Each operator i is drawn from the stream SeedSequence(master_seed,
    spawn_key=(i,)).  (sample, operator) instances whose solver run fails
    are skipped and counted; it is an error for all instances of every
    operator to fail.
    """
    if num_operators < 1:
        raise ParameterError(f"num_operators must be >= 1, got {num_operators}")
    samples = [np.asarray(s) for s in samples]
    if not samples:
        raise ParameterError("at least one sample is required")
    shape = samples[0].shape
    for s in samples:
        if s.shape != shape:
            raise ShapeError("all samples must share one shape")
    per_operator_max = []
    failed = 0
    for i in range(num_operators):
        op = sensing.make_partial_fourier(
            shape, subsample_prob, sensing.derived_seed(master_seed, i)
        )
        defects = []
        for s in samples:
            result = sparsity_defect(s, op, frame, params)
            if result.failed:
                failed += 1
            else:
                defects.append(result.defect)
        if defects:
            per_operator_max.append(max(defects))
    if not per_operator_max:
        raise EstimationError("every (sample, operator) instance failed")
    return ExpectedDefect(
        estimate=float(np.mean(per_operator_max)),
        num_operators=num_operators,
        failed_instances=failed,
    )
