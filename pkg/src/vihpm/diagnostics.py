"""Empirical contraction diagnostics for the correction map.

The correction map is a contraction on a suitable ball when the problem is
benign, which guarantees a unique fixed point; its contraction constant is
not computable in closed form, so this module estimates it from the decay
of successive correction magnitudes on an evaluation grid and checks the
implied geometric-series bound between every pair of iterates.  All output
is diagnostic: the estimate is a surrogate for the true Lipschitz constant,
not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .engine import iterate, residual
from .problems import ProblemSpec
from .series import Series, evaluate

__all__ = [
    "ConvergenceReport",
    "analyze_convergence",
    "ode_residual_report",
    "default_grid",
]

BOUND_SLACK = 1e-6


@dataclass(frozen=True)
class ConvergenceReport:
    """Contraction evidence extracted from successive iterates.

    ``deltas[k]`` is the grid sup-norm of iterate k+1 minus iterate k;
    ``gamma_estimates`` holds the ratios of consecutive nonzero deltas.
    ``banach_bound_ok`` reports whether every iterate pair obeys the
    geometric bound built from ``gamma_max``; ``fixed_point_reached`` is
    set when some correction is identically zero on the grid.
    """

    deltas: tuple[float, ...]
    gamma_estimates: tuple[float, ...]
    gamma_max: float
    contraction_ok: bool
    banach_bound_ok: bool
    fixed_point_reached: bool


def default_grid(spec: ProblemSpec, points: int = 11) -> tuple[float, ...]:
    """Evenly spaced evaluation grid over the problem domain."""
    b = spec.domain_end
    return tuple(b * i / (points - 1) for i in range(points))


def _grid_sup(f: Series, g: Series, grid: Sequence[float]) -> float:
    return max(abs(evaluate(f, x) - evaluate(g, x)) for x in grid)


def analyze_convergence(
    spec: ProblemSpec,
    constants: Sequence[float],
    depth: int = 3,
    grid: Sequence[float] | None = None,
) -> ConvergenceReport:
    """Run ``depth`` corrections and assess empirical contraction.

    The bound checked for every pair l < k is

        sup|v_k - v_l|  <=  (1 + slack) * delta_0 * sum_{j=l-1}^{k-2} gamma_max^j

    which is the triangle-inequality consequence of a true contraction
    constant gamma_max; the slack absorbs grid evaluation roundoff.
    """
    if depth < 2:
        raise ValueError("need at least two corrections to estimate a ratio")
    if grid is None:
        grid = default_grid(spec)
    state = iterate(spec, constants, depth)
    v = state.iterates
    deltas = tuple(_grid_sup(v[k + 1], v[k], grid) for k in range(depth))

    estimates = tuple(
        deltas[k + 1] / deltas[k]
        for k in range(depth - 1)
        if deltas[k] > 0.0
    )
    gamma_max = max(estimates, default=0.0)
    fixed_point = any(d == 0.0 for d in deltas)

    bound_ok = True
    for k in range(1, depth + 1):
        for l in range(1, k):
            # 0**0 == 1 covers gamma_max == 0 at j == 0
            geometric = sum(gamma_max**j for j in range(l - 1, k - 1))
            bound = geometric * deltas[0] * (1.0 + BOUND_SLACK)
            if _grid_sup(v[k], v[l], grid) > bound:
                bound_ok = False
    return ConvergenceReport(
        deltas=deltas,
        gamma_estimates=estimates,
        gamma_max=gamma_max,
        contraction_ok=gamma_max < 1.0,
        banach_bound_ok=bound_ok,
        fixed_point_reached=fixed_point,
    )


def ode_residual_report(
    spec: ProblemSpec, solution: Series, grid: Sequence[float]
) -> tuple[float, ...]:
    """Pointwise |equation defect| of a candidate solution; informational."""
    defect = residual(solution, spec)
    return tuple(abs(evaluate(defect, x)) for x in grid)
