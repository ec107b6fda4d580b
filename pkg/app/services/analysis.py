"""
Comparison of numerical and exact solutions: error norms, the mean square
displacement and convergence-order fits
"""
import logging
import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from app.errors import DomainError, InsufficientDataError, UndefinedMomentError
from app.models.numerics import (
    ConvergenceLevel,
    ConvergenceReport,
    ErrorReport,
    Grid1D,
    InitialCondition,
    InitialConditionKind,
    ProblemKind,
    ProblemSpec,
    SchemeParams,
)
from app.services import oracles
from app.services.solver import dt_from_S, solve
from app.services.specfun import real_gamma

logger = logging.getLogger(__name__)

Oracle = Callable[[np.ndarray], np.ndarray]


def error_norms(
    field: np.ndarray,
    oracle: Oracle,
    grid: Grid1D,
    t: float,
    window: Optional[Tuple[float, float]] = None,
) -> ErrorReport:
    """
    Max and √dx-scaled l2 norm of U_j - u(x_j, t) over the interior nodes,
    optionally only those with window[0] <= x_j <= window[1]
    """
    field = np.asarray(field, dtype=float)
    nodes = grid.nodes
    if field.shape != nodes.shape:
        raise DomainError(f"field has shape {field.shape}, grid has {nodes.size} nodes")
    if window is not None:
        mask = (nodes >= window[0]) & (nodes <= window[1])
        field, nodes = field[mask], nodes[mask]
    if nodes.size == 0:
        raise DomainError("no nodes inside the comparison window")
    diff = np.abs(field - oracle(nodes))
    return ErrorReport(
        l_inf=float(diff.max()),
        l2=float(math.sqrt(grid.dx * np.sum(diff ** 2))),
        n_nodes=int(nodes.size),
        t=t,
    )


def second_moment(field: np.ndarray, grid: Grid1D) -> float:
    """Σ x_j² U_j / Σ U_j"""
    field = np.asarray(field, dtype=float)
    mass = math.fsum(field * grid.dx)
    if mass == 0.0:
        raise UndefinedMomentError("field has zero total mass")
    return math.fsum(grid.nodes ** 2 * field * grid.dx) / mass


def msd_theory(t: float, gamma: float, K: float = 1.0) -> float:
    """2K t^γ / Γ(1+γ)"""
    return 2.0 * K * t ** gamma / real_gamma(1.0 + gamma)


def second_order_dt(dx: float, K: float = 1.0) -> float:
    """Δx²/(6K), the classical time step that cancels the leading truncation error"""
    return dx * dx / (6.0 * K)


def fit_order(dx_sequence: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of log(error) against log(dx)"""
    if len(dx_sequence) != len(errors):
        raise DomainError("dx_sequence and errors differ in length")
    if len(dx_sequence) < 3:
        raise InsufficientDataError(f"need at least 3 refinement levels, got {len(dx_sequence)}")
    if min(errors) <= 0 or min(dx_sequence) <= 0:
        raise DomainError("errors and dx must be positive to fit an order")
    slope, _ = np.polyfit(np.log(dx_sequence), np.log(errors), 1)
    return float(slope)


def _initial_for(problem: ProblemSpec) -> InitialCondition:
    if problem.kind == ProblemKind.FREE_PROPAGATOR:
        return InitialCondition(kind=InitialConditionKind.DELTA)
    if problem.kind == ProblemKind.ABSORBING_PARABOLIC:
        return InitialCondition(kind=InitialConditionKind.PARABOLIC)
    return InitialCondition(kind=InitialConditionKind.MODE, n=problem.mode)


def convergence_order(
    problem: ProblemSpec,
    S: float,
    dx_sequence: Sequence[float],
    t_measure: float,
    coeff_order: int = 1,
    window: Optional[Tuple[float, float]] = None,
) -> ConvergenceReport:
    """
    Refine dx at fixed S (dt from S each level), measure the max error
    against the exact solution at the step nearest t_measure and fit the order

    Raises:
        InsufficientDataError: fewer than 3 levels
    """
    if len(dx_sequence) < 3:
        raise InsufficientDataError(f"need at least 3 refinement levels, got {len(dx_sequence)}")
    if any(b >= a for a, b in zip(dx_sequence, dx_sequence[1:])):
        raise DomainError("dx_sequence must be strictly decreasing")

    levels = []
    for dx in dx_sequence:
        dt = dt_from_S(S, dx, problem.gamma, problem.K)
        params = SchemeParams(gamma=problem.gamma, K=problem.K, dx=dx, dt=dt, coeff_order=coeff_order)
        trajectory = solve(problem, _initial_for(problem), params, t_measure, snapshot_times=[t_measure])
        if trajectory.unstable:
            raise DomainError(f"run at dx={dx} went unstable (S={S})")
        t_used = trajectory.times[0]
        report = error_norms(
            trajectory.snapshots[0],
            lambda xs: oracles.evaluate(problem, xs, t_used),
            trajectory.grid,
            t_used,
            window,
        )
        logger.info("[Analysis] dx=%.5g dt=%.5g l_inf=%.3e", dx, dt, report.l_inf)
        levels.append(ConvergenceLevel(
            dx=dx, dt=dt, steps=trajectory.steps_run, t=t_used, l_inf=report.l_inf, l2=report.l2,
        ))

    order = fit_order([level.dx for level in levels], [level.l_inf for level in levels])
    return ConvergenceReport(gamma=problem.gamma, S=S, levels=levels, order=order)
