"""
Explicit fractional FTCS solver
U_j^(m+1) = U_j^(m) + S Σ_{k=0}^{m} ω_k L_j^(m-k) with L the discrete Laplacian
on a zero-Dirichlet lattice
"""
import logging
import math
from typing import Optional, Sequence, Union

import numpy as np

from app.errors import DomainError, OverflowSignal, RangeError
from app.models.numerics import (
    CoefficientTable,
    Grid1D,
    InitialCondition,
    ProblemSpec,
    SchemeParams,
    Trajectory,
)
from app.services import gl_coeffs
from app.services.oracles import initial_condition

logger = logging.getLogger(__name__)

# convolutions longer than this are summed blockwise with math.fsum
COMPENSATED_FROM = 10_000
_BLOCK = 1024


def dt_from_S(S: float, dx: float, gamma: float, K: float = 1.0) -> float:
    """Time step [S dx² / K]^{1/γ} that gives the scheme parameter S"""
    if S <= 0 or dx <= 0 or K <= 0:
        raise DomainError(f"S, dx and K must be positive, got S={S}, dx={dx}, K={K}")
    if not 0.0 < gamma <= 1.0:
        raise DomainError(f"gamma must lie in (0, 1], got {gamma}")
    return (S * dx * dx / K) ** (1.0 / gamma)


def laplacian(field: np.ndarray) -> np.ndarray:
    """U_{j-1} - 2U_j + U_{j+1} with zero values beyond both ends"""
    padded = np.concatenate(([0.0], field, [0.0]))
    return padded[:-2] - 2.0 * padded[1:-1] + padded[2:]


class FieldHistory:
    """
    Snapshots U^(0)..U^(m) and their Laplacians

    Laplacians are stored node-major so the window used by one step is a
    block of contiguous rows.
    """

    def __init__(self, initial: np.ndarray, capacity: int = 64):
        initial = np.asarray(initial, dtype=float)
        if initial.ndim != 1 or initial.size == 0:
            raise DomainError("initial field must be a non-empty vector")
        capacity = max(capacity, 1)
        self._snapshots = np.empty((capacity, initial.size))
        self._laplacians = np.empty((initial.size, capacity))
        self._count = 0
        self.append(initial)

    def __len__(self) -> int:
        return self._count

    @property
    def n_nodes(self) -> int:
        return self._snapshots.shape[1]

    @property
    def snapshots(self) -> np.ndarray:
        """(steps, nodes) view of every stored field"""
        return self._snapshots[: self._count]

    @property
    def laplacians(self) -> np.ndarray:
        """(steps, nodes) view of every stored Laplacian"""
        return self._laplacians[:, : self._count].T

    @property
    def latest(self) -> np.ndarray:
        return self._snapshots[self._count - 1]

    def laplacian_window(self, width: int) -> np.ndarray:
        """Laplacians of the most recent width steps, oldest first, as (nodes, width)"""
        return self._laplacians[:, self._count - width : self._count]

    def append(self, field: np.ndarray) -> None:
        if self._count == self._snapshots.shape[0]:
            self._grow()
        self._snapshots[self._count] = field
        self._laplacians[:, self._count] = laplacian(field)
        self._count += 1

    def _grow(self) -> None:
        capacity = 2 * self._snapshots.shape[0]
        snapshots = np.empty((capacity, self.n_nodes))
        snapshots[: self._count] = self._snapshots[: self._count]
        laplacians = np.empty((self.n_nodes, capacity))
        laplacians[:, : self._count] = self._laplacians[:, : self._count]
        self._snapshots, self._laplacians = snapshots, laplacians


def _window_width(m: int, params: SchemeParams, coeffs: CoefficientTable) -> int:
    width = m + 1
    if params.short_memory:
        width = min(width, params.short_memory)
    if width > len(coeffs) and coeffs.alpha != 0.0:
        raise RangeError(f"coefficient table of length {len(coeffs)} too short for step {m + 1}")
    return min(width, coeffs.support)


def _convolve(window: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Σ_k weights[k] window[:, k] per node; weights are oldest-first"""
    width = weights.size
    if width <= COMPENSATED_FROM:
        return window @ weights
    partial = np.add.reduceat(window * weights, np.arange(0, width, _BLOCK), axis=1)
    return np.array([math.fsum(row) for row in partial])


def step(
    history: FieldHistory,
    params: SchemeParams,
    coeffs: CoefficientTable,
    reversed_coeffs: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Advance one time step and append U^(m+1) with its Laplacian to history

    reversed_coeffs, when given, must equal coeffs.array[::-1] (contiguous);
    solve passes it to avoid re-reversing the table each step.

    Raises:
        RangeError: the table is shorter than the history requires
        OverflowSignal: the new field has non-finite values
    """
    m = len(history) - 1
    width = _window_width(m, params, coeffs)
    if reversed_coeffs is None:
        weights = coeffs.array[:width][::-1]
    else:
        weights = reversed_coeffs[reversed_coeffs.size - width :]
    new = history.latest + params.S * _convolve(history.laplacian_window(width), weights)
    if not np.all(np.isfinite(new)):
        raise OverflowSignal(m + 1)
    history.append(new)
    return new


def grid_for(problem: ProblemSpec, dx: float) -> Grid1D:
    """Lattice of spacing dx on the problem's domain"""
    try:
        if problem.absorbing:
            return Grid1D.unit_interval(dx)
        return Grid1D.symmetric(problem.domain[1], dx)
    except ValueError as e:
        raise DomainError(str(e)) from e


def step_count(t_final: float, dt: float) -> int:
    """⌈t_final / dt⌉, ignoring rounding noise in the quotient"""
    return max(0, math.ceil(t_final / dt - 1e-9))


def _snap_times(times: Sequence[float], dt: float, n_steps: int, t_final: float) -> list:
    indices = []
    for t in times:
        if t < 0 or t > t_final + 1e-12 * max(1.0, t_final):
            raise DomainError(f"snapshot time {t} outside [0, {t_final}]")
        idx = min(int(round(t / dt)), n_steps)
        if abs(idx * dt - t) > 1e-9 * max(1.0, abs(t)):
            logger.warning("[Solver] Snapshot time %s is off the step grid, using %s", t, idx * dt)
        indices.append(idx)
    return indices


def solve(
    problem: ProblemSpec,
    initial: Union[InitialCondition, np.ndarray],
    params: SchemeParams,
    t_final: float,
    snapshot_times: Optional[Sequence[float]] = None,
    grid: Optional[Grid1D] = None,
) -> Trajectory:
    """
    Run ⌈t_final/dt⌉ steps from the initial condition

    Snapshots are taken at the steps nearest to snapshot_times (default
    t = 0 and t = t_final). Non-finite values stop the run; the trajectory
    is then truncated and flagged unstable at the offending step.
    """
    if t_final < 0:
        raise DomainError(f"t_final must be >= 0, got {t_final}")
    if abs(params.gamma - problem.gamma) > 1e-12 or abs(params.K - problem.K) > 1e-12:
        raise DomainError("scheme gamma/K differ from the problem's")
    grid = grid or grid_for(problem, params.dx)
    if abs(grid.dx - params.dx) > 1e-9 * params.dx:
        raise DomainError(f"grid spacing {grid.dx} differs from dx={params.dx}")

    field = initial if isinstance(initial, np.ndarray) else initial_condition(initial, grid)
    if field.shape != (grid.n_interior,):
        raise DomainError(f"initial field has shape {field.shape}, grid has {grid.n_interior} nodes")

    n_steps = step_count(t_final, params.dt)
    requested = [0.0, t_final] if snapshot_times is None else snapshot_times
    wanted = sorted(set(_snap_times(requested, params.dt, n_steps, t_final)))
    memory = n_steps + 1 if not params.short_memory else min(n_steps + 1, params.short_memory)
    coeffs = gl_coeffs.coefficients(params.alpha, max(memory - 1, 0), params.coeff_order)
    reversed_coeffs = np.ascontiguousarray(coeffs.array[::-1])

    logger.info(
        "[Solver] %d nodes, %d steps, S=%.6g, dt=%.6g, gamma=%s",
        grid.n_interior, n_steps, params.S, params.dt, params.gamma,
    )
    if params.short_memory and params.short_memory < n_steps + 1:
        full = gl_coeffs.coefficients(params.alpha, n_steps, params.coeff_order)
        tail = float(np.abs(full.array[params.short_memory :]).sum())
        logger.info("[Solver] Short memory L=%d drops tail weight %.3e", params.short_memory, tail)

    history = FieldHistory(field, capacity=n_steps + 1)
    abort_step = None
    for _ in range(n_steps):
        try:
            step(history, params, coeffs, reversed_coeffs)
        except OverflowSignal as e:
            logger.warning("[Solver] Overflow at step %d, run truncated", e.step)
            abort_step = e.step
            break

    stored = history.snapshots
    kept = [idx for idx in wanted if idx < len(history)]
    return Trajectory(
        times=[idx * params.dt for idx in kept],
        snapshots=[stored[idx].copy() for idx in kept],
        max_abs=np.abs(stored).max(axis=1),
        steps_run=len(history) - 1,
        unstable=abort_step is not None,
        abort_step=abort_step,
        grid=grid,
        dt=params.dt,
        history=history,
    )
