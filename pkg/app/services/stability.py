"""
Stability of the fractional FTCS scheme: analytic bounds on S, the
empirical instability criterion and the onset-scan experiment
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Literal, Optional, Sequence

import numpy as np

from app.config import settings
from app.errors import DomainError, InsufficientDataError, ScanFailureError
from app.models.numerics import (
    Grid1D,
    InitialCondition,
    InitialConditionKind,
    ProblemKind,
    ProblemSpec,
    SchemeParams,
    StabilityBoundSeries,
    StabilityReport,
)
from app.services import gl_coeffs
from app.services.solver import dt_from_S, solve

logger = logging.getLogger(__name__)

XI = 5.0
DELTA_M = 10
PROPAGATOR_DT = 5e-4
PROPAGATOR_N = 50

ScanProblem = Literal["absorbing", "propagator"]


def _check_gamma(gamma: float) -> None:
    if not 0.0 < gamma <= 1.0:
        raise DomainError(f"gamma must lie in (0, 1], got {gamma}")


def bound_limit(gamma: float, order: int = 1) -> float:
    """S^x = 1/2^{2-γ} (first-order weights) or 1/4^{3/2-γ} (second-order)"""
    _check_gamma(gamma)
    if order == 1:
        return 1.0 / 2.0 ** (2.0 - gamma)
    if order == 2:
        return 1.0 / 4.0 ** (1.5 - gamma)
    raise DomainError(f"order must be 1 or 2, got {order}")


def bound_series(gamma: float, order: int = 1, m_max: int = 1000) -> StabilityBoundSeries:
    """
    S_{γ,m}^x = 0.5 / Σ_{k=0}^{m} (-1)^k ω_k for m = 0..m_max

    The alternating partial sums are accumulated with Neumaier compensation.
    """
    _check_gamma(gamma)
    if m_max < 1:
        raise DomainError(f"m_max must be >= 1, got {m_max}")
    table = gl_coeffs.coefficients(1.0 - gamma, m_max, order)
    values = []
    total = 0.0
    compensation = 0.0
    for k, w in enumerate(table.coeffs):
        term = w if k % 2 == 0 else -w
        t = total + term
        if abs(total) >= abs(term):
            compensation += (total - t) + term
        else:
            compensation += (term - t) + total
        total = t
        values.append(0.5 / (total + compensation))
    return StabilityBoundSeries(gamma=gamma, order=order, values=values, limit=bound_limit(gamma, order))


def delta_S(gamma: float, order: int = 1) -> float:
    """S_{γ,2}^x - S_{γ,1}^x"""
    values = bound_series(gamma, order, 2).values
    return values[2] - values[1]


def lattice_correction(N: int) -> float:
    """sin²[(2N-1)π/(4N)]: largest sin²(qΔx/2) on a 2N+1-point absorbing lattice"""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    return math.sin((2 * N - 1) * math.pi / (4 * N)) ** 2


def mode_recurrence(
    gamma: float,
    S: float,
    q_dx: float,
    m_max: int,
    order: int = 1,
) -> np.ndarray:
    """
    Amplitudes ζ_0..ζ_{m_max} of a single Fourier mode under the scheme:
    ζ_{m+1} = ζ_m - 4S sin²(qΔx/2) Σ_k ω_k ζ_{m-k}, ζ_0 = 1
    """
    _check_gamma(gamma)
    coeffs = gl_coeffs.coefficients(1.0 - gamma, m_max, order).array
    factor = 4.0 * S * math.sin(q_dx / 2.0) ** 2
    zeta = np.empty(m_max + 1)
    zeta[0] = 1.0
    for m in range(m_max):
        zeta[m + 1] = zeta[m] - factor * np.dot(coeffs[: m + 1], zeta[m::-1])
    return zeta


def _criterion_windows(snapshots: np.ndarray, Xi: float, dM: int) -> np.ndarray:
    """Boolean per ratio step m (1-based): the window ending at m meets the criterion"""
    fields = np.asarray(snapshots, dtype=float)
    prev, cur = fields[:-1], fields[1:]
    defined = cur != 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(defined, prev / np.where(defined, cur, 1.0), Xi)
    violating = defined & ~(np.abs(ratio - Xi) > Xi)

    # sliding sums over dM+1 consecutive ratios
    def window_sum(mask: np.ndarray) -> np.ndarray:
        cumulative = np.vstack([np.zeros((1, mask.shape[1]), dtype=int), np.cumsum(mask, axis=0)])
        return cumulative[dM + 1 :] - cumulative[: -(dM + 1)]

    qualifies = (window_sum(violating) == 0) & (window_sum(defined) >= dM / 2.0)
    return np.any(qualifies, axis=1)


def detect_instability(snapshots: np.ndarray, Xi: float = XI, dM: int = DELTA_M) -> bool:
    """
    True iff some node has |u^(m-1)/u^(m) - Xi| > Xi at every one of the last
    dM+1 steps where u^(m) != 0, with at least dM/2 such steps

    Raises:
        InsufficientDataError: fewer than dM+2 snapshots
    """
    fields = np.asarray(snapshots, dtype=float)
    if fields.ndim != 2 or fields.shape[0] < dM + 2:
        raise InsufficientDataError(f"need at least {dM + 2} snapshots for dM={dM}")
    return bool(_criterion_windows(fields[-(dM + 2) :], Xi, dM)[-1])


def instability_onset_step(snapshots: np.ndarray, Xi: float = XI, dM: int = DELTA_M) -> Optional[int]:
    """First step m whose trailing window of dM+1 ratios meets the criterion"""
    fields = np.asarray(snapshots, dtype=float)
    if fields.ndim != 2 or fields.shape[0] < dM + 2:
        return None
    hits = np.flatnonzero(_criterion_windows(fields, Xi, dM))
    if hits.size == 0:
        return None
    # window index i covers ratio steps i+1..i+dM+1
    return int(hits[0]) + dM + 1


def _scan_setup(problem: ScanProblem, gamma: float, S: float, N: int):
    if problem == "absorbing":
        dx = 1.0 / (2 * N)
        spec = ProblemSpec(kind=ProblemKind.ABSORBING_PARABOLIC, gamma=gamma)
        grid = Grid1D.unit_interval(dx)
        dt = dt_from_S(S, dx, gamma)
        ic = InitialCondition(kind=InitialConditionKind.PARABOLIC)
    elif problem == "propagator":
        dt = PROPAGATOR_DT
        dx = math.sqrt(dt ** gamma / S)
        grid = Grid1D.lattice(N, dx, centered=True)
        spec = ProblemSpec(kind=ProblemKind.FREE_PROPAGATOR, gamma=gamma, domain=(grid.xmin, grid.xmax))
        ic = InitialCondition(kind=InitialConditionKind.DELTA)
    else:
        raise DomainError(f"unknown scan problem {problem!r}")
    return spec, grid, SchemeParams(gamma=gamma, dx=grid.dx, dt=dt), ic


def run_cell(
    gamma: float,
    S: float,
    M: int,
    problem: ScanProblem = "absorbing",
    N: int = 5,
    order: int = 1,
    Xi: float = XI,
    dM: int = DELTA_M,
) -> StabilityReport:
    """Solve M steps at one S and apply the instability criterion"""
    spec, grid, params, ic = _scan_setup(problem, gamma, S, N)
    params = params.model_copy(update={"coeff_order": order})
    trajectory = solve(spec, ic, params, t_final=M * params.dt, snapshot_times=[], grid=grid)
    if trajectory.unstable:
        unstable, first = True, trajectory.abort_step
    else:
        snapshots = trajectory.history.snapshots
        unstable = detect_instability(snapshots, Xi, dM)
        first = instability_onset_step(snapshots, Xi, dM) if unstable else None
    logger.debug("[Stability] gamma=%s S=%.4f unstable=%s", gamma, S, unstable)
    return StabilityReport(
        gamma=gamma,
        order=order,
        problem=problem,
        N=N,
        M=M,
        S_tested=S,
        unstable=unstable,
        first_unstable_step=first,
        S_theory=bound_limit(gamma, order),
        sin2_correction=lattice_correction(N),
        cells_run=1,
    )


def onset_scan(
    gamma: float,
    problem: ScanProblem = "absorbing",
    M: int = 1000,
    scan_step: float = 0.001,
    start_factor: float = 0.98,
    N: Optional[int] = None,
    order: int = 1,
    Xi: float = XI,
    dM: int = DELTA_M,
) -> StabilityReport:
    """
    Increase S = start_factor*S^x + scan_step*n until the run is unstable

    N defaults to 5 for the absorbing problem and 50 for the propagator.

    Raises:
        ScanFailureError: S passed 1 without instability
    """
    _check_gamma(gamma)
    if M < dM + 1:
        raise DomainError(f"M={M} too small for dM={dM}")
    if N is None:
        N = 5 if problem == "absorbing" else PROPAGATOR_N
    S_theory = bound_limit(gamma, order)
    correction = lattice_correction(N)
    n = 0
    while True:
        S = start_factor * S_theory + scan_step * n
        if S > 1.0:
            raise ScanFailureError(f"no instability up to S=1 for gamma={gamma}, M={M}, problem={problem}")
        report = run_cell(gamma, S, M, problem, N, order, Xi, dM)
        n += 1
        if report.unstable:
            break

    report = report.model_copy(update={
        "S_min": S,
        "S_min_corrected": S * correction,
        "cells_run": n,
    })
    logger.info(
        "[Stability] gamma=%s order=%d M=%d onset S_min=%.4f corrected=%.4f theory=%.4f (%d cells)",
        gamma, order, M, S, S * correction, S_theory, n,
    )
    return report


def scan_many(gammas: Sequence[float], threads: Optional[int] = None, **kwargs) -> List[StabilityReport]:
    """
    onset_scan for every gamma on a bounded thread pool; results are
    ordered by gamma regardless of completion order
    """
    workers = threads or settings.FRACDIFF_THREADS
    ordered = sorted(gammas)
    if workers == 1:
        return [onset_scan(g, **kwargs) for g in ordered]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda g: onset_scan(g, **kwargs), ordered))
