"""
Exact solutions of the fractional diffusion equation used as ground truth
"""
import logging
import math
from typing import Union

import numpy as np

from app.services.csv_io import read_csv
from app.errors import DomainError, RangeError
from app.models.numerics import (
    Grid1D,
    InitialCondition,
    InitialConditionKind,
    ProblemKind,
    ProblemSpec,
)
from app.services.specfun import WRIGHT_Z_MAX, mittag_leffler_neg, wright_m

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

DEFAULT_N_TERMS = 50


def _diffusion_scale(t: float, gamma: float, K: float) -> float:
    if t <= 0:
        raise DomainError(f"propagator needs t > 0, got {t}")
    if not 0.0 < gamma <= 1.0 or K <= 0:
        raise DomainError(f"invalid gamma={gamma} or K={K}")
    return math.sqrt(K * t ** gamma)


def propagator(x: float, t: float, gamma: float, K: float = 1.0) -> float:
    """
    Free-space Green's function for a delta at the origin:
    u(x, t) = M_{γ/2}(|x| / √(K t^γ)) / (2√(K t^γ))

    Raises:
        DomainError: t <= 0
        RangeError: the scaled argument exceeds the Wright z_max
    """
    scale = _diffusion_scale(t, gamma, K)
    z = abs(x) / scale
    if z > WRIGHT_Z_MAX * (1.0 + 1e-12):
        raise RangeError(f"|x|/sqrt(K t^gamma) = {z:.3f} beyond z_max={WRIGHT_Z_MAX}")
    # x at the edge of propagator_half_width may round to just past z_max
    z = min(z, WRIGHT_Z_MAX)
    if gamma == 1.0:
        # M_{1/2} is the Gaussian in closed form
        return math.exp(-z * z / 4.0) / (2.0 * math.sqrt(math.pi) * scale)
    return wright_m(gamma / 2.0, z) / (2.0 * scale)


def propagator_array(xs: np.ndarray, t: float, gamma: float, K: float = 1.0) -> np.ndarray:
    return np.array([propagator(float(x), t, gamma, K) for x in np.atleast_1d(xs)])


def propagator_half_width(t: float, gamma: float, K: float = 1.0) -> float:
    """Largest |x| at which the propagator oracle is defined"""
    return WRIGHT_Z_MAX * _diffusion_scale(t, gamma, K)


def mode_decay(n: int, t: float, gamma: float, K: float = 1.0) -> float:
    """Amplitude E_γ(-K n²π² t^γ) of the eigenmode sin(nπx) at time t"""
    if n < 1:
        raise DomainError(f"mode number must be >= 1, got {n}")
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    return mittag_leffler_neg(gamma, K * (n * math.pi) ** 2 * t ** gamma)


def absorbing_series(
    x: ArrayLike,
    t: float,
    gamma: float,
    K: float = 1.0,
    n_terms: int = DEFAULT_N_TERMS,
) -> ArrayLike:
    """
    Solution on [0, 1] with absorbing ends and u(x, 0) = x(1 - x):
    (8/π³) Σ sin[(2n+1)πx] E_γ[-K(2n+1)²π² t^γ] / (2n+1)³

    Accepts a scalar or an array of positions; the mode amplitudes are
    evaluated once per call.
    """
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0.0) or np.any(xs > 1.0):
        raise DomainError("absorbing_series is defined on [0, 1]")
    odd = 2 * np.arange(n_terms) + 1
    amplitudes = np.array([mode_decay(int(k), t, gamma, K) for k in odd]) / odd.astype(float) ** 3
    values = np.sin(math.pi * np.multiply.outer(xs, odd)) @ amplitudes * (8.0 / math.pi ** 3)
    if np.ndim(x) == 0:
        return float(values)
    return values


def initial_condition(ic: InitialCondition, grid: Grid1D) -> np.ndarray:
    """
    U^(0) on the interior nodes of grid

    delta puts mass 1 (value 1/dx) on the node nearest x0; mode is
    sin(nπ(x - xmin)/length); tabulated linearly interpolates an x,u CSV
    and is zero outside the tabulated range.
    """
    nodes = grid.nodes
    if ic.kind == InitialConditionKind.DELTA:
        field = np.zeros(grid.n_interior)
        field[grid.nearest_index(ic.x0)] = 1.0 / grid.dx
        return field
    if ic.kind == InitialConditionKind.PARABOLIC:
        return nodes * (1.0 - nodes)
    if ic.kind == InitialConditionKind.MODE:
        return np.sin(ic.n * math.pi * (nodes - grid.xmin) / grid.length)

    header, rows = read_csv(ic.file)
    if header[:2] != ["x", "u"]:
        raise DomainError(f"tabulated initial condition needs columns x,u, got {header}")
    table = np.array(rows, dtype=float)
    if table.size == 0:
        raise DomainError(f"tabulated initial condition {ic.file} has no rows")
    order = np.argsort(table[:, 0])
    logger.info("[Oracles] Tabulated initial condition from %s (%d rows)", ic.file, len(rows))
    return np.interp(nodes, table[order, 0], table[order, 1], left=0.0, right=0.0)


def evaluate(problem: ProblemSpec, xs: np.ndarray, t: float, n_terms: int = DEFAULT_N_TERMS) -> np.ndarray:
    """Exact solution of problem at positions xs and time t"""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if problem.kind == ProblemKind.FREE_PROPAGATOR:
        return propagator_array(xs, t, problem.gamma, problem.K)
    if problem.kind == ProblemKind.ABSORBING_PARABOLIC:
        return absorbing_series(xs, t, problem.gamma, problem.K, n_terms)
    amplitude = mode_decay(problem.mode, t, problem.gamma, problem.K)
    return amplitude * np.sin(problem.mode * math.pi * xs)
