"""
Pydantic models for the numerical data structures shared by the services
"""
import math
from enum import Enum
from typing import Any, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, PrivateAttr, computed_field, field_validator, model_validator


class CoefficientTable(BaseModel):
    """Grünwald-Letnikov weights ω_0..ω_n for a derivative of order alpha"""
    alpha: float = Field(ge=0.0, le=1.0)
    order: Literal[1, 2] = 1
    coeffs: Tuple[float, ...]

    _array: np.ndarray = PrivateAttr()
    _support: int = PrivateAttr(default=0)

    class Config:
        frozen = True

    def model_post_init(self, __context: Any) -> None:
        array = np.asarray(self.coeffs, dtype=float)
        array.setflags(write=False)
        self._array = array
        nonzero = np.flatnonzero(array)
        self._support = int(nonzero[-1]) + 1 if nonzero.size else 0

    @property
    def array(self) -> np.ndarray:
        """Read-only float64 view of the coefficients"""
        return self._array

    @property
    def n(self) -> int:
        """Highest stored index"""
        return len(self.coeffs) - 1

    @property
    def support(self) -> int:
        """Index past the last nonzero entry; entries from here on are exact zeros"""
        return self._support

    def __len__(self) -> int:
        return len(self.coeffs)


class MLParams(BaseModel):
    """Evaluation controls for the Mittag-Leffler function E_gamma(-x)"""
    gamma: float = Field(gt=0.0, le=1.0)
    series_radius: float = Field(default=1.0, gt=0.0)
    target_accuracy: float = Field(default=1e-8, gt=0.0)


class SchemeParams(BaseModel):
    """Discretization of the fractional FTCS scheme; S is derived from dt"""
    gamma: float = Field(gt=0.0, le=1.0)
    K: float = Field(default=1.0, gt=0.0)
    dx: float = Field(gt=0.0)
    dt: float = Field(gt=0.0)
    coeff_order: Literal[1, 2] = 1
    short_memory: int = Field(default=0, ge=0)

    class Config:
        frozen = True

    @field_validator("short_memory")
    @classmethod
    def _short_memory_length(cls, value: int) -> int:
        if value == 1:
            raise ValueError("short_memory must be 0 (full history) or >= 2")
        return value

    @computed_field
    @property
    def S(self) -> float:
        return self.K * self.dt ** self.gamma / self.dx ** 2

    @property
    def alpha(self) -> float:
        """Order 1 - gamma of the Grünwald-Letnikov derivative"""
        return 1.0 - self.gamma


class Grid1D(BaseModel):
    """Uniform lattice with zero-Dirichlet values at xmin and xmax"""
    xmin: float
    xmax: float
    n_interior: int = Field(ge=1)

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _ordered(self) -> "Grid1D":
        if not self.xmax > self.xmin:
            raise ValueError("xmax must exceed xmin")
        return self

    @property
    def dx(self) -> float:
        return (self.xmax - self.xmin) / (self.n_interior + 1)

    @property
    def length(self) -> float:
        return self.xmax - self.xmin

    @property
    def nodes(self) -> np.ndarray:
        """Interior node positions x_j = xmin + j*dx, j = 1..n_interior"""
        return self.xmin + self.dx * np.arange(1, self.n_interior + 1)

    def nearest_index(self, x: float) -> int:
        """Interior index (0-based) of the node closest to x"""
        j = int(round((x - self.xmin) / self.dx)) - 1
        return min(max(j, 0), self.n_interior - 1)

    @classmethod
    def unit_interval(cls, dx: float) -> "Grid1D":
        """[0, 1] split into cells of width dx (1/dx must be an integer)"""
        cells = round(1.0 / dx)
        if cells < 2 or abs(cells * dx - 1.0) > 1e-9:
            raise ValueError(f"1/dx must be an integer >= 2, got dx={dx}")
        return cls(xmin=0.0, xmax=1.0, n_interior=cells - 1)

    @classmethod
    def symmetric(cls, half_width: float, dx: float) -> "Grid1D":
        """[-L, L] with x = 0 on a node; L is rounded up to a multiple of dx"""
        n_half = max(1, math.ceil(half_width / dx - 1e-9))
        return cls(xmin=-n_half * dx, xmax=n_half * dx, n_interior=2 * n_half - 1)

    @classmethod
    def lattice(cls, N: int, dx: float, centered: bool) -> "Grid1D":
        """2N+1 points including both absorbing ends"""
        xmin = -N * dx if centered else 0.0
        return cls(xmin=xmin, xmax=xmin + 2 * N * dx, n_interior=2 * N - 1)


class ProblemKind(str, Enum):
    """Problems with exact solutions"""
    FREE_PROPAGATOR = "free_propagator"
    ABSORBING_PARABOLIC = "absorbing_parabolic"
    ABSORBING_MODE = "absorbing_mode"


class ProblemSpec(BaseModel):
    """A continuous problem: equation parameters plus domain"""
    kind: ProblemKind
    gamma: float = Field(gt=0.0, le=1.0)
    K: float = Field(default=1.0, gt=0.0)
    domain: Tuple[float, float] = (0.0, 1.0)
    mode: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _domain_matches_kind(self) -> "ProblemSpec":
        xmin, xmax = self.domain
        if self.kind == ProblemKind.FREE_PROPAGATOR:
            if not (xmax > 0 and xmin == -xmax):
                raise ValueError("free_propagator needs a symmetric domain [-L, L]")
        elif self.domain != (0.0, 1.0):
            raise ValueError("absorbing problems live on [0, 1]")
        if self.kind == ProblemKind.ABSORBING_MODE and self.mode is None:
            raise ValueError("absorbing_mode needs a mode number")
        return self

    @property
    def absorbing(self) -> bool:
        return self.kind != ProblemKind.FREE_PROPAGATOR


class InitialConditionKind(str, Enum):
    DELTA = "delta"
    PARABOLIC = "parabolic"
    MODE = "mode"
    TABULATED = "tabulated"


class InitialCondition(BaseModel):
    """U^(0): delta(x0), x(1-x), sin(n*pi*x) or values read from an x,u CSV"""
    kind: InitialConditionKind
    x0: float = 0.0
    n: int = Field(default=1, ge=1)
    file: Optional[str] = None

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def _file_for_tabulated(self) -> "InitialCondition":
        if self.kind == InitialConditionKind.TABULATED and not self.file:
            raise ValueError("tabulated initial condition needs 'file'")
        return self


class Trajectory(BaseModel):
    """Result of a solver run"""
    times: List[float] = Field(default_factory=list)
    snapshots: List[Any] = Field(default_factory=list)
    max_abs: Any = None
    steps_run: int = 0
    unstable: bool = False
    abort_step: Optional[int] = None
    grid: Optional[Grid1D] = None
    dt: Optional[float] = None
    history: Any = None

    class Config:
        arbitrary_types_allowed = True


class StabilityBoundSeries(BaseModel):
    """Bounds S_{gamma,m}^x for m = 0..m_max and their limit"""
    gamma: float
    order: Literal[1, 2]
    values: List[float]
    limit: float

    @property
    def m_max(self) -> int:
        return len(self.values) - 1


class StabilityReport(BaseModel):
    """Outcome of one stability run or onset scan"""
    gamma: float
    order: Literal[1, 2] = 1
    problem: str = "absorbing"
    N: int
    M: int
    S_tested: float
    unstable: bool
    first_unstable_step: Optional[int] = None
    S_min: Optional[float] = None
    S_min_corrected: Optional[float] = None
    S_theory: float
    sin2_correction: float
    cells_run: int = 0

    @model_validator(mode="after")
    def _step_within_run(self) -> "StabilityReport":
        if self.unstable and self.first_unstable_step is not None and self.first_unstable_step > self.M:
            raise ValueError("first_unstable_step exceeds M")
        return self


class ErrorReport(BaseModel):
    """Pointwise error of a numerical field against an exact solution"""
    l_inf: float = Field(ge=0.0)
    l2: float = Field(ge=0.0)
    n_nodes: int
    t: float


class ConvergenceLevel(BaseModel):
    dx: float
    dt: float
    steps: int
    t: float
    l_inf: float
    l2: float


class ConvergenceReport(BaseModel):
    """Errors over a fixed-S refinement sequence and the fitted order"""
    gamma: float
    S: float
    levels: List[ConvergenceLevel]
    order: float
