"""
Pydantic models for experiment configurations (CLI files and HTTP bodies)
"""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from app.errors import ConfigError
from app.models.numerics import InitialCondition, InitialConditionKind, ProblemKind


class SolveConfig(BaseModel):
    """A single solver run; exactly one of dt and S is given, dx always"""
    gamma: float = Field(gt=0.0, le=1.0)
    K: float = Field(default=1.0, gt=0.0)
    dx: float = Field(gt=0.0)
    dt: Optional[float] = Field(default=None, gt=0.0)
    S: Optional[float] = Field(default=None, gt=0.0)
    domain: Tuple[float, float] = (0.0, 1.0)
    ic: InitialCondition = Field(default_factory=lambda: InitialCondition(kind=InitialConditionKind.DELTA))
    t_final: float = Field(ge=0.0)
    snapshot_times: Optional[List[float]] = None
    coeff_order: Literal[1, 2] = 1
    short_memory: int = Field(default=0, ge=0)

    class Config:
        extra = "forbid"

    @field_validator("ic", mode="before")
    @classmethod
    def _ic_shorthand(cls, value):
        # "ic": "parabolic" is short for {"kind": "parabolic"}
        if isinstance(value, str):
            return {"kind": value}
        return value

    @model_validator(mode="after")
    def _check(self) -> "SolveConfig":
        if (self.dt is None) == (self.S is None):
            raise ConfigError("give exactly one of dt and S", key="dt" if self.dt is not None else "S")
        if self.short_memory == 1:
            raise ConfigError("must be 0 (full history) or >= 2", key="short_memory")
        for t in self.snapshot_times or []:
            if not 0.0 <= t <= self.t_final:
                raise ConfigError(f"time {t} outside [0, t_final]", key="snapshot_times")
        xmin, xmax = self.domain
        if self.domain != (0.0, 1.0) and not (xmax > 0 and xmin == -xmax):
            raise ConfigError("must be [0, 1] or a symmetric [-L, L]", key="domain")
        return self

    @property
    def problem_kind(self) -> ProblemKind:
        if self.domain != (0.0, 1.0):
            return ProblemKind.FREE_PROPAGATOR
        if self.ic.kind == InitialConditionKind.MODE:
            return ProblemKind.ABSORBING_MODE
        return ProblemKind.ABSORBING_PARABOLIC


class ScanConfig(BaseModel):
    """Onset scans over a list of anomalous exponents"""
    gamma_list: List[float] = Field(min_length=1)
    M: int = Field(default=1000, ge=11)
    scan_step: float = Field(default=0.001, gt=0.0)
    start_factor: float = Field(default=0.98, gt=0.0)
    problem: Literal["absorbing", "propagator"] = "absorbing"
    N: Optional[int] = Field(default=None, ge=1)
    order: Literal[1, 2] = 1

    class Config:
        extra = "forbid"

    @field_validator("gamma_list")
    @classmethod
    def _gammas_in_range(cls, value: List[float]) -> List[float]:
        for gamma in value:
            if not 0.0 < gamma <= 1.0:
                raise ValueError(f"gamma {gamma} outside (0, 1]")
        return value

    @property
    def lattice_N(self) -> int:
        if self.N is not None:
            return self.N
        return 5 if self.problem == "absorbing" else 50


class CoeffsConfig(BaseModel):
    alpha: float = Field(ge=0.0, le=1.0)
    order: Literal[1, 2] = 1
    n: int = Field(ge=0)

    class Config:
        extra = "forbid"


class MLConfig(BaseModel):
    gamma: float = Field(gt=0.0, le=1.0)
    x_grid: List[float] = Field(min_length=1)

    class Config:
        extra = "forbid"

    @field_validator("x_grid")
    @classmethod
    def _non_negative(cls, value: List[float]) -> List[float]:
        if min(value) < 0:
            raise ValueError("arguments must be >= 0 (values are E(-x))")
        return value


class ConvergenceConfig(BaseModel):
    """Fixed-S refinement against an exact solution"""
    gamma: float = Field(gt=0.0, le=1.0)
    K: float = Field(default=1.0, gt=0.0)
    S: float = Field(gt=0.0)
    dx_list: List[float] = Field(min_length=3)
    t_measure: float = Field(default=0.5, gt=0.0)
    problem: Literal["absorbing", "propagator"] = "absorbing"
    half_width: float = Field(default=30.0, gt=0.0)
    coeff_order: Literal[1, 2] = 1

    class Config:
        extra = "forbid"

    @field_validator("dx_list")
    @classmethod
    def _decreasing(cls, value: List[float]) -> List[float]:
        if any(b >= a for a, b in zip(value, value[1:])) or min(value) <= 0:
            raise ValueError("must be positive and strictly decreasing")
        return value
