from .numerics import (
    CoefficientTable,
    MLParams,
    SchemeParams,
    Grid1D,
    ProblemKind,
    ProblemSpec,
    InitialConditionKind,
    InitialCondition,
    Trajectory,
    StabilityBoundSeries,
    StabilityReport,
    ErrorReport,
    ConvergenceLevel,
    ConvergenceReport,
)
from .experiment import (
    SolveConfig,
    ScanConfig,
    CoeffsConfig,
    MLConfig,
    ConvergenceConfig,
)

__all__ = [
    "CoefficientTable",
    "MLParams",
    "SchemeParams",
    "Grid1D",
    "ProblemKind",
    "ProblemSpec",
    "InitialConditionKind",
    "InitialCondition",
    "Trajectory",
    "StabilityBoundSeries",
    "StabilityReport",
    "ErrorReport",
    "ConvergenceLevel",
    "ConvergenceReport",
    "SolveConfig",
    "ScanConfig",
    "CoeffsConfig",
    "MLConfig",
    "ConvergenceConfig",
]
