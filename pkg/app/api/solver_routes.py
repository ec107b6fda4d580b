"""
API routes for solver runs and convergence studies
"""
from fastapi import APIRouter, HTTPException
from pydantic import BaseModel
from typing import List, Optional

from app.services.experiments import convergence_setup, problem_spec, scheme_params
from app.errors import DomainError, FracDiffError, RangeError
from app.models.experiment import ConvergenceConfig, SolveConfig
from app.models.numerics import ConvergenceReport
from app.services import analysis, solver

router = APIRouter()


class SolveResponse(BaseModel):
    S: float
    dt: float
    dx: float
    x: List[float]
    times: List[float]
    snapshots: List[List[float]]
    max_abs: List[float]
    steps_run: int
    unstable: bool
    abort_step: Optional[int] = None


@router.post("/solve", response_model=SolveResponse)
def solve(request: SolveConfig):
    """Run the explicit scheme; overflow returns the truncated run flagged unstable"""
    try:
        params = scheme_params(request)
        trajectory = solver.solve(
            problem_spec(request), request.ic, params, request.t_final, request.snapshot_times,
        )
        return SolveResponse(
            S=params.S,
            dt=params.dt,
            dx=trajectory.grid.dx,
            x=trajectory.grid.nodes.tolist(),
            times=trajectory.times,
            snapshots=[field.tolist() for field in trajectory.snapshots],
            max_abs=trajectory.max_abs.tolist(),
            steps_run=trajectory.steps_run,
            unstable=trajectory.unstable,
            abort_step=trajectory.abort_step,
        )
    except (DomainError, RangeError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except FracDiffError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Solver run failed: {str(e)}")


@router.post("/convergence", response_model=ConvergenceReport)
def convergence(request: ConvergenceConfig):
    """Fixed-S refinement study against the exact solution"""
    try:
        problem, window = convergence_setup(request)
        return analysis.convergence_order(
            problem, request.S, request.dx_list, request.t_measure, request.coeff_order, window,
        )
    except (DomainError, RangeError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except FracDiffError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Convergence study failed: {str(e)}")
