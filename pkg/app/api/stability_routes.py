"""
API routes for stability bounds and onset scans
"""
from fastapi import APIRouter, HTTPException, Query
from pydantic import BaseModel
from typing import List

from app.errors import DomainError, FracDiffError
from app.models.experiment import ScanConfig
from app.models.numerics import StabilityBoundSeries, StabilityReport
from app.services import stability

router = APIRouter()


class BoundResponse(BaseModel):
    series: StabilityBoundSeries
    delta_S: float


@router.get("/bound", response_model=BoundResponse)
def get_bound(
    gamma: float = Query(..., gt=0.0, le=1.0),
    order: int = Query(1, ge=1, le=2),
    m_max: int = Query(1000, ge=2, le=100_000),
):
    """Bounds S_{gamma,m} for m = 0..m_max, their limit and S_{gamma,2} - S_{gamma,1}"""
    try:
        return BoundResponse(
            series=stability.bound_series(gamma, order, m_max),
            delta_S=stability.delta_S(gamma, order),
        )
    except FracDiffError as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/scan", response_model=List[StabilityReport])
def scan(request: ScanConfig):
    """Onset scan for every gamma in the request"""
    try:
        return stability.scan_many(
            request.gamma_list,
            problem=request.problem,
            M=request.M,
            scan_step=request.scan_step,
            start_factor=request.start_factor,
            N=request.lattice_N,
            order=request.order,
        )
    except DomainError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except FracDiffError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Stability scan failed: {str(e)}")
