"""
API routes for the special functions behind the exact solutions
"""
from fastapi import APIRouter, HTTPException, Query
from pydantic import BaseModel
from typing import List

from app.errors import AccuracyError, FracDiffError
from app.services import specfun

router = APIRouter()


class FunctionValues(BaseModel):
    order: float
    arguments: List[float]
    values: List[float]


@router.get("/ml", response_model=FunctionValues)
def mittag_leffler(gamma: float = Query(..., gt=0.0, le=1.0), x: List[float] = Query(...)):
    """E_gamma(-x) for every x"""
    try:
        values = specfun.mittag_leffler_neg_array(gamma, x)
        return FunctionValues(order=gamma, arguments=x, values=values.tolist())
    except AccuracyError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except FracDiffError as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.get("/wright", response_model=FunctionValues)
def wright(nu: float = Query(..., gt=0.0, lt=1.0), z: List[float] = Query(...)):
    """Wright M_nu(z) for every z"""
    try:
        return FunctionValues(order=nu, arguments=z, values=[specfun.wright_m(nu, v) for v in z])
    except FracDiffError as e:
        raise HTTPException(status_code=400, detail=str(e))
