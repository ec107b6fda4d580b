"""
API routes for Grünwald-Letnikov coefficient tables
"""
from fastapi import APIRouter, HTTPException, Query

from app.errors import FracDiffError
from app.models.numerics import CoefficientTable
from app.services import gl_coeffs

router = APIRouter()


@router.get("", response_model=CoefficientTable)
def get_coefficients(
    alpha: float = Query(..., ge=0.0, le=1.0),
    order: int = Query(1, ge=1, le=2),
    n: int = Query(..., ge=0, le=100_000),
):
    """Weights ω_0..ω_n of the first- or second-order approximation"""
    try:
        return gl_coeffs.coefficients(alpha, n, order)
    except FracDiffError as e:
        raise HTTPException(status_code=400, detail=str(e))
