from fastapi import APIRouter

router = APIRouter()

# Import and include route modules
from app.api import coeff_routes
from app.api import specfun_routes
from app.api import stability_routes
from app.api import solver_routes

router.include_router(coeff_routes.router, prefix="/coeffs", tags=["Coefficients"])
router.include_router(specfun_routes.router, prefix="/specfun", tags=["Special functions"])
router.include_router(stability_routes.router, prefix="/stability", tags=["Stability"])
router.include_router(solver_routes.router, tags=["Solver"])
