# Services package
from . import analysis, csv_io, experiments, gl_coeffs, oracles, solver, specfun, stability

__all__ = ["analysis", "csv_io", "experiments", "gl_coeffs", "oracles", "solver", "specfun", "stability"]
