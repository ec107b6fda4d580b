"""
Command pipelines behind the CLI: run one validated config, write the CSV
artifacts and the run manifest
"""
import json
import logging
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Tuple

from pydantic import BaseModel

from app.services.experiments import convergence_setup, problem_spec, scheme_params
from app.services.csv_io import write_csv
from app.models.experiment import CoeffsConfig, ConvergenceConfig, MLConfig, ScanConfig, SolveConfig
from app.services import analysis, gl_coeffs, solver, specfun, stability

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_UNSTABLE = 3


def _run_solve(config: SolveConfig, out: Path) -> Tuple[int, Dict[str, Any]]:
    params = scheme_params(config)
    problem = problem_spec(config)
    trajectory = solver.solve(problem, config.ic, params, config.t_final, config.snapshot_times)
    grid = trajectory.grid

    rows = [
        (t, x, u)
        for t, field in zip(trajectory.times, trajectory.snapshots)
        for x, u in zip(grid.nodes, field)
    ]
    write_csv(out / "solve.csv", ["t", "x", "u"], rows)
    write_csv(
        out / "solve_steps.csv",
        ["step", "t", "max_abs"],
        [(m, m * params.dt, value) for m, value in enumerate(trajectory.max_abs)],
    )
    n = grid.n_interior
    derived = {
        "S": params.S,
        "dt": params.dt,
        "dx": grid.dx,
        "steps": solver.step_count(config.t_final, params.dt),
        "steps_run": trajectory.steps_run,
        "n_interior": n,
        "domain": [grid.xmin, grid.xmax],
        "sin2_correction": math.sin(n * math.pi / (2 * (n + 1))) ** 2,
        "snapshot_times_used": trajectory.times,
        "unstable": trajectory.unstable,
        "abort_step": trajectory.abort_step,
    }
    return (EXIT_UNSTABLE if trajectory.unstable else EXIT_OK), derived


def _run_scan(config: ScanConfig, out: Path) -> Tuple[int, Dict[str, Any]]:
    reports = stability.scan_many(
        config.gamma_list,
        problem=config.problem,
        M=config.M,
        scan_step=config.scan_step,
        start_factor=config.start_factor,
        N=config.lattice_N,
        order=config.order,
    )
    write_csv(
        out / "scan-stability.csv",
        ["gamma", "order", "M", "S_min", "S_min_corrected", "S_theory"],
        [(r.gamma, r.order, r.M, r.S_min, r.S_min_corrected, r.S_theory) for r in reports],
    )
    derived = {
        "N": config.lattice_N,
        "sin2_correction": stability.lattice_correction(config.lattice_N),
        "reports": [r.model_dump() for r in reports],
    }
    return EXIT_OK, derived


def _run_coeffs(config: CoeffsConfig, out: Path) -> Tuple[int, Dict[str, Any]]:
    table = gl_coeffs.coefficients(config.alpha, config.n, config.order)
    write_csv(out / "coeffs.csv", ["k", "omega"], list(enumerate(table.coeffs)))
    return EXIT_OK, {"support": table.support}


def _run_ml(config: MLConfig, out: Path) -> Tuple[int, Dict[str, Any]]:
    values = specfun.mittag_leffler_neg_array(config.gamma, config.x_grid)
    write_csv(out / "ml.csv", ["x", "value"], list(zip(config.x_grid, values)))
    return EXIT_OK, {}


def _run_convergence(config: ConvergenceConfig, out: Path) -> Tuple[int, Dict[str, Any]]:
    problem, window = convergence_setup(config)
    report = analysis.convergence_order(
        problem, config.S, config.dx_list, config.t_measure, config.coeff_order, window,
    )
    write_csv(
        out / "convergence.csv",
        ["dx", "dt", "l_inf", "l2"],
        [(level.dx, level.dt, level.l_inf, level.l2) for level in report.levels],
        comments=[f"order={report.order!r}"],
    )
    return EXIT_OK, {"levels": [level.model_dump() for level in report.levels], "order": report.order}


COMMANDS = {
    "solve": _run_solve,
    "scan-stability": _run_scan,
    "coeffs": _run_coeffs,
    "ml": _run_ml,
    "convergence": _run_convergence,
}


def write_manifest(out: Path, command: str, config: BaseModel, derived: Dict[str, Any], exit_code: int) -> Path:
    """Resolved config plus derived values; the only artifact carrying a timestamp"""
    manifest = {
        "command": command,
        "config": config.model_dump(mode="json"),
        "derived": derived,
        "exit_code": exit_code,
        "created_at": datetime.now(timezone.utc).isoformat(),
    }
    path = out / f"{command}.manifest.json"
    path.write_text(json.dumps(manifest, indent=2, default=float) + "\n")
    return path


def run(command: str, config: BaseModel, out_dir: str) -> int:
    """
    Execute command, write its CSV files and manifest under out_dir

    Returns:
        0 on success, 3 when a solve run aborted on overflow

    Numerical errors propagate to the caller.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    logger.info("[CLI] Running %s into %s", command, out)
    exit_code, derived = COMMANDS[command](config, out)
    write_manifest(out, command, config, derived, exit_code)
    return exit_code
