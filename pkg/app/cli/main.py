"""
Command-line entry point: python -m app.cli <command> [--config FILE] [flags] [--out DIR]
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from app.cli.config_parser import parse_config
from app.cli.runner import EXIT_NUMERICAL, EXIT_USAGE, run
from app.config import settings
from app.errors import ConfigError, FracDiffError

logger = logging.getLogger(__name__)

# flags that are not config keys
_RESERVED = {"command", "config", "out"}
_IC_FLAGS = {"ic": "kind", "ic_x0": "x0", "ic_n": "n", "ic_file": "file"}


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors raise ConfigError instead of exiting"""

    def error(self, message: str):
        raise ConfigError(message, key="usage")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="python -m app.cli", description="Fractional subdiffusion FTCS solver")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--config", help="JSON experiment configuration")
        sub.add_argument("--out", default=settings.OUTPUT_DIR, help="output directory")
        return sub

    solve = add_command("solve", "run the explicit scheme")
    solve.add_argument("--gamma", type=float)
    solve.add_argument("--K", type=float)
    solve.add_argument("--dx", type=float)
    solve.add_argument("--dt", type=float)
    solve.add_argument("--S", type=float)
    solve.add_argument("--domain", type=float, nargs=2, metavar=("XMIN", "XMAX"))
    solve.add_argument("--ic", choices=["delta", "parabolic", "mode", "tabulated"])
    solve.add_argument("--ic-x0", type=float)
    solve.add_argument("--ic-n", type=int)
    solve.add_argument("--ic-file")
    solve.add_argument("--t-final", type=float)
    solve.add_argument("--snapshot-times", type=float, nargs="+")
    solve.add_argument("--coeff-order", type=int)
    solve.add_argument("--short-memory", type=int)

    scan = add_command("scan-stability", "find the onset of instability")
    scan.add_argument("--gamma-list", "--gamma", dest="gamma_list", type=float, nargs="+")
    scan.add_argument("--M", type=int)
    scan.add_argument("--scan-step", type=float)
    scan.add_argument("--start-factor", type=float)
    scan.add_argument("--problem", choices=["absorbing", "propagator"])
    scan.add_argument("--N", type=int)
    scan.add_argument("--order", type=int)

    coeffs = add_command("coeffs", "Grünwald-Letnikov weights")
    coeffs.add_argument("--alpha", type=float)
    coeffs.add_argument("--order", type=int)
    coeffs.add_argument("--n", type=int)

    ml = add_command("ml", "Mittag-Leffler E_gamma(-x) on a grid")
    ml.add_argument("--gamma", type=float)
    ml.add_argument("--x-grid", type=float, nargs="+")

    convergence = add_command("convergence", "observed order under fixed-S refinement")
    convergence.add_argument("--gamma", type=float)
    convergence.add_argument("--K", type=float)
    convergence.add_argument("--S", type=float)
    convergence.add_argument("--dx-list", type=float, nargs="+")
    convergence.add_argument("--t-measure", type=float)
    convergence.add_argument("--problem", choices=["absorbing", "propagator"])
    convergence.add_argument("--half-width", type=float)
    convergence.add_argument("--coeff-order", type=int)
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    flags = {k: v for k, v in vars(args).items() if k not in _RESERVED}
    ic = {_IC_FLAGS[k]: flags.pop(k) for k in list(flags) if k in _IC_FLAGS}
    ic = {k: v for k, v in ic.items() if v is not None}
    if ic:
        flags["ic"] = ic
    if flags.get("domain") is not None:
        flags["domain"] = tuple(flags["domain"])
    return flags


def _report_error(error: Exception, exit_code: int) -> int:
    record = {"error": str(error), "type": type(error).__name__, "exit_code": exit_code}
    if isinstance(error, ConfigError) and error.key:
        record["key"] = error.key
    print(json.dumps(record), file=sys.stderr)
    return exit_code


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    logging.basicConfig(
        level=settings.LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        args = build_parser().parse_args(argv)
        config = parse_config(args.command, args.config, _overrides(args))
        return run(args.command, config, args.out)
    except ConfigError as e:
        return _report_error(e, EXIT_USAGE)
    except FracDiffError as e:
        return _report_error(e, EXIT_NUMERICAL)
    except OSError as e:
        return _report_error(e, EXIT_USAGE)
