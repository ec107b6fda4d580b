"""
Resolution of validated experiment configs into solver inputs
"""
from typing import Optional, Tuple

from pydantic import ValidationError

from app.errors import ConfigError
from app.models.experiment import ConvergenceConfig, SolveConfig
from app.models.numerics import ProblemKind, ProblemSpec, SchemeParams
from app.services.oracles import propagator_half_width
from app.services.solver import dt_from_S


def scheme_params(config: SolveConfig) -> SchemeParams:
    """SchemeParams with dt resolved from S when S was given"""
    dt = config.dt if config.dt is not None else dt_from_S(config.S, config.dx, config.gamma, config.K)
    return SchemeParams(
        gamma=config.gamma,
        K=config.K,
        dx=config.dx,
        dt=dt,
        coeff_order=config.coeff_order,
        short_memory=config.short_memory,
    )


def problem_spec(config: SolveConfig) -> ProblemSpec:
    try:
        return ProblemSpec(
            kind=config.problem_kind,
            gamma=config.gamma,
            K=config.K,
            domain=config.domain,
            mode=config.ic.n if config.ic.kind == "mode" else None,
        )
    except ValidationError as e:
        raise ConfigError(e.errors()[0]["msg"], key="domain") from e


def convergence_setup(config: ConvergenceConfig) -> Tuple[ProblemSpec, Optional[Tuple[float, float]]]:
    """Problem for a convergence run and the x-window where its oracle is defined"""
    if config.problem == "absorbing":
        return ProblemSpec(kind=ProblemKind.ABSORBING_PARABOLIC, gamma=config.gamma, K=config.K), None
    problem = ProblemSpec(
        kind=ProblemKind.FREE_PROPAGATOR,
        gamma=config.gamma,
        K=config.K,
        domain=(-config.half_width, config.half_width),
    )
    reach = min(propagator_half_width(config.t_measure, config.gamma, config.K), config.half_width)
    return problem, (-reach, reach)
