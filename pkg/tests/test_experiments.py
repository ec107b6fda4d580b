import pytest

from app.models.experiment import ConvergenceConfig, SolveConfig
from app.models.numerics import ProblemKind
from app.services.experiments import convergence_setup, problem_spec, scheme_params


def test_scheme_params_from_dt_or_S():
    direct = scheme_params(SolveConfig(gamma=1.0, dx=0.5, dt=0.125, t_final=1.0))
    assert direct.dt == 0.125
    assert direct.S == pytest.approx(0.5)
    derived = scheme_params(SolveConfig(gamma=0.5, dx=0.1, S=0.33, t_final=1.0, short_memory=20))
    assert derived.dt == pytest.approx(1.089e-5, rel=1e-12)
    assert derived.short_memory == 20


def test_problem_spec_follows_domain_and_ic():
    assert problem_spec(SolveConfig(gamma=0.5, dx=0.1, S=0.3, t_final=1.0, ic="parabolic")).kind == (
        ProblemKind.ABSORBING_PARABOLIC
    )
    mode = problem_spec(SolveConfig(gamma=0.5, dx=0.1, S=0.3, t_final=1.0, ic={"kind": "mode", "n": 2}))
    assert mode.kind == ProblemKind.ABSORBING_MODE
    assert mode.mode == 2
    free = problem_spec(SolveConfig(gamma=0.5, dx=0.1, S=0.3, t_final=1.0, domain=(-4.0, 4.0)))
    assert free.kind == ProblemKind.FREE_PROPAGATOR
    assert free.domain == (-4.0, 4.0)


def test_convergence_setup_windows():
    problem, window = convergence_setup(ConvergenceConfig(gamma=1.0, S=0.4, dx_list=[0.1, 0.05, 0.025]))
    assert problem.kind == ProblemKind.ABSORBING_PARABOLIC
    assert window is None

    config = ConvergenceConfig(
        gamma=1.0, S=0.4, dx_list=[0.4, 0.2, 0.1], problem="propagator", t_measure=0.25, half_width=12.0,
    )
    problem, window = convergence_setup(config)
    assert problem.kind == ProblemKind.FREE_PROPAGATOR
    assert problem.domain == (-12.0, 12.0)
    assert window == pytest.approx((-5.0, 5.0))

    narrow = config.model_copy(update={"half_width": 3.0})
    assert convergence_setup(narrow)[1] == (-3.0, 3.0)
