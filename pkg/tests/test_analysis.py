import math

import numpy as np
import pytest

from app.errors import DomainError, InsufficientDataError, UndefinedMomentError
from app.models.numerics import (
    Grid1D,
    InitialCondition,
    InitialConditionKind,
    ProblemKind,
    ProblemSpec,
    SchemeParams,
)
from app.services import analysis, oracles, solver

DELTA = InitialCondition(kind=InitialConditionKind.DELTA)
PARABOLIC = InitialCondition(kind=InitialConditionKind.PARABOLIC)


def parabola(xs):
    return xs * (1 - xs)


def free(gamma, half_width=30.0):
    return ProblemSpec(kind=ProblemKind.FREE_PROPAGATOR, gamma=gamma, domain=(-half_width, half_width))


def test_error_norms_of_exact_field(unit_grid):
    report = analysis.error_norms(parabola(unit_grid.nodes), parabola, unit_grid, 0.0)
    assert report.l_inf == 0.0
    assert report.l2 == 0.0
    assert report.n_nodes == 9


def test_error_norms_of_shifted_field(unit_grid):
    shifted = parabola(unit_grid.nodes) + 0.1
    report = analysis.error_norms(shifted, parabola, unit_grid, 0.2)
    assert report.l_inf == pytest.approx(0.1, rel=1e-12)
    assert report.l2 == pytest.approx(math.sqrt(0.1 * 9 * 0.01), rel=1e-12)
    assert report.t == 0.2


def test_error_norms_symmetric_under_negation(unit_grid, rng):
    field = rng.normal(size=unit_grid.n_interior)
    report = analysis.error_norms(field, parabola, unit_grid, 0.0)
    mirrored = analysis.error_norms(-field, lambda xs: -parabola(xs), unit_grid, 0.0)
    assert report.l_inf == mirrored.l_inf
    assert report.l2 == pytest.approx(mirrored.l2, rel=1e-15)


def test_error_norms_window(unit_grid):
    field = parabola(unit_grid.nodes)
    field[0] += 1.0
    report = analysis.error_norms(field, parabola, unit_grid, 0.0, window=(0.25, 0.55))
    assert report.n_nodes == 3
    assert report.l_inf == 0.0
    with pytest.raises(DomainError):
        analysis.error_norms(field, parabola, unit_grid, 0.0, window=(2.0, 3.0))
    with pytest.raises(DomainError):
        analysis.error_norms(field[:-1], parabola, unit_grid, 0.0)


def test_second_moment():
    grid = Grid1D.symmetric(2.0, 1.0)
    np.testing.assert_allclose(grid.nodes, [-1.0, 0.0, 1.0])
    assert analysis.second_moment(np.array([0.0, 1.0, 0.0]), grid) == 0.0
    assert analysis.second_moment(np.array([1.0, 0.0, 1.0]), grid) == 1.0
    with pytest.raises(UndefinedMomentError):
        analysis.second_moment(np.zeros(3), grid)


def test_msd_theory():
    assert analysis.msd_theory(10.0, 1.0) == pytest.approx(20.0, rel=1e-14)
    assert analysis.msd_theory(1.0, 0.5) == pytest.approx(2.0 / math.gamma(1.5), rel=1e-14)
    assert analysis.msd_theory(1.0, 0.5, K=3.0) == pytest.approx(6.0 / math.gamma(1.5), rel=1e-14)


def test_second_order_dt():
    assert analysis.second_order_dt(0.1) == pytest.approx(0.01 / 6.0, rel=1e-15)
    assert analysis.second_order_dt(0.1, K=2.0) == pytest.approx(0.01 / 12.0, rel=1e-15)


def test_fit_order():
    dxs = [0.1, 0.05, 0.025, 0.0125]
    assert analysis.fit_order(dxs, [3.0 * dx ** 2 for dx in dxs]) == pytest.approx(2.0, abs=1e-10)
    assert analysis.fit_order(dxs, [0.5 * dx for dx in dxs]) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(InsufficientDataError):
        analysis.fit_order([0.1, 0.05], [1e-2, 2.5e-3])
    with pytest.raises(DomainError):
        analysis.fit_order([0.1, 0.05, 0.025], [1e-2, 0.0, 1e-4])


def test_convergence_order_argument_checks():
    problem = ProblemSpec(kind=ProblemKind.ABSORBING_PARABOLIC, gamma=1.0)
    with pytest.raises(InsufficientDataError):
        analysis.convergence_order(problem, 0.4, [0.1, 0.05], 0.5)
    with pytest.raises(DomainError):
        analysis.convergence_order(problem, 0.4, [0.05, 0.1, 0.025], 0.5)


def test_convergence_order_reports_unstable_level():
    problem = ProblemSpec(kind=ProblemKind.ABSORBING_PARABOLIC, gamma=1.0)
    with pytest.raises(DomainError):
        analysis.convergence_order(problem, 2.0, [0.25, 0.125, 0.0625], 100.0)


def propagator_error(gamma, S, dt, t):
    dx = math.sqrt(dt ** gamma / S)
    problem = free(gamma)
    params = SchemeParams(gamma=gamma, dx=dx, dt=dt)
    trajectory = solver.solve(problem, DELTA, params, t, snapshot_times=[t])
    t_used = trajectory.times[0]
    half_width = oracles.propagator_half_width(t_used, gamma)
    return analysis.error_norms(
        trajectory.snapshots[0],
        lambda xs: oracles.evaluate(problem, xs, t_used),
        trajectory.grid,
        t_used,
        window=(-half_width, half_width),
    )


def test_classical_propagator_agreement():
    # S = 1/2 decouples even and odd nodes under a delta start
    assert propagator_error(1.0, 0.4, 0.01, 10.0).l_inf < 1e-3


@pytest.mark.parametrize("gamma, S", [(0.5, 0.33), (0.75, 0.4)])
def test_fractional_propagator_agreement(gamma, S):
    assert propagator_error(gamma, S, 0.01, 10.0).l_inf < 1e-2


@pytest.mark.slow
def test_propagator_error_shrinks_under_refinement():
    gamma, t = 0.75, 2.0
    half_width = oracles.propagator_half_width(t, gamma)
    report = analysis.convergence_order(
        free(gamma, 12.0), 0.4, [0.4, 0.2, 0.1], t, window=(-half_width, half_width),
    )
    errors = [level.l_inf for level in report.levels]
    assert errors[0] > errors[1] > errors[2]
    assert report.order > 0


def absorbing_error(gamma, S, dx, t=0.5):
    problem = ProblemSpec(kind=ProblemKind.ABSORBING_PARABOLIC, gamma=gamma)
    params = SchemeParams(gamma=gamma, dx=dx, dt=solver.dt_from_S(S, dx, gamma))
    trajectory = solver.solve(problem, PARABOLIC, params, t, snapshot_times=[t])
    t_used = trajectory.times[0]
    return analysis.error_norms(
        trajectory.snapshots[0],
        lambda xs: oracles.absorbing_series(xs, t_used, gamma),
        trajectory.grid,
        t_used,
    )


@pytest.mark.parametrize("gamma, S, dx", [(0.75, 0.4, 1 / 20), (1.0, 0.5, 1 / 50)])
def test_absorbing_agreement(gamma, S, dx):
    assert absorbing_error(gamma, S, dx).l_inf < 5e-3


@pytest.mark.slow
def test_absorbing_agreement_coarse_mesh():
    assert absorbing_error(0.5, 0.33, 1 / 10).l_inf < 2e-2


def test_convergence_order_classical():
    problem = ProblemSpec(kind=ProblemKind.ABSORBING_PARABOLIC, gamma=1.0)
    report = analysis.convergence_order(problem, 0.4, [1 / 10, 1 / 20, 1 / 40], 0.5)
    assert len(report.levels) == 3
    assert 1.8 <= report.order <= 2.2
    assert all(level.steps > 0 for level in report.levels)


@pytest.mark.slow
def test_convergence_order_fractional():
    problem = ProblemSpec(kind=ProblemKind.ABSORBING_PARABOLIC, gamma=0.75)
    report = analysis.convergence_order(problem, 0.3, [1 / 10, 1 / 20, 1 / 40], 0.5)
    assert 1.6 <= report.order <= 2.4


def test_msd_follows_power_law():
    gamma, S, dt = 0.5, 0.33, 0.01
    dx = math.sqrt(dt ** gamma / S)
    params = SchemeParams(gamma=gamma, dx=dx, dt=dt)
    times = [1.0, 5.0, 10.0]
    trajectory = solver.solve(free(gamma), DELTA, params, 10.0, snapshot_times=times)
    assert trajectory.times == pytest.approx(times)
    for t, field in zip(trajectory.times, trajectory.snapshots):
        msd = analysis.second_moment(field, trajectory.grid)
        assert msd == pytest.approx(analysis.msd_theory(t, gamma), rel=0.02)
