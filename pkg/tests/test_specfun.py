import math

import numpy as np
import pytest
from scipy import integrate, special

from app.errors import DomainError, RangeError
from app.models.numerics import MLParams
from app.services import specfun


def test_real_gamma():
    assert specfun.real_gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert specfun.real_gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-14)
    assert specfun.real_gamma(5.0) == pytest.approx(24.0, rel=1e-14)
    with pytest.raises(DomainError):
        specfun.real_gamma(-2.0)
    with pytest.raises(DomainError):
        specfun.real_gamma(0.0)


def test_mittag_leffler_order_one_is_exponential():
    xs = np.linspace(0.0, 10.0, 100)
    values = specfun.mittag_leffler_neg_array(1.0, xs)
    np.testing.assert_allclose(values, np.exp(-xs), rtol=0, atol=1e-10)


def test_mittag_leffler_one_half_matches_erfcx():
    # E_{1/2}(-x) = exp(x^2) erfc(x)
    xs = np.linspace(0.0, 5.0, 101)
    values = specfun.mittag_leffler_neg_array(0.5, xs)
    np.testing.assert_allclose(values, special.erfcx(xs), rtol=0, atol=1e-8)


@pytest.mark.parametrize("gamma", [0.3, 0.5, 0.8])
def test_mittag_leffler_non_increasing(gamma):
    values = specfun.mittag_leffler_neg_array(gamma, np.linspace(0.0, 20.0, 81))
    assert values[0] == 1.0
    assert np.all(np.diff(values) <= 1e-9)
    assert np.all(values > 0)


def test_mittag_leffler_large_argument_uses_leading_asymptotics():
    gamma = 0.6
    x = 200.0
    leading = 1.0 / (x * special.gamma(1.0 - gamma))
    assert specfun.mittag_leffler_neg(gamma, x) == pytest.approx(leading, rel=1e-2)


def test_mittag_leffler_series_radius_is_configurable():
    params = MLParams(gamma=0.5, series_radius=0.5)
    assert specfun.mittag_leffler_neg(0.5, 0.8, params) == pytest.approx(special.erfcx(0.8), abs=1e-8)


def test_mittag_leffler_domain():
    with pytest.raises(DomainError):
        specfun.mittag_leffler_neg(0.0, 1.0)
    with pytest.raises(DomainError):
        specfun.mittag_leffler_neg(1.2, 1.0)
    with pytest.raises(DomainError):
        specfun.mittag_leffler_neg(0.5, -1.0)


def test_mittag_leffler_params_must_match_gamma():
    params = MLParams(gamma=0.75)
    with pytest.raises(DomainError):
        specfun.mittag_leffler_neg(0.5, 1.0, params)
    with pytest.raises(DomainError):
        specfun.mittag_leffler_neg_array(0.5, [0.5, 1.0], params)


def test_wright_examples():
    assert specfun.wright_m(0.25, 0.0) == pytest.approx(1.0 / special.gamma(0.75), rel=1e-14)
    assert specfun.wright_m(0.5, 0.0) == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-14)
    assert specfun.wright_m(0.5, 1.0) == pytest.approx(math.exp(-0.25) / math.sqrt(math.pi), abs=1e-12)


def test_wright_one_half_is_gaussian():
    zs = np.linspace(0.0, 5.0, 51)
    values = np.array([specfun.wright_m(0.5, z) for z in zs])
    np.testing.assert_allclose(values, np.exp(-zs ** 2 / 4.0) / math.sqrt(math.pi), rtol=0, atol=1e-10)


@pytest.mark.parametrize("nu", [0.25, 0.5])
def test_wright_normalization(nu):
    mass, _ = integrate.quad(lambda z: specfun.wright_m(nu, z), 0.0, specfun.WRIGHT_Z_MAX, points=[1.0], limit=200)
    assert mass == pytest.approx(1.0, abs=1e-4)


def test_wright_is_non_negative_and_continuous_at_regime_switch():
    for nu in (0.25, 0.4):
        below = specfun.wright_m(nu, 1.0)
        above = specfun.wright_m(nu, 1.0 + 1e-9)
        assert below == pytest.approx(above, abs=1e-8)
    assert all(specfun.wright_m(0.25, z) >= 0 for z in np.linspace(0, 10, 41))


def test_wright_range():
    with pytest.raises(RangeError):
        specfun.wright_m(0.25, 10.5)
    with pytest.raises(DomainError):
        specfun.wright_m(1.0, 1.0)
    with pytest.raises(DomainError):
        specfun.wright_m(0.25, -0.1)
