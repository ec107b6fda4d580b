"""
Special functions for the exact-solution oracles
Real Gamma, Mittag-Leffler E_γ(-x) on the negative real axis and the
Wright M-function M_ν(z) for z >= 0
"""
import logging
import math
from typing import Iterable, Optional

import numpy as np
from scipy import integrate, special

from app.errors import AccuracyError, DomainError, RangeError
from app.models.numerics import MLParams

logger = logging.getLogger(__name__)

WRIGHT_Z_MAX = 10.0
WRIGHT_SERIES_RADIUS = 1.0
_EPS = np.finfo(float).eps
_MAX_TERMS = 2000


def real_gamma(x: float) -> float:
    """
    Γ(x) for real x, negative non-integer arguments through the reflection
    formula Γ(x) = π / (sin(πx) Γ(1-x))

    Raises:
        DomainError: x is zero or a negative integer
    """
    if x <= 0 and float(x).is_integer():
        raise DomainError(f"Gamma has a pole at {x}")
    if x < 0:
        return math.pi / (math.sin(math.pi * x) * float(special.gamma(1.0 - x)))
    return float(special.gamma(x))


def _ml_series(gamma: float, x: float, target: float) -> float:
    terms = []
    for n in range(_MAX_TERMS):
        term = (-x) ** n * float(special.rgamma(1.0 + gamma * n))
        terms.append(term)
        if n > 2 and abs(term) < _EPS * 1e-2:
            break
    achieved = 4 * _EPS * math.fsum(abs(t) for t in terms) + abs(terms[-1])
    if achieved > target:
        raise AccuracyError(f"Mittag-Leffler series at x={x}, gamma={gamma}", achieved)
    return math.fsum(terms)


def _ml_asymptotic(gamma: float, x: float, target: float) -> Optional[float]:
    """Algebraic expansion truncated before its smallest term, or None if too coarse"""
    terms = []
    smallest = math.inf
    for k in range(1, _MAX_TERMS):
        power = x ** (-k)
        if power == 0.0:
            break
        term = (-1) ** (k + 1) * power * float(special.rgamma(1.0 - gamma * k))
        if term == 0.0:
            # pole of Γ(1 - γk)
            continue
        if abs(term) >= smallest:
            break
        smallest = abs(term)
        terms.append(term)
    if smallest > target * 1e-1:
        return None
    return math.fsum(terms[:-1]) if len(terms) > 1 else math.fsum(terms)


def _ml_integral(gamma: float, x: float, target: float) -> float:
    # E_γ(-x) = sin(γπ)/(γπ) ∫_0^∞ exp(-(xs)^{1/γ}) / (s² + 2s cos(γπ) + 1) ds
    cos_g = math.cos(gamma * math.pi)
    power = 1.0 / gamma

    def integrand(s: float) -> float:
        y = x * s
        if y > 1e3:
            return 0.0
        return math.exp(-(y ** power)) / (s * s + 2.0 * s * cos_g + 1.0)

    breaks = sorted({b for b in (max(-cos_g, 0.0), 1.0 / x) if b > 0.0})
    edges = [0.0] + breaks + [math.inf]
    value = 0.0
    error = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        part, err = integrate.quad(integrand, lo, hi, epsabs=target * 1e-3, epsrel=1e-12, limit=400)
        value += part
        error += err
    scale = math.sin(gamma * math.pi) / (gamma * math.pi)
    if error * scale > target:
        raise AccuracyError(f"Mittag-Leffler quadrature at x={x}, gamma={gamma}", error * scale)
    return value * scale


def mittag_leffler_neg(gamma: float, x: float, params: Optional[MLParams] = None) -> float:
    """
    E_γ(-x) = Σ (-x)^n / Γ(1 + γn) for 0 < γ <= 1 and x >= 0

    Uses the Taylor series below params.series_radius, the algebraic
    asymptotic expansion when its smallest term is below the target and the
    real-line integral representation otherwise. γ = 1 is the exponential.

    Raises:
        DomainError: gamma outside (0, 1], x < 0 or params for another gamma
        AccuracyError: the target accuracy cannot be met
    """
    if not 0.0 < gamma <= 1.0:
        raise DomainError(f"Mittag-Leffler order must lie in (0, 1], got {gamma}")
    if x < 0:
        raise DomainError(f"argument must be >= 0 (value E(-x)), got {x}")
    if params is None:
        params = MLParams(gamma=gamma)
    elif params.gamma != gamma:
        raise DomainError(f"params are for gamma={params.gamma}, called with gamma={gamma}")
    target = params.target_accuracy
    if x == 0.0:
        return 1.0
    if gamma == 1.0:
        return math.exp(-x)
    if x <= params.series_radius:
        return _ml_series(gamma, x, target)
    value = _ml_asymptotic(gamma, x, target)
    if value is not None:
        return value
    logger.debug("[Specfun] E_%s(-%s) via quadrature", gamma, x)
    return _ml_integral(gamma, x, target)


def mittag_leffler_neg_array(gamma: float, xs: Iterable[float], params: Optional[MLParams] = None) -> np.ndarray:
    """Evaluate E_γ(-x) over a sequence of arguments"""
    return np.array([mittag_leffler_neg(gamma, float(x), params) for x in xs])


def _wright_series(nu: float, z: float) -> float:
    terms = []
    term_scale = 1.0
    for n in range(_MAX_TERMS):
        if n:
            term_scale *= -z / n
        term = term_scale * float(special.rgamma(1.0 - nu - nu * n))
        terms.append(term)
        if n > 2 and abs(term) < 1e-18 and abs(terms[-2]) < 1e-18:
            break
    return math.fsum(terms)


def _wright_integral(nu: float, z: float) -> float:
    # positive representation through the one-sided stable density:
    # M_ν(z) = z^{ν/(1-ν)} / (π(1-ν)) ∫_0^π A(φ) exp(-z^{1/(1-ν)} A(φ)) dφ
    rate = z ** (1.0 / (1.0 - nu))

    def integrand(phi: float) -> float:
        log_a = (
            nu * math.log(math.sin(nu * phi))
            + (1.0 - nu) * math.log(math.sin((1.0 - nu) * phi))
            - math.log(math.sin(phi))
        ) / (1.0 - nu)
        if log_a > 700.0:
            return 0.0
        return math.exp(log_a - rate * math.exp(log_a))

    value, _ = integrate.quad(integrand, 0.0, math.pi, epsabs=1e-14, epsrel=1e-12, limit=400)
    return value * z ** (nu / (1.0 - nu)) / (math.pi * (1.0 - nu))


def wright_m(nu: float, z: float) -> float:
    """
    Wright M-function M_ν(z) = Σ (-z)^n / (n! Γ(1 - ν - νn)) for 0 <= z <= 10

    Gamma poles contribute exactly zero (reciprocal Gamma).

    Raises:
        DomainError: nu outside (0, 1) or z < 0
        RangeError: z beyond WRIGHT_Z_MAX
    """
    if not 0.0 < nu < 1.0:
        raise DomainError(f"Wright order must lie in (0, 1), got {nu}")
    if z < 0:
        raise DomainError(f"Wright argument must be >= 0, got {z}")
    if z > WRIGHT_Z_MAX:
        raise RangeError(f"Wright argument {z} beyond z_max={WRIGHT_Z_MAX}")
    # the series converges slowly for nu > 1/2, keep it to small z there
    radius = WRIGHT_SERIES_RADIUS if nu <= 0.5 else 0.1 * WRIGHT_SERIES_RADIUS
    if z <= radius:
        return _wright_series(nu, z)
    return max(_wright_integral(nu, z), 0.0)
