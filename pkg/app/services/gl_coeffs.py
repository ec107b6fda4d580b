"""
Grünwald-Letnikov coefficient service
Generates the weights ω_k^(α) of the first-order (p=1) and second-order (p=2)
approximations of the fractional derivative of order α = 1 - γ
"""
import math
from functools import lru_cache
from typing import List, Tuple

from app.errors import DomainError, RangeError
from app.models.numerics import CoefficientTable

# Generating polynomial of the second-order weights: 3/2 - 2z + z^2/2
SECOND_ORDER_POLY = (1.5, -2.0, 0.5)


def _check_alpha(alpha: float, n: int) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    if n < 0:
        raise DomainError(f"table length index n must be >= 0, got {n}")


def _continue_first_order(alpha: float, seed: List[float], n: int) -> List[float]:
    coeffs = list(seed)
    for k in range(len(coeffs), n + 1):
        coeffs.append((1.0 - (alpha + 1.0) / k) * coeffs[k - 1])
    return coeffs


def _continue_second_order(alpha: float, seed: List[float], n: int) -> List[float]:
    # power-of-a-series recurrence for (f_0 + f_1 z + f_2 z^2)^alpha
    f0, f1, f2 = SECOND_ORDER_POLY
    coeffs = list(seed)
    for k in range(len(coeffs), n + 1):
        acc = ((alpha + 1.0) - k) * f1 * coeffs[k - 1]
        if k >= 2:
            acc += (2.0 * (alpha + 1.0) - k) * f2 * coeffs[k - 2]
        coeffs.append(acc / (k * f0))
    return coeffs


@lru_cache(maxsize=32)
def _first_order_tuple(alpha: float, n: int) -> Tuple[float, ...]:
    return tuple(_continue_first_order(alpha, [1.0], n))


@lru_cache(maxsize=32)
def _second_order_tuple(alpha: float, n: int) -> Tuple[float, ...]:
    return tuple(_continue_second_order(alpha, [SECOND_ORDER_POLY[0] ** alpha], n))


def first_order_coeffs(alpha: float, n: int) -> CoefficientTable:
    """
    Coefficients of (1 - z)^alpha: ω_0 = 1, ω_k = (1 - (alpha+1)/k) ω_{k-1}

    Args:
        alpha: derivative order in [0, 1]
        n: highest index to generate

    Returns:
        CoefficientTable with ω_0..ω_n
    """
    _check_alpha(alpha, n)
    return CoefficientTable(alpha=alpha, order=1, coeffs=_first_order_tuple(alpha, n))


def second_order_coeffs(alpha: float, n: int) -> CoefficientTable:
    """
    First n+1 power-series coefficients of (3/2 - 2z + z^2/2)^alpha

    Args:
        alpha: derivative order in [0, 1]
        n: highest index to generate

    Returns:
        CoefficientTable with ω_0..ω_n
    """
    _check_alpha(alpha, n)
    return CoefficientTable(alpha=alpha, order=2, coeffs=_second_order_tuple(alpha, n))


def coefficients(alpha: float, n: int, order: int = 1) -> CoefficientTable:
    """Dispatch on the approximation order p"""
    if order == 1:
        return first_order_coeffs(alpha, n)
    if order == 2:
        return second_order_coeffs(alpha, n)
    raise DomainError(f"coefficient order must be 1 or 2, got {order}")


def extend(table: CoefficientTable, n: int) -> CoefficientTable:
    """Return a table up to index n, reusing every stored entry unchanged"""
    _check_alpha(table.alpha, n)
    if n <= table.n:
        return CoefficientTable(alpha=table.alpha, order=table.order, coeffs=table.coeffs[: n + 1])
    grow = _continue_first_order if table.order == 1 else _continue_second_order
    return CoefficientTable(
        alpha=table.alpha,
        order=table.order,
        coeffs=tuple(grow(table.alpha, list(table.coeffs), n)),
    )


def alternating_partial_sum(table: CoefficientTable, m: int) -> float:
    """
    Σ_{k=0}^{m} (-1)^k ω_k, summed exactly-rounded with math.fsum

    Raises:
        RangeError: m is negative or beyond the table
    """
    if m < 0 or m > table.n:
        raise RangeError(f"m={m} outside table of length {len(table)}")
    return math.fsum(w if k % 2 == 0 else -w for k, w in enumerate(table.coeffs[: m + 1]))


def generating_function(table: CoefficientTable, z: float) -> float:
    """Truncated power series Σ ω_k z^k"""
    return math.fsum(w * z ** k for k, w in enumerate(table.coeffs))
