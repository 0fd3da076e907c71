"""Decay kernels and block bounds used throughout the analysis.

The kernel family is

    eval_g(k, x)   = k (1 - exp(-x/k)) / (exp(x) - 1),   eval_g(k, 0) = 1,

for any real k > 0, together with its k -> infinity limit x / (exp(x) - 1)
(request it with the sentinel INFINITY).  The family interpolates between
exp(-x) at k = 1 and the limit kernel; all members are positive, decreasing
and convex.  The helper p(x) = (1 - exp(-x)) / x links them through the exact
factorization eval_g(k, x) = eval_g(INFINITY, x) * eval_p(x / k).

Everything is evaluated through expm1/log1p style kernels so the removable
singularities at x = 0 cost no accuracy, and extreme arguments fall back to
log-space arithmetic instead of overflowing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

__all__ = [
    "INFINITY",
    "eval_g",
    "eval_g_derivative",
    "eval_p",
    "eval_f",
    "eval_f_derivative",
    "lower_bound_theorem2",
    "reference_lower_bounds",
    "ReferenceLowerBounds",
]

INFINITY = math.inf

# math.expm1 overflows (raises) once its result leaves float64 range; stay clear.
_EXP_MAX = 700.0
_LOG_FLOAT_MAX = 709.0


def _check_family(idx) -> float:
    """Validate a family index: a positive real, or INFINITY for the limit kernel."""
    k = float(idx)
    if math.isnan(k) or k <= 0.0:
        raise ValueError(f"family index must be positive or INFINITY, got {idx!r}")
    return k


def _check_order(k) -> int:
    ki = int(k)
    if ki != k or ki < 1:
        raise ValueError(f"window order must be an integer >= 1, got {k!r}")
    return ki


# ---------------------------------------------------------------------------
# the kernels
# ---------------------------------------------------------------------------

def _g_inf(x: float) -> float:
    if x == 0.0:
        return 1.0
    if x > _EXP_MAX:
        # x / (e^x - 1) in log space; underflows gracefully to 0
        log_g = math.log(x) - x - math.log1p(-math.exp(-x))
        return math.exp(log_g)
    return x / math.expm1(x)


def eval_g(idx, x: float) -> float:
    """Kernel value for family index idx (positive real or INFINITY) at real x."""
    k = _check_family(idx)
    x = float(x)
    if math.isinf(k):
        return _g_inf(x)
    if x == 0.0:
        return 1.0
    if x > _EXP_MAX:
        # value ~ k e^{-x}; assemble in log space
        log_g = (
            math.log(k)
            + math.log(-math.expm1(-x / k))
            - x
            - math.log1p(-math.exp(-x))
        )
        return math.exp(log_g)
    if -x / k > _EXP_MAX:
        # very negative x: value ~ k e^{-x/k}, may genuinely overflow
        y = -x
        log_g = (
            math.log(k)
            + y / k
            + math.log1p(-math.exp(-y / k))
            - math.log1p(-math.exp(-y))
        )
        return math.inf if log_g >= _LOG_FLOAT_MAX else math.exp(log_g)
    return -k * math.expm1(-x / k) / math.expm1(x)


def eval_p(x: float) -> float:
    """p(x) = (1 - exp(-x)) / x with the removable singularity p(0) = 1."""
    x = float(x)
    if x == 0.0:
        return 1.0
    if -x > _EXP_MAX:
        y = -x
        log_p = y + math.log1p(-math.exp(-y)) - math.log(y)
        return math.inf if log_p >= _LOG_FLOAT_MAX else math.exp(log_p)
    return -math.expm1(-x) / x


# Maclaurin coefficients of d/du [u / (e^u - 1)]: B_n u^{n-1} / (n-1)! summed
# over even n plus the constant -1/2.  Nonzero through u^13 keeps the series
# good to ~1e-16 for |u| <= 0.35.
_GINF_PRIME_SERIES = (
    (1, 1.0 / 6.0),
    (3, -1.0 / 180.0),
    (5, 1.0 / 5040.0),
    (7, -1.0 / 151200.0),
    (9, 1.0 / 4790016.0),
    (11, -691.0 / (2730.0 * 39916800.0)),
    (13, 7.0 / (6.0 * 6227020800.0)),
)


def _g_inf_prime(u: float) -> float:
    if abs(u) < 0.35:
        acc = -0.5
        for power, coef in _GINF_PRIME_SERIES:
            acc += coef * u**power
        return acc
    if u > 350.0:
        # (E - u e^u) / E^2 ~ -(u - 1) e^{-u}, corrections below 1e-150
        return -math.exp(math.log(u - 1.0) - u)
    e = math.expm1(u)
    return (e - u * math.exp(u)) / (e * e)


# Series for p'(x): sum over n >= 1 of (-1)^n n x^{n-1} / (n+1)!.
_P_PRIME_SERIES = tuple(
    (n - 1, (-1.0) ** n * n / math.factorial(n + 1)) for n in range(1, 18)
)


def _p_prime(x: float) -> float:
    if abs(x) < 0.5:
        acc = 0.0
        for power, coef in _P_PRIME_SERIES:
            acc += coef * x**power
        return acc
    if -x > _EXP_MAX:
        # ((1 + x) e^{-x} - 1) / x^2 ~ (1 + x) e^{-x} / x^2, negative, may overflow
        y = -x
        log_mag = math.log(y - 1.0) + y - 2.0 * math.log(y)
        return -math.inf if log_mag >= _LOG_FLOAT_MAX else -math.exp(log_mag)
    return ((1.0 + x) * math.exp(-x) - 1.0) / (x * x)


def eval_g_derivative(idx, x: float) -> float:
    """d/dx of eval_g(idx, .); strictly negative on the real line.

    Finite families are differentiated through the factorization
    g_k = g_inf(x) * p(x/k), whose two derivative terms share a sign, so no
    cancellation occurs anywhere.
    """
    k = _check_family(idx)
    x = float(x)
    if math.isinf(k):
        return _g_inf_prime(x)
    u = x / k
    return _g_inf_prime(x) * eval_p(u) + _g_inf(x) * _p_prime(u) / k


# ---------------------------------------------------------------------------
# block bound f and closed-form floors
# ---------------------------------------------------------------------------

def _softplus(t: float) -> float:
    return max(t, 0.0) + math.log1p(math.exp(-abs(t)))


def eval_f(k, t: float) -> float:
    """Per-block bound f_k(t) = k ((1 + e^t)^{1/k} - 1); convex, increasing.

    f_k(0) = k (2^{1/k} - 1) is the floor of the normalized cyclic sum.
    """
    ki = _check_order(k)
    arg = _softplus(float(t)) / ki
    if arg > _EXP_MAX:
        return math.inf
    return ki * math.expm1(arg)


def eval_f_derivative(k, t: float) -> float:
    """Closed form (1 + e^t)^{1/k} / (1 + e^{-t}); positive for all t."""
    ki = _check_order(k)
    t = float(t)
    sp = _softplus(t)
    arg = sp / ki + t - sp
    if arg > _EXP_MAX:
        return math.inf
    return math.exp(arg)


def lower_bound_theorem2(k) -> float:
    """Unconditional floor k (2^{1/k} - 1) of the normalized cyclic sum.

    Strictly above ln 2 for every k >= 1 and decreasing toward it.
    """
    ki = _check_order(k)
    return ki * math.expm1(math.log(2.0) / ki)


@dataclass(frozen=True)
class ReferenceLowerBounds:
    """Closed-form floors for the normalized cyclic sum at concrete (n, k).

    diananda1961 (2(k+1)/n) only applies when n > 2(k+1) and is None
    otherwise; diananda1962 is the crude 1/k floor.  best is the max of the
    applicable floors.
    """

    theorem2: float
    diananda1961: Optional[float]
    diananda1962: float
    best: float


def reference_lower_bounds(n, k) -> ReferenceLowerBounds:
    ki = _check_order(k)
    ni = int(n)
    if ni < ki:
        raise ValueError(f"need n >= k, got n={ni}, k={ki}")
    floor2 = lower_bound_theorem2(ki)
    d61 = 2.0 * (ki + 1) / ni if ni > 2 * (ki + 1) else None
    d62 = 1.0 / ki
    best = max(v for v in (floor2, d61, d62) if v is not None)
    return ReferenceLowerBounds(
        theorem2=floor2, diananda1961=d61, diananda1962=d62, best=best
    )
