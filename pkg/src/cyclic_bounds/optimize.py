"""Numerical minimization of the normalized cyclic sum over the positive cone.

The objective (k/n) * diananda_sum(x, k) is homogeneous of degree zero, so
descent runs in log coordinates y = ln x restricted to the gauge sum(y) = 0.
Multi-start projected gradient descent with a backtracking line search is
combined with a uniform start, a witness-shaped start when k divides n, and
cheap boundary probes; the best value found is an upper bound on the true
infimum, never asserted to equal it.  A brute-force grid oracle for n <= 5
provides an independent cross-check on desk-scale instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import CapacityError, DomainError, DegenerateFamilyError, NoBracketError
from .funcs import lower_bound_theorem2
from .sums import CyclicVector, as_cyclic_vector, _window_sums, _check_window

__all__ = [
    "MinimizeConfig",
    "MinimizationResult",
    "gradient",
    "minimize",
    "grid_oracle",
    "descend_from",
]

_GRID_BUDGET = 10**8


def gradient(x: "CyclicVector | Sequence[float]", k: int) -> np.ndarray:
    """Analytic gradient of diananda_sum at a strictly positive point.

    Component m is 1/t_{m+1,k} minus the sum over the k windows containing
    x_m of x_i / t_{i+1,k}^2.  The degree-zero Euler identity
    sum_m x_m * grad_m = 0 holds at every point.
    """
    v = as_cyclic_vector(x)
    k = _check_window(k, v.n)
    a = v.entries
    if np.any(a == 0.0):
        bad = int(np.nonzero(a == 0.0)[0][0])
        raise DomainError(f"entry {bad + 1} is zero; the gradient needs x > 0")
    denom = _window_sums(a, k, 1)
    w = a / (denom * denom)
    acc = np.zeros(v.n)
    for d in range(1, k + 1):
        acc += np.roll(w, d)
    return 1.0 / denom - acc


@dataclass(frozen=True)
class MinimizeConfig:
    restarts: int = 8
    seed: int = 0
    max_iters: int = 600
    grad_tol: float = 1e-10


@dataclass(frozen=True)
class MinimizationResult:
    """Best value found for (k/n) * diananda_sum together with its certificate floor.

    value is an upper bound on the normalized infimum; certified_floor is the
    unconditional k (2^{1/k} - 1) analytic floor.
    """

    n: int
    k: int
    value: float
    x_best: CyclicVector
    certified_floor: float
    restarts_used: int
    converged: bool
    gradient_norm: float

    def to_json(self) -> str:
        xs = ", ".join(format(e, ".17g") for e in self.x_best.entries)
        return (
            "{"
            + f'"n": {self.n}, "k": {self.k}, '
            + f'"value": {format(self.value, ".17g")}, '
            + f'"certified_floor": {format(self.certified_floor, ".17g")}, '
            + f'"converged": {"true" if self.converged else "false"}, '
            + f'"restarts_used": {self.restarts_used}, '
            + f'"gradient_norm": {format(self.gradient_norm, ".17g")}, '
            + f'"x_best": [{xs}]'
            + "}"
        )


def _objective(y: np.ndarray, k: int):
    """Value and y-gradient of (k/n) * diananda_sum(exp(y), k), gauge-projected."""
    n = y.size
    x = np.exp(y)
    denom = _window_sums(x, k, 1)
    val = (k / n) * float(np.sum(x / denom))
    w = x / (denom * denom)
    acc = np.zeros(n)
    for d in range(1, k + 1):
        acc += np.roll(w, d)
    grad_y = (k / n) * (1.0 / denom - acc) * x
    grad_y -= grad_y.mean()
    return val, grad_y, x


def descend_from(
    y0: np.ndarray, k: int, max_iters: int = 600, grad_tol: float = 1e-10
):
    """Projected gradient descent in log coordinates from the start y0.

    Backtracking line search with sufficient decrease; the accepted step
    seeds the next trial step.  Returns (value, x, grad_inf_norm, converged).
    """
    y = np.asarray(y0, dtype=float).copy()
    y -= y.mean()
    val, g, x = _objective(y, k)
    step = 1.0
    converged = False
    for _ in range(max_iters):
        gnorm = float(np.max(np.abs(g)))
        if gnorm <= grad_tol:
            converged = True
            break
        gg = float(g @ g)
        t = step
        accepted = False
        for _ in range(60):
            y_try = y - t * g
            y_try -= y_try.mean()
            val_try, g_try, x_try = _objective(y_try, k)
            if val_try <= val - 1e-4 * t * gg:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        y, val, g, x = y_try, val_try, g_try, x_try
        step = min(2.0 * t, 64.0)
    gnorm = float(np.max(np.abs(g)))
    return val, x, gnorm, converged or gnorm <= grad_tol


def _witness_shaped_log_start(n: int, k: int) -> Optional[np.ndarray]:
    """Log coordinates of a witness-like profile of length n, zeros floored."""
    if k < 2 or n % k != 0 or n < 2 * k:
        return None
    try:
        from .witness import _tangent_solution

        sol = _tangent_solution(k)
    except (DegenerateFamilyError, NoBracketError):
        return None
    m = int(round(sol.mu * n / k)) * k
    m = min(max(m, k), n - k)
    m_prime = n - m
    b_star = -sol.a * m / m_prime
    logx = np.full(n, -np.inf)
    for j in range(1, m_prime // k):
        logx[j * k - 1] = j * b_star
    i_dense = np.arange(m_prime, n + 1)
    logx[i_dense - 1] = sol.a * (i_dense - n) / k
    floor = logx[np.isfinite(logx)].min() - 27.6  # zeros at ~1e-12 of the smallest
    return np.where(np.isfinite(logx), logx, floor)


def _boundary_probe_values(n: int, k: int):
    """Cheap near-boundary candidates: geometric spikes at several decades."""
    out = []
    base = np.arange(n, dtype=float)
    for log_ratio in (1.0, 3.0, 6.0, 9.0):
        y = base * log_ratio
        y -= y.mean()
        if y.max() > 650.0:
            continue
        val, g, x = _objective(y, k)
        out.append((val, x))
    return out


def minimize(n: int, k: int, config: MinimizeConfig | None = None) -> MinimizationResult:
    """Multi-start descent for the normalized cyclic sum at concrete (n, k).

    Starts: the uniform vector, a witness-shaped profile when k | n, boundary
    probes, and config.restarts random log-uniform draws seeded by
    config.seed.  Ties below 1e-12 resolve to the earliest start for
    determinism.  A start that exhausts max_iters reports converged=False but
    still competes on value.
    """
    n, k = int(n), int(k)
    if k < 1 or n < k:
        raise DomainError(f"need n >= k >= 1, got n={n}, k={k}")
    cfg = config or MinimizeConfig()
    rng = np.random.default_rng(cfg.seed)

    starts: list[np.ndarray] = [np.zeros(n)]
    wshape = _witness_shaped_log_start(n, k)
    if wshape is not None:
        starts.append(wshape)
    for _ in range(cfg.restarts):
        starts.append(rng.uniform(-3.0, 3.0, n))

    best = None
    for y0 in starts:
        val, x, gnorm, conv = descend_from(
            y0, k, max_iters=cfg.max_iters, grad_tol=cfg.grad_tol
        )
        if best is None or val < best[0] - 1e-12:
            best = (val, x, gnorm, conv)

    for val, x in _boundary_probe_values(n, k):
        if val < best[0] - 1e-12:
            gnorm = float(np.max(np.abs(gradient(x, k) * x))) * k / n
            best = (val, x, gnorm, False)

    val, x, gnorm, conv = best
    return MinimizationResult(
        n=n,
        k=k,
        value=val,
        x_best=CyclicVector(x),
        certified_floor=lower_bound_theorem2(k),
        restarts_used=cfg.restarts,
        converged=conv,
        gradient_norm=gnorm,
    )


def _default_levels(n: int) -> np.ndarray:
    """Geometric grid on [1e-3, 1e3] whose level count fits the budget.

    The count is odd so the grid contains 1.0 exactly and therefore the
    uniform vector.
    """
    count = min(39, int(_GRID_BUDGET ** (1.0 / n)))
    if count % 2 == 0:
        count -= 1
    count = max(count, 3)
    return np.geomspace(1e-3, 1e3, count)


def grid_oracle(
    n: int, k: int, levels: "Sequence[float] | None" = None
) -> float:
    """Exhaustive minimum of (k/n) * diananda_sum over a grid, one coordinate pinned.

    Homogeneity lets the first coordinate stay at 1; the remaining n - 1
    coordinates range over `levels` (default: geometric grid on [1e-3, 1e3]).
    Only for n <= 5; the combinatorial budget levels**n <= 1e8 is enforced
    with a CapacityError.
    """
    n, k = int(n), int(k)
    if n > 5:
        raise DomainError(f"grid oracle is restricted to n <= 5, got n={n}")
    k = _check_window(k, n)
    lv = _default_levels(n) if levels is None else np.asarray(levels, dtype=float)
    if lv.ndim != 1 or lv.size < 1 or np.any(lv <= 0.0):
        raise DomainError("levels must be a 1-d grid of positive values")
    count = lv.size
    if float(count) ** n > _GRID_BUDGET:
        raise CapacityError(
            f"{count}^{n} grid evaluations exceed the budget {_GRID_BUDGET:.0e}"
        )
    if n == 1:
        return float(k / n)  # single entry, sum is n/k by homogeneity

    total = count ** (n - 1)
    powers = count ** np.arange(n - 1)
    best = math.inf
    chunk = 1 << 17
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        digits = (idx[:, None] // powers[None, :]) % count
        block = np.empty((idx.size, n))
        block[:, 0] = 1.0
        block[:, 1:] = lv[digits]
        denom = np.zeros_like(block)
        for d in range(1, k + 1):
            denom += np.roll(block, -d, axis=1)
        vals = (k / n) * np.sum(block / denom, axis=1)
        m = float(vals.min())
        if m < best:
            best = m
    return best
