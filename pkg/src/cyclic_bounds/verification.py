"""Randomized invariant suites, seed-reproducible and machine-readable.

Each group draws its own cases from a seeded generator, counts failures, and
reports the worst margin it saw.  The "fast" suite covers the kernel-family
and transform invariants; "all" adds the gradient/Euler checks and the
floor sweep over random vectors.  Identical seeds give byte-identical JSON.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .funcs import (
    INFINITY,
    eval_f,
    eval_f_derivative,
    eval_g,
    eval_g_derivative,
    eval_p,
    lower_bound_theorem2,
)
from .optimize import gradient
from .sums import (
    CyclicVector,
    block_diagnostics,
    diananda_sum,
    replicate,
    zero_insert,
)
from .tangent import solve_tangent

__all__ = ["GroupResult", "VerificationReport", "run_verification", "report_to_json"]


@dataclass(frozen=True)
class GroupResult:
    name: str
    cases: int
    failures: int
    worst: float

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    seed: int
    groups: tuple[GroupResult, ...]

    @property
    def total_cases(self) -> int:
        return sum(g.cases for g in self.groups)

    @property
    def failed_groups(self) -> int:
        return sum(0 if g.passed else 1 for g in self.groups)

    @property
    def passed(self) -> bool:
        return self.failed_groups == 0


def report_to_json(report: VerificationReport) -> str:
    rows = []
    for g in report.groups:
        rows.append(
            "{"
            + f'"name": "{g.name}", "cases": {g.cases}, "failures": {g.failures}, '
            + f'"worst": {format(g.worst, ".17g")}, '
            + f'"passed": {"true" if g.passed else "false"}'
            + "}"
        )
    return (
        "{"
        + f'"suite": "{report.suite}", "seed": {report.seed}, '
        + f'"total_cases": {report.total_cases}, '
        + f'"failed_groups": {report.failed_groups}, '
        + f'"passed": {"true" if report.passed else "false"}, '
        + '"groups": ['
        + ", ".join(rows)
        + "]}"
    )


def _sample_indices(rng, count):
    """Family indices: positive reals across several decades plus INFINITY."""
    ks = list(np.exp(rng.uniform(math.log(0.2), math.log(200.0), count - 1)))
    ks.append(INFINITY)
    return ks


def _kernel_shape(rng, scale: int) -> GroupResult:
    """Positivity and monotone decrease of the kernels and of p on [-30, 30]."""
    cases = failures = 0
    worst = math.inf
    for k in _sample_indices(rng, 3 * scale):
        xs = np.sort(rng.uniform(-30.0, 30.0, 8))
        vals = [eval_g(k, x) for x in xs]
        for v in vals:
            cases += 1
            if not v > 0.0:
                failures += 1
            worst = min(worst, v)
        for lo, hi in zip(vals, vals[1:]):
            cases += 1
            if not hi < lo:
                failures += 1
            worst = min(worst, lo - hi)
    xs = np.sort(rng.uniform(-30.0, 30.0, 4 * scale))
    pv = [eval_p(x) for x in xs]
    for v in pv:
        cases += 1
        if not v > 0.0:
            failures += 1
    for lo, hi in zip(pv, pv[1:]):
        cases += 1
        if not hi < lo:
            failures += 1
    return GroupResult("kernel_shape", cases, failures, worst)


def _kernel_convexity(rng, scale: int) -> GroupResult:
    """Midpoint convexity of the kernels, p, and the block bound f.

    Slack is 1e-12 plus an ulp-aware term, since kernel values reach 1e13 at
    the left end of the test interval.
    """
    cases = failures = 0
    worst = -math.inf
    for k in _sample_indices(rng, 2 * scale):
        for _ in range(4):
            x, z = rng.uniform(-30.0, 30.0, 2)
            mid = 0.5 * (x + z)
            gm = eval_g(k, mid)
            avg = 0.5 * (eval_g(k, x) + eval_g(k, z))
            slack = 1e-12 + 1e-13 * (abs(eval_g(k, x)) + abs(eval_g(k, z)))
            cases += 1
            if not gm <= avg + slack:
                failures += 1
            worst = max(worst, gm - avg)
    for _ in range(3 * scale):
        x, z = rng.uniform(-30.0, 30.0, 2)
        mid = 0.5 * (x + z)
        pm = eval_p(mid)
        avg = 0.5 * (eval_p(x) + eval_p(z))
        slack = 1e-12 + 1e-13 * (abs(eval_p(x)) + abs(eval_p(z)))
        cases += 1
        if not pm <= avg + slack:
            failures += 1
        worst = max(worst, pm - avg)
    for _ in range(3 * scale):
        kf = int(rng.integers(1, 9))
        t, u = rng.uniform(-20.0, 20.0, 2)
        mid = 0.5 * (t + u)
        fm = eval_f(kf, mid)
        avg = 0.5 * (eval_f(kf, t) + eval_f(kf, u))
        slack = 1e-12 + 1e-13 * (abs(eval_f(kf, t)) + abs(eval_f(kf, u)))
        cases += 1
        if not fm <= avg + slack:
            failures += 1
        worst = max(worst, fm - avg)
    return GroupResult("kernel_convexity", cases, failures, worst)


def _kernel_growth_in_k(rng, scale: int) -> GroupResult:
    """k(1 - e^{-x/k}), evaluated as eval_g(k,x) * (e^x - 1), grows with k for x != 0."""
    cases = failures = 0
    worst = math.inf
    for _ in range(6 * scale):
        k1, k2 = np.sort(np.exp(rng.uniform(math.log(0.2), math.log(500.0), 2)))
        if k2 <= k1:
            continue
        x = rng.uniform(-30.0, 30.0)
        if x == 0.0:
            continue
        e = math.expm1(x)
        lhs = eval_g(k1, x) * e
        rhs = eval_g(k2, x) * e
        cases += 1
        if not lhs < rhs:
            failures += 1
        worst = min(worst, rhs - lhs)
    return GroupResult("kernel_growth_in_k", cases, failures, worst)


def _kernel_ordering_in_k(rng, scale: int) -> GroupResult:
    """g_{k2}(x) > g_{k1}(x) > e^{-x} for x > 0, k2 > k1 > 1; reversed for x < 0."""
    cases = failures = 0
    worst = math.inf
    for _ in range(6 * scale):
        k1, k2 = np.sort(1.0 + np.exp(rng.uniform(math.log(1e-3), math.log(100.0), 2)))
        if k2 <= k1:
            continue
        x = rng.uniform(0.01, 30.0)
        hi, lo, ex = eval_g(k2, x), eval_g(k1, x), math.exp(-x)
        cases += 1
        if not (hi > lo > ex):
            failures += 1
        worst = min(worst, min(hi - lo, lo - ex))
        x = rng.uniform(-30.0, -0.01)
        hi, lo, ex = eval_g(k2, x), eval_g(k1, x), math.exp(-x)
        cases += 1
        if not (hi < lo < ex):
            failures += 1
        worst = min(worst, min(lo - hi, ex - lo))
    return GroupResult("kernel_ordering_in_k", cases, failures, worst)


def _kernel_limit(rng, scale: int) -> GroupResult:
    """eval_g(1e6, x) approaches the limit kernel within 1e-5 relative on |x| <= 10."""
    cases = failures = 0
    worst = 0.0
    xs = rng.uniform(-10.0, 10.0, 4 * scale)
    for x in xs:
        lim = eval_g(INFINITY, x)
        rel = abs(eval_g(1e6, x) - lim) / abs(lim)
        cases += 1
        if not rel <= 1e-5:
            failures += 1
        worst = max(worst, rel)
    return GroupResult("kernel_limit", cases, failures, worst)


def _derivative_consistency(rng, scale: int) -> GroupResult:
    """Analytic derivatives match central differences to 1e-6 relative."""
    cases = failures = 0
    worst = 0.0
    for k in _sample_indices(rng, 2 * scale):
        for _ in range(3):
            x = rng.uniform(-20.0, 20.0)
            h = 1e-6 * max(1.0, abs(x))
            fd = (eval_g(k, x + h) - eval_g(k, x - h)) / (2.0 * h)
            an = eval_g_derivative(k, x)
            rel = abs(fd - an) / max(abs(an), 1e-30)
            cases += 1
            if not rel <= 1e-6:
                failures += 1
            worst = max(worst, rel)
            cases += 1
            if not an < 0.0:
                failures += 1
    for _ in range(3 * scale):
        kf = int(rng.integers(1, 9))
        t = rng.uniform(-20.0, 20.0)
        h = 1e-6 * max(1.0, abs(t))
        fd = (eval_f(kf, t + h) - eval_f(kf, t - h)) / (2.0 * h)
        an = eval_f_derivative(kf, t)
        rel = abs(fd - an) / max(abs(an), 1e-30)
        cases += 1
        if not rel <= 1e-6:
            failures += 1
        worst = max(worst, rel)
        cases += 1
        if not an > 0.0:
            failures += 1
    return GroupResult("derivative_consistency", cases, failures, worst)


def _block_diagnostics_group(rng, scale: int) -> GroupResult:
    """Telescoping product, per-block floor, and term accounting on random blocks."""
    cases = failures = 0
    worst = 0.0
    for _ in range(2 * scale):
        k = int(rng.integers(1, 9))
        nu = int(rng.integers(1, 17))
        x = CyclicVector(np.exp(rng.uniform(-3.0, 3.0, k * nu)))
        diag = block_diagnostics(x, k)
        prod = float(np.prod(diag.ratios))
        err = abs(prod - 1.0)
        cases += 1
        if not err <= 1e-12:
            failures += 1
        worst = max(worst, err)
        for r, s in zip(diag.ratios, diag.partials):
            floor = eval_f(k, math.log(r))
            cases += 1
            if not s >= floor - 1e-12:
                failures += 1
            worst = max(worst, floor - s)
        total = float(np.sum(diag.partials))
        ref = diananda_sum(x, k)
        rel = abs(total - ref) / ref
        cases += 1
        if not rel <= 1e-12:
            failures += 1
        worst = max(worst, rel)
    return GroupResult("block_diagnostics", cases, failures, worst)


def _transform_identities(rng, scale: int) -> GroupResult:
    """Replication and zero-insertion preserve the (normalized) cyclic sum."""
    cases = failures = 0
    worst = 0.0
    for _ in range(2 * scale):
        k = int(rng.integers(1, 7))
        nu = int(rng.integers(1, 9))
        n = k * nu
        x = CyclicVector(np.exp(rng.uniform(-3.0, 3.0, n)))
        base = diananda_sum(x, k)
        copies = int(rng.integers(2, 5))
        rep = replicate(x, copies)
        rel = abs(diananda_sum(rep, k) / len(rep) - base / n) / (base / n)
        cases += 1
        if not rel <= 1e-12:
            failures += 1
        worst = max(worst, rel)
        ins = zero_insert(x, k)
        rel = abs(diananda_sum(ins, k + 1) - base) / base
        cases += 1
        if not rel <= 1e-12:
            failures += 1
        worst = max(worst, rel)
    return GroupResult("transform_identities", cases, failures, worst)


def _invariance(rng, scale: int) -> GroupResult:
    """Degree-zero scaling and rotation invariance of the cyclic sum."""
    cases = failures = 0
    worst = 0.0
    for _ in range(2 * scale):
        n = int(rng.integers(2, 40))
        k = int(rng.integers(1, n + 1))
        x = np.exp(rng.uniform(-3.0, 3.0, n))
        base = diananda_sum(x, k)
        c = math.exp(rng.uniform(-8.0, 8.0))
        rel = abs(diananda_sum(c * x, k) - base) / base
        cases += 1
        if not rel <= 1e-10:
            failures += 1
        worst = max(worst, rel)
        shift = int(rng.integers(0, n))
        rel = abs(diananda_sum(np.roll(x, shift), k) - base) / base
        cases += 1
        if not rel <= 1e-12:
            failures += 1
        worst = max(worst, rel)
    return GroupResult("invariance", cases, failures, worst)


def _gradient_euler(rng, scale: int) -> GroupResult:
    """Finite-difference agreement of the gradient and the Euler identity."""
    cases = failures = 0
    worst = 0.0
    for _ in range(scale):
        n = int(rng.integers(3, 21))
        k = int(rng.integers(1, n + 1))
        x = np.exp(rng.uniform(-2.0, 2.0, n))
        g = gradient(x, k)
        scale_g = max(1.0, float(np.max(np.abs(g))))
        for m in range(n):
            h = 1e-6 * x[m]
            xp = x.copy()
            xp[m] += h
            xm = x.copy()
            xm[m] -= h
            fd = (diananda_sum(xp, k) - diananda_sum(xm, k)) / (2.0 * h)
            err = abs(fd - g[m]) / scale_g
            cases += 1
            if not err <= 1e-6:
                failures += 1
            worst = max(worst, err)
        euler = abs(float(np.dot(x, g))) / max(1.0, float(np.sum(np.abs(x * g))))
        cases += 1
        if not euler <= 1e-10:
            failures += 1
        worst = max(worst, euler)
    return GroupResult("gradient_euler", cases, failures, worst)


def _floor_sweep(rng, scale: int) -> GroupResult:
    """Every evaluated positive vector respects the k (2^{1/k} - 1) floor."""
    cases = failures = 0
    worst = math.inf
    for _ in range(6 * scale):
        n = int(rng.integers(1, 60))
        k = int(rng.integers(1, n + 1))
        x = np.exp(rng.uniform(-4.0, 4.0, n))
        val = (k / n) * diananda_sum(x, k)
        floor = lower_bound_theorem2(k)
        margin = val - floor
        cases += 1
        if not margin >= -1e-9:
            failures += 1
        worst = min(worst, margin)
    return GroupResult("floor_sweep", cases, failures, worst)


def _bracket_consistency(rng, scale: int) -> GroupResult:
    """Floor below ceiling for every k tested, both strictly decreasing."""
    cases = failures = 0
    worst = math.inf
    ks = [2, 3, 4, 5, 6, 7, 8, 10, 16, 32, 100]
    prev_lower = prev_gamma = math.inf
    for k in ks:
        lower = lower_bound_theorem2(k)
        gamma = solve_tangent(k).gamma
        cases += 1
        if not (math.log(2.0) < lower < gamma < 1.0):
            failures += 1
        worst = min(worst, gamma - lower)
        cases += 1
        if not (lower < prev_lower and gamma < prev_gamma):
            failures += 1
        prev_lower, prev_gamma = lower, gamma
    return GroupResult("bracket_consistency", cases, failures, worst)


_FAST_GROUPS = (
    _kernel_shape,
    _kernel_convexity,
    _kernel_growth_in_k,
    _kernel_ordering_in_k,
    _kernel_limit,
    _derivative_consistency,
    _block_diagnostics_group,
    _transform_identities,
    _invariance,
    _bracket_consistency,
)

_ALL_GROUPS = _FAST_GROUPS + (_gradient_euler, _floor_sweep)


def run_verification(suite: str = "fast", seed: int = 0) -> VerificationReport:
    """Run the named suite ("fast" or "all"); all randomness flows from seed."""
    if suite not in ("fast", "all"):
        raise ValueError(f"unknown suite {suite!r}; expected 'fast' or 'all'")
    groups = _ALL_GROUPS if suite == "all" else _FAST_GROUPS
    scale = 260 if suite == "all" else 60
    rng = np.random.default_rng(seed)
    results = tuple(fn(rng, scale) for fn in groups)
    return VerificationReport(suite=suite, seed=int(seed), groups=results)
