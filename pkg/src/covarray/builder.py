"""Randomized covering-array builder.

A covering array is the vertical concatenation of r independent random
blow-ups of A_opt.  The Local Lemma only proves such an array exists for the
chosen r, so the builder searches Las Vegas style: it verifies exactly and
either redraws everything (``restart``) or redraws just the column assignments
behind the first uncovered t-set (``resample``, the Moser-Tardos step).

The source column of copy l, column j, at draw generation g comes from the
stream ``generator(seed, attempt, l, j, g)``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import mpmath
import numpy as np

from .arrays import ArrayMatrix, coverage_report, project_alphabet, verify_covering
from .bounds import (
    c_tv,
    next_prime_power,
    required_copies,
    required_copies_almost,
    to_fraction,
)
from .constructions import apply_assignment, build_a_opt
from .errors import BadEpsilonError, GaveUpError, KLessThanTError
from .field import FieldSpec, field_of_order
from .rng import generator


@dataclass(frozen=True)
class BuilderPlan:
    t: int
    k: int
    v: int
    q: int
    r: int
    n_total: int
    p_bound: Fraction
    d_bound: int
    lll_value: float
    lll_ok: bool

    def to_json(self) -> dict:
        return {
            "t": self.t, "k": self.k, "v": self.v, "q": self.q, "r": self.r,
            "n_total": self.n_total,
            "p_bound": {"num": self.p_bound.numerator, "den": self.p_bound.denominator,
                        "decimal": float(self.p_bound)},
            "d_bound": self.d_bound,
            "lll_value": self.lll_value,
            "lll_ok": self.lll_ok,
        }


@dataclass(frozen=True)
class BuilderConfig:
    seed: int = 0
    strategy: Literal["restart", "resample"] = "restart"
    max_attempts: int = 64
    max_resamples: int = 10**6
    extra_copies: int = 0

    def __post_init__(self):
        if self.strategy not in ("restart", "resample"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.max_attempts < 1 or self.max_resamples < 1 or self.extra_copies < 0:
            raise ValueError("limits must be positive and extra_copies >= 0")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass
class BuildOutcome:
    array: ArrayMatrix
    plan: BuilderPlan
    attempts: int
    resamples: int
    verified: bool
    uncovered: int = 0
    epsilon: Fraction | None = None
    wall_clock: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "plan": self.plan.to_json(),
            "n": self.array.n_rows,
            "k": self.array.n_cols,
            "v": self.array.v,
            "attempts": self.attempts,
            "resamples": self.resamples,
            "verified": self.verified,
            "uncovered": self.uncovered,
        }
        if self.epsilon is not None:
            out["epsilon"] = {"num": self.epsilon.numerator, "den": self.epsilon.denominator,
                              "decimal": float(self.epsilon)}
        if timing:
            out["wall_clock_s"] = self.wall_clock
        return out


def plan_for(t: int, k: int, q: int, r: int, v: int | None = None) -> BuilderPlan:
    p = (1 - c_tv(t, q)) ** r
    d = t * math.comb(k, t - 1) - 1
    with mpmath.workdps(50):
        value = mpmath.e * (mpmath.mpf(p.numerator) / p.denominator) * (d + 1)
        ok = bool(value <= 1)
    return BuilderPlan(t=t, k=k, v=q if v is None else v, q=q, r=r, n_total=r * q**t,
                       p_bound=p, d_bound=d, lll_value=float(value), lll_ok=ok)


def make_plan(t: int, k: int, v: int) -> BuilderPlan:
    return plan_for(t, k, v, required_copies(t, k, v))


def _draw(config: BuilderConfig, attempt: int, copy: int, col: int, gen: int, n_base: int) -> int:
    return int(generator(config.seed, attempt, copy, col, gen).integers(n_base))


def _assemble(base: ArrayMatrix, assignment: np.ndarray) -> ArrayMatrix:
    return ArrayMatrix(np.vstack([apply_assignment(base, row).data for row in assignment]), base.v)


def _check_params(t: int, k: int) -> None:
    if t < 2:
        raise ValueError("strength must be >= 2")
    if k < t:
        raise KLessThanTError(f"k={k} < t={t}")


def build_covering(t: int, k: int, spec: FieldSpec, config: BuilderConfig = BuilderConfig(),
                   threads: int = 1) -> BuildOutcome:
    _check_params(t, k)
    start = time.perf_counter()
    q = spec.q
    plan = plan_for(t, k, q, required_copies(t, k, q) + config.extra_copies)
    base = build_a_opt(spec, t)
    n_base = base.n_cols
    r = plan.r

    def fresh(attempt):
        return np.array([[_draw(config, attempt, l, j, 0, n_base) for j in range(k)]
                         for l in range(r)], dtype=np.int64)

    if config.strategy == "restart":
        for attempt in range(config.max_attempts):
            array = _assemble(base, fresh(attempt))
            ok, _ = verify_covering(array, t, threads=threads)
            if ok:
                return BuildOutcome(array, plan, attempt + 1, 0, True,
                                    wall_clock=time.perf_counter() - start)
        raise GaveUpError(f"no covering array after {config.max_attempts} attempts; "
                          "raise extra_copies", attempts=config.max_attempts)

    assignment = fresh(0)
    generation = np.zeros((r, k), dtype=np.int64)
    resamples = 0
    while True:
        array = _assemble(base, assignment)
        ok, witness = verify_covering(array, t, threads=threads)
        if ok:
            return BuildOutcome(array, plan, 1, resamples, True,
                                wall_clock=time.perf_counter() - start)
        if resamples >= config.max_resamples:
            raise GaveUpError(f"still uncovered after {resamples} resamples; raise extra_copies",
                              attempts=1, resamples=resamples)
        resamples += 1
        for l in range(r):
            for j in witness.indices:
                generation[l, j] += 1
                assignment[l, j] = _draw(config, 0, l, j, int(generation[l, j]), n_base)


def build_covering_any_v(t: int, k: int, v: int, config: BuilderConfig = BuilderConfig(),
                         threads: int = 1) -> BuildOutcome:
    """Build over the smallest prime power q >= v, then project the symbols down to v."""
    if v < 2:
        raise ValueError("alphabet size must be >= 2")
    q = next_prime_power(v)
    outcome = build_covering(t, k, field_of_order(q), config, threads)
    if q == v:
        return outcome
    start = time.perf_counter()
    array = project_alphabet(outcome.array, v)
    ok, _ = verify_covering(array, t, threads=threads)
    plan = plan_for(t, k, q, outcome.plan.r, v=v)
    return BuildOutcome(array, plan, outcome.attempts, outcome.resamples, ok,
                        wall_clock=outcome.wall_clock + time.perf_counter() - start)


def build_almost(t: int, k: int, spec: FieldSpec, epsilon, config: BuilderConfig = BuilderConfig(),
                 threads: int = 1) -> BuildOutcome:
    """Concatenate required_copies_almost copies until at most eps * C(k, t) sets are uncovered.

    Acceptance uses exact enumeration only, so C(k, t) must fit the work budget.
    """
    _check_params(t, k)
    eps = to_fraction(epsilon)
    if not 0 < eps <= 1:
        raise BadEpsilonError("epsilon must lie in (0, 1]; use build_covering for full coverage")
    start = time.perf_counter()
    q = spec.q
    r = required_copies_almost(q, eps) + config.extra_copies
    plan = plan_for(t, k, q, r)
    base = build_a_opt(spec, t)
    allowed = eps * math.comb(k, t)
    for attempt in range(config.max_attempts):
        assignment = np.array([[_draw(config, attempt, l, j, 0, base.n_cols) for j in range(k)]
                               for l in range(r)], dtype=np.int64)
        array = _assemble(base, assignment)
        report = coverage_report(array, t, witness_cap=0, threads=threads)
        uncovered = report.total - report.covered
        if uncovered <= allowed:
            return BuildOutcome(array, plan, attempt + 1, 0, True, uncovered=uncovered,
                                epsilon=eps, wall_clock=time.perf_counter() - start)
    raise GaveUpError(f"no {eps}-almost-covering array after {config.max_attempts} attempts",
                      attempts=config.max_attempts)


def build_almost_any_v(t: int, k: int, v: int, epsilon, config: BuilderConfig = BuilderConfig(),
                       threads: int = 1) -> BuildOutcome:
    q = next_prime_power(v)
    outcome = build_almost(t, k, field_of_order(q), epsilon, config, threads)
    if q == v:
        return outcome
    array = project_alphabet(outcome.array, v)
    report = coverage_report(array, t, witness_cap=0, threads=threads)
    uncovered = report.total - report.covered
    ok = uncovered <= outcome.epsilon * report.total
    return BuildOutcome(array, plan_for(t, k, q, outcome.plan.r, v=v), outcome.attempts, 0, ok,
                        uncovered=uncovered, epsilon=outcome.epsilon,
                        wall_clock=outcome.wall_clock)


__all__ = [
    "BuildOutcome", "BuilderConfig", "BuilderPlan", "build_almost", "build_almost_any_v",
    "build_covering", "build_covering_any_v", "make_plan", "plan_for", "required_copies",
    "required_copies_almost",
]
