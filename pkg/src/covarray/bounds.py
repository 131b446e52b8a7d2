"""Closed forms and bounds for covering arrays.

Products of powers are evaluated as exact integers or Fractions; floating
point (via mpmath at 50 significant digits) is only used for logarithms.
Asymptotic quantities are leading terms, reported without any o(1) correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import BadEpsilonError, KLessThanTError, NotPrimePowerError
from .field import is_prime, is_prime_power

_DPS = 50
# a ratio within this distance of an integer is treated as sitting on the boundary
_BOUNDARY_EPS = mpmath.mpf(10) ** -40


def c_tv(t: int, v: int) -> Fraction:
    """Fraction of t-sets an optimal v^t-row array covers: prod (v^t - v^i)/(v^t - 1)."""
    if t < 1 or v < 2:
        raise ValueError("need t >= 1 and v >= 2")
    n = v**t
    num = math.prod(n - v**i for i in range(t))
    return Fraction(num, (n - 1) ** t)


def covmax_bounds(t: int, k: int, v: int) -> tuple[Fraction | None, Fraction]:
    """(lower, upper) bounds on cov_max(v^t; t, k, v).

    The lower bound c * C(k, t) needs the finite-field construction and is
    None unless v is a prime power.
    """
    if k < t:
        raise KLessThanTError(f"k={k} < t={t}")
    c = c_tv(t, v)
    upper = c * Fraction(k**t, math.factorial(t))
    lower = c * math.comb(k, t) if is_prime_power(v) else None
    return lower, upper


def _lg(x) -> mpmath.mpf:
    return mpmath.log(mpmath.mpf(x), 2)


def _mp(frac: Fraction) -> mpmath.mpf:
    return mpmath.mpf(frac.numerator) / frac.denominator


def _conservative_ceil(x: mpmath.mpf) -> int:
    n = int(mpmath.nint(x))
    if abs(x - n) <= _BOUNDARY_EPS:
        return n + 1
    return int(mpmath.ceil(x))


def _require(t: int, k: int, v: int) -> None:
    if t < 2:
        raise ValueError("strength must be >= 2")
    if k < t:
        raise KLessThanTError(f"k={k} < t={t}")
    if not is_prime_power(v):
        raise NotPrimePowerError(f"{v} is not a prime power")


def required_copies(t: int, k: int, v: int) -> int:
    """Copies r of A_opt needed for the Local Lemma certificate.

    r = ceil(((t-1) lg k + lg(e t)) / lg(1 / (1 - c_{t,v}))).
    """
    _require(t, k, v)
    with mpmath.workdps(_DPS):
        num = (t - 1) * _lg(k) + _lg(mpmath.e * t)
        den = _lg(_mp(1 / (1 - c_tv(t, v))))
        return _conservative_ceil(num / den)


def to_fraction(epsilon) -> Fraction:
    if isinstance(epsilon, float):
        return Fraction(repr(epsilon))
    return Fraction(epsilon)


def required_copies_almost(q: int, epsilon) -> int:
    """Smallest r >= 1 with (q^2 / (q + 1))^r >= 1 / epsilon, decided exactly.

    This is ceil(ln(1/eps) / (2 ln q - ln(q + 1))) floored at one copy.
    """
    eps = to_fraction(epsilon)
    if not 0 < eps <= 1:
        raise BadEpsilonError(f"epsilon must lie in (0, 1], got {epsilon}")
    if not is_prime_power(q):
        raise NotPrimePowerError(f"{q} is not a prime power")
    base = Fraction(q * q, q + 1)
    target = 1 / eps
    r, power = 1, base
    while power < target:
        r += 1
        power *= base
    return r


def can_upper_new(t: int, k: int, v: int) -> int:
    return required_copies(t, k, v) * v**t


def can_upper_gss(t: int, k: int, v: int) -> float:
    """Leading term (t-1) lg k / lg(v^t / (v^t - 1))."""
    if t < 2 or v < 2:
        raise ValueError("need t, v >= 2")
    if k < t:
        raise KLessThanTError(f"k={k} < t={t}")
    n = v**t
    with mpmath.workdps(_DPS):
        return float((t - 1) * _lg(k) / _lg(_mp(Fraction(n, n - 1))))


def exact_can_strength2_binary(k: int) -> int:
    """CAN(2, k, 2) = min{N : k <= C(N - 1, floor(N/2) - 1)}."""
    if k < 2:
        raise ValueError("k must be >= 2")
    n = 2
    while math.comb(n - 1, n // 2 - 1) < k:
        n += 1
    return n


def pb_max_columns(n: int, v: int) -> int:
    """Most columns an (n; 2, k, v) orthogonal array can have."""
    if n < 1 or v < 2:
        raise ValueError("need n >= 1 and v >= 2")
    return (n - 1) // (v - 1)


def next_prime_power(v: int) -> int:
    if v < 2:
        raise ValueError("v must be >= 2")
    q = v
    while not is_prime_power(q):
        q += 1
    return q


@dataclass
class BoundsTable:
    """Bounds on d(t, v) = limsup CAN(t, k, v) / lg k, all leading terms."""

    t: int
    v: int
    c_tv: Fraction
    prime_power: bool
    d_gss: float
    d_fs: float
    d_sc: float | None = None
    d_new: float | None = None
    d_new_simplified: float | None = None
    d_new_large_v: float = 0.0
    d_exact_t2: float | None = None
    notes: list[str] = field(default_factory=list)


def d_bound_table(t: int, v: int) -> BoundsTable:
    if t < 2 or v < 2:
        raise ValueError("need t, v >= 2")
    pp = is_prime_power(v)
    c = c_tv(t, v)
    n, m = v**t, v ** (t - 1)
    with mpmath.workdps(_DPS):
        simplified_den = 2 * _lg(v) - _lg(v + 1)
        table = BoundsTable(
            t=t, v=v, c_tv=c, prime_power=pp,
            d_gss=float((t - 1) / _lg(_mp(Fraction(n, n - 1)))),
            d_fs=float(v * (t - 1) / _lg(_mp(Fraction(m, m - 1)))),
            d_new_large_v=float((t - 1) * mpmath.exp(t * mpmath.mpf(v) ** mpmath.mpf("-0.474"))
                                * n / simplified_den),
        )
        if pp:
            table.d_sc = float(v * (v - 1) * (t - 1) / _lg(_mp(Fraction(m, m - v + 1))))
            table.d_new = float((t - 1) * n / _lg(_mp(1 / (1 - c))))
            table.d_new_simplified = float((t - 1) * n / simplified_den)
    if t == 2:
        table.d_exact_t2 = v / 2
    table.notes.append("all d-values are leading terms of limsup CAN/lg k")
    if pp:
        table.notes.append("d_sc evaluates the Sarkar-Colbourn logarithm in base 2")
    table.notes.append("d_new_large_v holds only for v >= v0, an unspecified absolute constant")
    return table


@dataclass
class AcanBounds:
    t: int
    v: int
    epsilon: Fraction
    new: int | None
    scdv: float
    scdv_pp: float | None


def acan_bounds(t: int, v: int, epsilon) -> AcanBounds:
    """Row bounds for almost-covering arrays leaving at most eps * C(k, t) sets uncovered."""
    eps = to_fraction(epsilon)
    if not 0 < eps <= 1:
        raise BadEpsilonError(f"epsilon must lie in (0, 1], got {epsilon}")
    pp = is_prime_power(v)
    n = v**t
    with mpmath.workdps(_DPS):
        e = _mp(eps)
        scdv = float(n * mpmath.log(mpmath.mpf(v) ** (t - 1) / e))
        scdv_pp = float(n * mpmath.log(2 * mpmath.mpf(v) ** (t - 2) / e) + v) if pp else None
    new = n * required_copies_almost(v, eps) if pp else None
    return AcanBounds(t, v, eps, new, scdv, scdv_pp)


def fraction_json(f: Fraction) -> dict:
    return {"num": f.numerator, "den": f.denominator, "decimal": float(f)}


__all__ = [
    "AcanBounds", "BoundsTable", "acan_bounds", "c_tv", "can_upper_gss", "can_upper_new",
    "covmax_bounds", "d_bound_table", "exact_can_strength2_binary", "fraction_json",
    "is_prime", "is_prime_power", "next_prime_power", "pb_max_columns", "required_copies",
    "required_copies_almost",
]
