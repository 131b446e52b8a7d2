"""Arithmetic in GF(p^m).

Elements are little-endian coefficient tuples over F_p with a cached integer
index ``sum(coeffs[i] * p**i)``.  Symbols in arrays are always that index.
The modulus is the lexicographically smallest monic irreducible polynomial of
degree m (compared from the highest-degree coefficient down), so two fields
built from the same (p, m) are identical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    DegreeOutOfRangeError,
    LengthMismatchError,
    MixedFieldsError,
    NonPrimeError,
    NotPrimePowerError,
    OrderTooLargeError,
    ZeroInverseError,
)

MAX_ORDER = 2**20
EXHAUSTIVE_INVERSE_LIMIT = 2**12
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, m) with n == p**m and p prime, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n, 1  # n itself is prime
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    return (p, m) if n == 1 else None


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


# -- polynomials over F_p, little-endian coefficient lists ------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        _trim(a)
    return a


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        quot[shift] = coef
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        _trim(a)
    return quot, a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _monic_polys(p: int, degree: int):
    """Monic polynomials of the given degree, lexicographic from the top coefficient down."""
    for high_first in itertools.product(range(p), repeat=degree):
        yield list(reversed(high_first)) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(poly) - 1
    for d in range(1, m // 2 + 1):
        for divisor in _monic_polys(p, d):
            if not _poly_mod(poly, divisor, p):
                return False
    return True


@lru_cache(maxsize=None)
def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)
    for cand in _monic_polys(p, m):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("an irreducible polynomial exists for every degree")


# -- field types -------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]
    index: int

    def __int__(self) -> int:
        return self.index


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...] = field(compare=True)

    @property
    def q(self) -> int:
        return self.p**self.m

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def element(self, index: int) -> FieldElement:
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} outside GF({self.q})")
        coeffs = []
        rest = index
        for _ in range(self.m):
            rest, c = divmod(rest, self.p)
            coeffs.append(c)
        return FieldElement(tuple(coeffs), index)

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElement:
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) != self.m:
            raise MixedFieldsError(f"expected {self.m} coefficients, got {len(coeffs)}")
        index = sum(c * self.p**i for i, c in enumerate(coeffs))
        return FieldElement(coeffs, index)

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def elements(self) -> list[FieldElement]:
        return [self.element(i) for i in range(self.q)]

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(add, mul, inv) lookup tables indexed by element index; q <= TABLE_LIMIT."""
        if self.q > TABLE_LIMIT:
            raise OrderTooLargeError(f"lookup tables limited to q <= {TABLE_LIMIT}")
        q, p = self.q, self.p
        digits = np.array([self.element(i).coeffs for i in range(q)], dtype=np.int64)
        weights = p ** np.arange(self.m, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights

        # multiplication through discrete logs of a primitive element
        mul = np.zeros((q, q), dtype=np.int64)
        exp = _exp_table(self)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        nz = np.arange(1, q)
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        inv = np.zeros(q, dtype=np.int64)
        inv[nz] = exp[(-log[nz]) % (q - 1)]
        for t in (add, mul, inv):
            t.setflags(write=False)
        return add, mul, inv


def _exp_table(spec: FieldSpec) -> np.ndarray:
    q = spec.q
    for g in range(2 if q > 2 else 1, q):
        gen = spec.element(g)
        powers = [1]
        x = spec.one
        for _ in range(q - 2):
            x = ff_mul(x, gen, spec)
            if x.index == 1:
                break
            powers.append(x.index)
        if len(powers) == q - 1:
            return np.array(powers, dtype=np.int64)
    raise AssertionError("multiplicative group of a finite field is cyclic")


def make_field(p: int, m: int = 1, max_order: int = MAX_ORDER) -> FieldSpec:
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if m < 1:
        raise DegreeOutOfRangeError(f"degree must be >= 1, got {m}")
    if p**m > max_order:
        raise OrderTooLargeError(f"{p}^{m} exceeds the maximum order {max_order}")
    return FieldSpec(p, m, _smallest_irreducible(p, m))


def field_of_order(q: int, max_order: int = MAX_ORDER) -> FieldSpec:
    pm = prime_power(q)
    if pm is None:
        raise NotPrimePowerError(f"{q} is not a prime power")
    return make_field(*pm, max_order=max_order)


def _check(spec: FieldSpec, *elems: FieldElement) -> None:
    for e in elems:
        if len(e.coeffs) != spec.m:
            raise MixedFieldsError(f"element of width {len(e.coeffs)} used in GF({spec.p}^{spec.m})")


def ff_add(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    _check(spec, a, b)
    return spec.from_coeffs([x + y for x, y in zip(a.coeffs, b.coeffs)])


def ff_neg(a: FieldElement, spec: FieldSpec) -> FieldElement:
    _check(spec, a)
    return spec.from_coeffs([-x for x in a.coeffs])


def ff_sub(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    return ff_add(a, ff_neg(b, spec), spec)


def ff_mul(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    _check(spec, a, b)
    prod = _poly_mul(a.coeffs, b.coeffs, spec.p)
    rem = _poly_mod(prod, spec.modulus, spec.p)
    rem = list(rem) + [0] * (spec.m - len(rem))
    return spec.from_coeffs(rem)


def ff_inv(a: FieldElement, spec: FieldSpec) -> FieldElement:
    _check(spec, a)
    if a.index == 0:
        raise ZeroInverseError("zero has no multiplicative inverse")
    if spec.q <= EXHAUSTIVE_INVERSE_LIMIT:
        for i in range(1, spec.q):
            b = spec.element(i)
            if ff_mul(a, b, spec).index == 1:
                return b
        raise AssertionError("nonzero element without inverse")
    return _inv_euclid(a, spec)


def _inv_euclid(a: FieldElement, spec: FieldSpec) -> FieldElement:
    p = spec.p
    r0, r1 = list(spec.modulus), _trim(list(a.coeffs))
    s0, s1 = [], [1]
    while r1:
        quot, rem = _poly_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, p), p)
    # r0 is a nonzero constant; scale s0 by its inverse
    c = pow(r0[0], p - 2, p)
    s = [x * c % p for x in s0]
    s = s + [0] * (spec.m - len(s))
    return spec.from_coeffs(s[: spec.m])


def ff_dot(u: Sequence[FieldElement], w: Sequence[FieldElement], spec: FieldSpec) -> FieldElement:
    if len(u) != len(w):
        raise LengthMismatchError(f"vectors of length {len(u)} and {len(w)}")
    acc = spec.zero
    for a, b in zip(u, w):
        acc = ff_add(acc, ff_mul(a, b, spec), spec)
    return acc
