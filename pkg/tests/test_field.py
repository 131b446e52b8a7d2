import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from covarray.errors import (
    DegreeOutOfRangeError,
    LengthMismatchError,
    MixedFieldsError,
    NonPrimeError,
    OrderTooLargeError,
    ZeroInverseError,
)
from covarray.field import (
    ff_add,
    ff_dot,
    ff_inv,
    ff_mul,
    field_of_order,
    is_prime_power,
    make_field,
    prime_power,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (2, 4), (5, 2),
                (7, 2), (2, 5), (3, 3), (2, 6)]


def has_root(poly, p):
    return any(sum(c * x**i for i, c in enumerate(poly)) % p == 0 for x in range(p))


def test_make_field_examples():
    assert make_field(2, 1).modulus == (0, 1)
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3), (5, 3)])
def test_modulus_is_smallest_rootless(p, m):
    # degrees 2 and 3: irreducible <=> no root in F_p
    spec = make_field(p, m)
    assert not has_root(spec.modulus, p)
    for high_first in itertools.product(range(p), repeat=m):
        cand = tuple(reversed(high_first)) + (1,)
        if cand == spec.modulus:
            break
        assert has_root(cand, p), f"{cand} precedes the chosen modulus but is irreducible"


def test_make_field_errors():
    with pytest.raises(NonPrimeError):
        make_field(4, 1)
    with pytest.raises(DegreeOutOfRangeError):
        make_field(2, 0)
    with pytest.raises(OrderTooLargeError):
        make_field(2, 21)


def test_make_field_deterministic():
    assert make_field(2, 4) == make_field(2, 4)
    assert make_field(3, 3).modulus == make_field(3, 3).modulus


def test_add_mul_examples():
    f4 = make_field(2, 2)
    e = f4.element
    assert ff_add(e(2), e(3), f4).index == 1
    assert ff_mul(e(2), e(2), f4).index == 3
    assert ff_mul(e(2), e(3), f4).index == 1
    f3 = make_field(3)
    assert ff_add(f3.element(2), f3.element(2), f3).index == 1


def test_inverse_examples():
    f4 = make_field(2, 2)
    assert ff_inv(f4.one, f4).index == 1
    assert ff_inv(f4.element(2), f4).index == 3
    with pytest.raises(ZeroInverseError):
        ff_inv(f4.zero, f4)


def test_dot_examples():
    f2 = make_field(2)
    one, zero = f2.one, f2.zero
    assert ff_dot([one, one], [one, zero], f2).index == 1
    assert ff_dot([zero, one], [one, zero], f2).index == 0
    f3 = make_field(3)
    assert ff_dot([f3.element(1), f3.element(2)], [f3.element(2), f3.element(2)], f3).index == 0
    with pytest.raises(LengthMismatchError):
        ff_dot([one], [one, one], f2)


def test_mixed_fields_rejected():
    with pytest.raises(MixedFieldsError):
        ff_add(make_field(2, 2).one, make_field(2, 3).one, make_field(2, 2))


@pytest.mark.parametrize("p,m", [pm for pm in SMALL_FIELDS if pm[0] ** pm[1] <= 64])
def test_field_axioms_exhaustive(p, m):
    spec = make_field(p, m)
    els = spec.elements()
    q = spec.q
    add = np.array([[ff_add(a, b, spec).index for b in els] for a in els])
    mul = np.array([[ff_mul(a, b, spec).index for b in els] for a in els])
    assert (add == add.T).all() and (mul == mul.T).all()
    for a in range(q):
        assert (add[add[a], :] == add[a][add]).all()
        assert (mul[mul[a], :] == mul[a][mul]).all()
        assert (mul[a][add] == add[mul[a]][:, mul[a]]).all()
    assert (add[0] == np.arange(q)).all() and (mul[1] == np.arange(q)).all()
    for a in els[1:]:
        assert ff_mul(a, ff_inv(a, spec), spec).index == 1


@pytest.mark.parametrize("p,m", [pm for pm in SMALL_FIELDS if pm[0] ** pm[1] <= 256])
def test_tables_match_scalar_ops(p, m):
    spec = make_field(p, m)
    add, mul, inv = spec.tables
    els = spec.elements()
    rng = np.random.default_rng(0)
    for a, b in rng.integers(spec.q, size=(200, 2)):
        assert add[a, b] == ff_add(els[a], els[b], spec).index
        assert mul[a, b] == ff_mul(els[a], els[b], spec).index
    for a in range(1, spec.q):
        assert mul[a, inv[a]] == 1


@pytest.mark.parametrize("p,m", SMALL_FIELDS)
def test_index_roundtrip(p, m):
    spec = make_field(p, m)
    for i in range(spec.q):
        el = spec.element(i)
        assert spec.from_coeffs(el.coeffs) == el
    assert spec.element(0).coeffs == (0,) * m and spec.element(1).coeffs == (1,) + (0,) * (m - 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=2**13 - 1))
def test_euclid_inverse_large_field(i):
    spec = make_field(2, 13)
    a = spec.element(i)
    assert ff_mul(a, ff_inv(a, spec), spec).index == 1


def test_prime_power_helpers():
    assert prime_power(8) == (2, 3) and prime_power(49) == (7, 2) and prime_power(13) == (13, 1)
    assert prime_power(12) is None and prime_power(1) is None
    assert [n for n in range(2, 30) if is_prime_power(n)] == [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
    assert field_of_order(9) == make_field(3, 2)
