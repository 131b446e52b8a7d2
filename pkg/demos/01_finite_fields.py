"""Arithmetic in GF(p^m) with the canonical modulus."""
import numpy as np

from covarray import make_field
from covarray.field import ff_inv, ff_mul

f9 = make_field(3, 2)
print("GF(9) modulus, constant term first:", f9.modulus)

# Elements are indexed 0..q-1; the tables are plain numpy arrays.
add, mul, inv = f9.tables
print("multiplication table of GF(9):")
print(mul)

# every nonzero element times its inverse is 1
print("a * a^-1 for a = 1..8:", mul[np.arange(1, 9), inv[1:]])

# Large fields skip the tables and invert with extended Euclid.
big = make_field(2, 13)
a = big.element(1234)
print("in GF(8192):", a.index, "* inverse =", ff_mul(a, ff_inv(a, big), big).index)
